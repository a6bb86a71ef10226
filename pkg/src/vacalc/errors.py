"""Exception taxonomy shared by all vacalc modules.

Every domain failure derives from VacalcError so callers (and the CLI,
which maps them to exit code 1) can catch one base class.  Usage errors
of the CLI itself are argparse's business and exit with code 2.
"""


class VacalcError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(VacalcError):
    """Malformed expression text (tokenizer or grammar failure)."""


class IllegalPole(VacalcError):
    """Negative power applied to anything but a difference z_i - z_j."""


class BadIndex(VacalcError):
    """Variable index outside 1..arity."""


class ArityMismatch(VacalcError):
    """Binary operation on functions of different arities."""


class BadPermutation(VacalcError):
    """Sequence passed as a permutation is not a bijection of 1..n."""


class CoincidentPoints(VacalcError):
    """Evaluation requested at a point with two equal coordinates."""


class NotHomogeneous(VacalcError):
    """Operation requires a homogeneous function; split with grade_components."""


class BadSplit(VacalcError):
    """Insertion split position out of range."""


class BadPartition(VacalcError):
    """Block sizes or multidegree do not partition the input."""


class BadSubset(VacalcError):
    """Variable subset empty or outside 1..n."""


class SchemaError(VacalcError):
    """Presentation document violates the documented JSON schema."""


class WeightMismatch(VacalcError):
    """A relation's right-hand side is not homogeneous of the forced weight."""


class UnboundedOPE(VacalcError):
    """A generator pair declares singular products beyond the supported bound.

    Finite JSON documents cannot actually trigger this; the guard exists so
    a future rule-based relation source cannot silently break termination.
    """


class NonTerminating(VacalcError):
    """Rewriting exceeded the configured step bound."""


class NoLocalMatch(VacalcError):
    """Mode series does not come from a local function within the pole bound."""


class TruncationTooSmall(VacalcError):
    """Requested check needs states beyond the truncation weight."""
