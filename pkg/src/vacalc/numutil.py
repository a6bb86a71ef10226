"""Small exact combinatorial helpers used across modules."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


def gbinom(m: int, j: int) -> int:
    """Generalized binomial coefficient C(m, j) for any integer m, j >= 0.

    For m < 0 this is (-1)^j * C(j - m - 1, j); always an integer.
    """
    if j < 0:
        return 0
    if m >= 0:
        return comb(m, j) if j <= m else 0
    return (-1) ** j * comb(j - m - 1, j)


def falling(m: int, j: int) -> int:
    """Falling factorial m (m-1) ... (m-j+1); empty product for j == 0."""
    out = 1
    for s in range(j):
        out *= m - s
    return out


def inv_factorial(j: int) -> Fraction:
    return Fraction(1, factorial(j))
