"""Brute-force oscillator realizations used to certify the rewriting engine.

Everything here is a separate code path from vacore: states are explicit
multisets of positive oscillator parts (plus an integer lattice label), and
operators act by direct combinatorics.  Agreement between this module and
the normal-form engine is therefore evidence, not circularity.

Conventions, fixed once and used consistently:

* A state is ``(parts, label)`` with ``parts`` a descending tuple of
  positive integers; a vector is a dict mapping states to Fractions.
* ``alpha_act(n, v)`` is the oscillator mode: for n < 0 it adds the part
  -n (coefficient 1), for n > 0 it removes one part n with coefficient
  norm * n per occurrence, and the zero mode reads norm * label.  With
  norm=1 this gives [alpha(m), alpha(n)] = m delta_{m+n,0}.
* ``virasoro_act(n, v)`` uses field modes: n corresponds to the classical
  operator indexed n-1, so the weight operator is virasoro_act(1) and the
  translation operator is virasoro_act(0).  It is the normal-ordered
  quadratic expression in the norm-1 oscillator, hence central charge 1.
* ``lattice_vertex_act`` realizes the exponential vertex operators of the
  rank-1 even lattice (norm 2 by default) with the trivial two-cocycle,
  truncated to a weight cutoff.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import TruncationTooSmall

State = Tuple[Tuple[int, ...], int]
FockVec = Dict[State, Fraction]

VACUUM: State = ((), 0)


def vec(state: State = VACUUM, coeff=1) -> FockVec:
    c = Fraction(coeff)
    return {state: c} if c else {}


def v_add(a: FockVec, b: FockVec) -> FockVec:
    out = dict(a)
    for s, c in b.items():
        t = out.get(s, Fraction(0)) + c
        if t:
            out[s] = t
        else:
            out.pop(s, None)
    return out


def v_scale(a: FockVec, c) -> FockVec:
    c = Fraction(c)
    if c == 0:
        return {}
    return {s: v * c for s, v in a.items()}


def v_eq(a: FockVec, b: FockVec) -> bool:
    return v_add(a, v_scale(b, -1)) == {}


def state_weight(state: State, norm: int = 1) -> Fraction:
    parts, label = state
    return Fraction(sum(parts)) + Fraction(norm * label * label, 2)


def _acc(out: FockVec, state: State, coeff: Fraction):
    if coeff == 0:
        return
    t = out.get(state, Fraction(0)) + coeff
    if t:
        out[state] = t
    else:
        del out[state]


def _add_part(parts: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    return tuple(sorted(parts + (k,), reverse=True))


def _remove_one(parts: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    lst = list(parts)
    lst.remove(k)
    return tuple(lst)


def alpha_act(n: int, v: FockVec, norm: int = 1) -> FockVec:
    """Oscillator mode action; see the module docstring for the convention."""
    out: FockVec = {}
    for (parts, label), coeff in v.items():
        if n == 0:
            _acc(out, (parts, label), coeff * norm * label)
        elif n < 0:
            _acc(out, (_add_part(parts, -n), label), coeff)
        else:
            cnt = parts.count(n)
            if cnt:
                _acc(out, (_remove_one(parts, n), label), coeff * norm * n * cnt)
    return out


def virasoro_act(n: int, v: FockVec) -> FockVec:
    """Quadratic (normal-ordered) realization at central charge 1; the
    argument is the field mode, classical index n - 1."""
    m = n - 1
    out: FockVec = {}
    for (parts, label), coeff in v.items():
        counts: Dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        if m == 0:
            _acc(out, (parts, label), coeff * sum(parts))
            continue
        # two annihilators (m >= 2)
        if m >= 2:
            for j in range(1, m // 2 + 1):
                k = m - j
                if counts.get(k, 0) == 0:
                    continue
                half = Fraction(1, 2) if j == k else Fraction(1)
                rest = _remove_one(parts, k)
                cnt_j = rest.count(j)
                if cnt_j == 0:
                    continue
                c = coeff * half * (k * counts[k]) * (j * cnt_j)
                _acc(out, (_remove_one(rest, j), label), c)
        # two creators (m <= -2)
        if m <= -2:
            j = m + 1
            while j <= m // 2:
                k = m - j
                half = Fraction(1, 2) if j == k else Fraction(1)
                _acc(out, (_add_part(_add_part(parts, -j), -k), label), coeff * half)
                j += 1
        # one of each: annihilate k > max(0, m), create k - m
        for k in sorted(counts):
            if k <= 0 or k <= m:
                continue
            c = coeff * (k * counts[k])
            _acc(out, (_add_part(_remove_one(parts, k), k - m), label), c)
    return out


def lattice_vertex_act(
    sign: int, n: int, v: FockVec, cutoff: int, norm: int = 2
) -> FockVec:
    """Mode n of the exponential vertex operator for the lattice vector
    sign * lambda (sign in {+1, -1}), truncated to states of weight <= cutoff.

    The cocycle is trivial, legitimate for an even lattice; other sign
    conventions give isomorphic algebras.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if cutoff < 0:
        raise TruncationTooSmall("cutoff must be >= 0")
    for state in v:
        if state_weight(state, norm) > cutoff:
            raise TruncationTooSmall(
                f"input state {state} already beyond cutoff {cutoff}"
            )
    out: FockVec = {}
    for (parts, label), coeff in v.items():
        base_power = sign * label * norm
        new_label = label + sign
        counts: Dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        # enumerate removal multisets D
        removables = sorted(counts)

        def removals(idx, rem_parts, rem_coeff, rem_power):
            if idx == len(removables):
                target = -n - 1 - base_power - rem_power
                if target < 0:
                    return
                base_state_weight = (
                    sum(rem_parts) + Fraction(norm * new_label * new_label, 2)
                )
                if base_state_weight + target > cutoff:
                    return
                for add_parts, add_coeff in _creation_terms(target):
                    state = (
                        tuple(sorted(rem_parts + list(add_parts), reverse=True)),
                        new_label,
                    )
                    _acc(out, state, coeff * rem_coeff * add_coeff)
                return
            k = removables[idx]
            ck = counts[k]
            from math import comb

            for d in range(0, ck + 1):
                removals(
                    idx + 1,
                    [p for p in rem_parts if p != k] + [k] * (ck - d)
                    if d
                    else rem_parts,
                    rem_coeff * comb(ck, d) * Fraction(-sign * norm) ** d,
                    rem_power + k * d,
                )

        def _creation_terms(total: int):
            """Yield (parts list, coeff) over partitions of total, with the
            exponential-series coefficient prod (sign/k)^a_k / a_k!."""
            results: List[Tuple[List[int], Fraction]] = []

            def rec(remaining, max_part, acc_parts):
                if remaining == 0:
                    c = Fraction(1)
                    for p in set(acc_parts):
                        a = acc_parts.count(p)
                        fact = 1
                        for t in range(1, a + 1):
                            fact *= t
                        c *= Fraction(sign, p) ** a / fact
                    results.append((list(acc_parts), c))
                    return
                for p in range(min(remaining, max_part), 0, -1):
                    acc_parts.append(p)
                    rec(remaining - p, p, acc_parts)
                    acc_parts.pop()

            rec(total, total if total else 1, [])
            return results

        removals(0, list(parts), Fraction(1), 0)
    return out


# ---------------------------------------------------------------------------
# Dimension series
# ---------------------------------------------------------------------------

def series_dims(kind, w_max: int) -> List[int]:
    """Coefficient lists of the certification series.

    kind is "partitions", "partitions_min_part_2", or ("theta_over_eta", norm)
    with norm a positive even integer.
    """
    if w_max < 0:
        raise ValueError("w_max must be >= 0")
    if kind == "partitions":
        return _partition_counts(w_max, min_part=1)
    if kind == "partitions_min_part_2":
        return _partition_counts(w_max, min_part=2)
    if isinstance(kind, tuple) and kind[0] == "theta_over_eta":
        norm = kind[1]
        if norm <= 0 or norm % 2:
            raise ValueError("norm must be a positive even integer")
        eta_inv = _partition_counts(w_max, min_part=1)
        theta = [0] * (w_max + 1)
        m = 0
        while norm * m * m // 2 <= w_max:
            theta[norm * m * m // 2] += 1 if m == 0 else 2
            m += 1
        return [
            sum(theta[j] * eta_inv[w - j] for j in range(w + 1))
            for w in range(w_max + 1)
        ]
    raise ValueError(f"unknown series kind {kind!r}")


def _partition_counts(w_max: int, min_part: int) -> List[int]:
    dp = [0] * (w_max + 1)
    dp[0] = 1
    for part in range(min_part, w_max + 1):
        for w in range(part, w_max + 1):
            dp[w] += dp[w - part]
    return dp


def lattice_graded_dims(w_max: int, norm: int = 2) -> List[int]:
    """Dimensions of the lattice realization by direct state enumeration."""
    dims = []
    for w in range(w_max + 1):
        count = 0
        m = 0
        while norm * m * m // 2 <= w:
            rest = w - norm * m * m // 2
            labels = 1 if m == 0 else 2
            count += labels * len(_partitions_of(rest))
            m += 1
        dims.append(count)
    return dims


def _partitions_of(total: int) -> List[Tuple[int, ...]]:
    out: List[Tuple[int, ...]] = []

    def rec(remaining, max_part, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(min(remaining, max_part), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(total, total if total else 1, [])
    return out


def vec_to_obj(v: FockVec):
    """JSON-friendly dump: [{parts, label, coeff}] in deterministic order."""
    return [
        {"parts": list(parts), "label": label, "coeff": str(c)}
        for (parts, label), c in sorted(v.items())
    ]


def heisenberg_word(modes, norm: int = 1) -> FockVec:
    """Apply a chain of oscillator modes to the vacuum (rightmost first)."""
    v = vec()
    for n in reversed(list(modes)):
        v = alpha_act(n, v, norm)
        if not v:
            break
    return v


def virasoro_word(modes) -> FockVec:
    """Apply a chain of quadratic-realization field modes to the vacuum."""
    v = vec()
    for n in reversed(list(modes)):
        v = virasoro_act(n, v)
        if not v:
            break
    return v
