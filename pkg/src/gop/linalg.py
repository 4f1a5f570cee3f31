"""Exact Gaussian elimination over Q."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column, in column order.

    The vector for free column f has 1 at f and 0 at every other free column,
    so the first vector is the one with the most trailing free variables at 0.
    """
    if not rows:
        return [[Fraction(int(i == f)) for i in range(ncols)] for f in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1]) if rows else 0


def integer_vector(v: Sequence[Fraction], sign: str = "first") -> list[int]:
    """Clear denominators, remove content and fix the sign.

    sign='first' makes the first nonzero entry positive, sign='last' the last.
    """
    d = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * d) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    nz = [x for x in ints if x]
    pick = nz[0] if sign == "first" else nz[-1]
    if pick < 0:
        ints = [-x for x in ints]
    return ints
