"""Small exact linear-algebra helpers over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fr = [Fraction(v) for v in vec]
    den = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fr), 1)
    ints = [int(f * den) for f in fr]
    g = reduce(gcd, (abs(v) for v in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def canonical_line(vec: Sequence) -> tuple[int, ...]:
    """Primitive integer vector with first nonzero entry positive (a line representative)."""
    p = primitive(vec)
    for v in p:
        if v:
            return p if v > 0 else tuple(-w for w in p)
    return p


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    M = [[Fraction(v) for v in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [v / p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def row_space_basis(rows: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Integer basis of the row space, one primitive vector per echelon row."""
    R, _ = rref(rows)
    return [primitive(row) for row in R]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Integer basis of ``{v : row . v = 0 for every row}``."""
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def in_span(rows: Sequence[Sequence], vec: Sequence) -> bool:
    """Exact membership of ``vec`` in the span of ``rows``."""
    if not any(Fraction(v) for v in vec):
        return True
    if not rows:
        return False
    return rank(list(rows) + [list(vec)]) == rank(rows)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
