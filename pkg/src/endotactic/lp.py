"""Exact rational linear programming.

A dense two-phase tableau simplex over ``Fraction`` with Bland's rule.
The problems solved in this package are tiny (a handful of rows), so
exactness matters far more than speed: an "infeasible" verdict here is a
proof, not a tolerance judgement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(T, basis, r, c):
    prow = T[r]
    p = prow[c]
    if p != 1:
        prow = [v / p for v in prow]
        T[r] = prow
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    basis[r] = c


def _run(T, basis, allowed):
    """Minimize the objective held in the last row; Bland's rule."""
    obj = T[-1]
    m = len(T) - 1
    while True:
        entering = None
        for j in allowed:
            if obj[j] < 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        leave = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(T, basis, leave, entering)


def solve(c: Sequence, A: Sequence[Sequence], b: Sequence, maximize: bool = True) -> LPResult:
    """Optimize ``c @ x`` subject to ``A @ x == b`` and ``x >= 0``.

    Every entry is converted to ``Fraction``.  Returns the status, an
    optimal vertex and its objective value (when optimal), or a feasible
    point for unbounded problems.
    """
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    m = len(A)
    n = len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    if m == 0:
        if maximize and any(v > 0 for v in c) or not maximize and any(v < 0 for v in c):
            return LPResult(UNBOUNDED, tuple(Fraction(0) for _ in range(n)), None)
        return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0))

    # phase one: artificials n .. n+m-1, rhs in the last column
    T = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [sign * v for v in A[i]] + [Fraction(0)] * m + [sign * b[i]]
        row[n + i] = Fraction(1)
        T.append(row)
    obj = [Fraction(0)] * (n + m + 1)
    for row in T:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T.append(obj)
    basis = [n + i for i in range(m)]
    _run(T, basis, range(n))
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis; rows that cannot be pivoted are redundant
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1
    T = [row[:n] + [row[-1]] for row in T[:-1]]

    sense = -1 if maximize else 1
    obj = [sense * v for v in c] + [Fraction(0)]
    for i, j in enumerate(basis):
        f = obj[j]
        if f:
            obj = [o - f * t for o, t in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, range(n))
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    x = tuple(x)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, x, None)
    value = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value)


def feasible_point(A, b) -> tuple[Fraction, ...] | None:
    """A point of ``{x >= 0 : A x = b}`` or None when the set is empty."""
    n = len(A[0]) if A else 0
    res = solve([0] * n, A, b)
    return res.x if res.feasible else None


def strict_feasible(A_eq, A_pos, A_nonneg=(), nvars: int | None = None) -> tuple[Fraction, ...] | None:
    """Find free ``u`` with ``A_eq u = 0``, ``A_pos u > 0`` and ``A_nonneg u >= 0``.

    The strict system is homogeneous, so ``> 0`` is replaced by ``>= 1``.
    Free variables are split into positive and negative parts and the
    inequalities get slack columns.
    """
    rows_all = list(A_eq) + list(A_pos) + list(A_nonneg)
    if nvars is None:
        if not rows_all:
            raise ValueError("cannot infer dimension")
        nvars = len(rows_all[0])
    n_ineq = len(A_pos) + len(A_nonneg)
    width = 2 * nvars + n_ineq
    A, b = [], []
    for row in A_eq:
        A.append(list(row) + [-v for v in row] + [0] * n_ineq)
        b.append(0)
    for k, row in enumerate(list(A_pos) + list(A_nonneg)):
        slack = [0] * n_ineq
        slack[k] = -1
        A.append(list(row) + [-v for v in row] + slack)
        b.append(1 if k < len(A_pos) else 0)
    if not A:
        return tuple(Fraction(0) for _ in range(nvars))
    res = solve([0] * width, A, b)
    if not res.feasible:
        return None
    x = res.x
    return tuple(x[i] - x[nvars + i] for i in range(nvars))
