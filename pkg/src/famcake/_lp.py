"""Exact rational linear programming: two-phase dense simplex with Bland's rule.

Sizes here are tiny (tens of variables), so a dense Fraction tableau is fast
enough and, unlike a float solver, can certify infeasibility.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = T[r]
    p = row[c]
    if p != 1:
        T[r] = row = [v / p for v in row]
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[c]
        if f:
            for j in nz:
                other[j] -= f * row[j]
    basis[r] = c


def _run(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Minimize the objective held in the last row; False when unbounded.

    Only columns ``< allowed`` may enter. The last column is the right-hand side.
    """
    m = len(T) - 1
    obj = T[-1]
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)
        obj = T[-1]


class Unbounded(Exception):
    pass


def solve(
    nvars: int,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    objective: Sequence | None = None,
) -> list[Fraction] | None:
    """Minimize ``objective . x`` over ``x >= 0``, ``A_ub x <= b_ub``, ``A_eq x == b_eq``.

    Returns an optimal vertex, or None if the system is infeasible. Raises
    ``Unbounded`` if the objective is unbounded below.
    """
    rows = [[Fraction(v) for v in r] for r in A_ub] + [[Fraction(v) for v in r] for r in A_eq]
    rhs = [Fraction(v) for v in b_ub] + [Fraction(v) for v in b_eq]
    n_ub = len(A_ub)
    m = len(rows)
    # columns: x (nvars) | slacks (n_ub) | artificials (m) | rhs
    ncols = nvars + n_ub + m
    T = []
    for i in range(m):
        row = rows[i] + [ZERO] * (n_ub + m) + [rhs[i]]
        if i < n_ub:
            row[nvars + i] = Fraction(1)
        if row[-1] < 0:
            row = [-v for v in row]
        row[nvars + n_ub + i] = Fraction(1)
        T.append(row)
    basis = [nvars + n_ub + i for i in range(m)]
    # phase 1: minimize the sum of artificials
    obj = [ZERO] * (ncols + 1)
    for row in T:
        for j in range(nvars + n_ub):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T.append(obj)
    _run(T, basis, nvars + n_ub)
    if T[-1][-1] != 0:
        return None
    # drive remaining (zero-valued) artificials out of the basis
    for i in range(m - 1, -1, -1):
        if basis[i] >= nvars + n_ub:
            col = next((j for j in range(nvars + n_ub) if T[i][j] != 0), None)
            if col is None:
                del T[i], basis[i]
            else:
                _pivot(T, basis, i, col)
    T.pop()
    if objective is not None:
        cost = [Fraction(v) for v in objective] + [ZERO] * (n_ub + m)
        obj = cost + [ZERO]
        for i, b in enumerate(basis):
            if cost[b]:
                f = cost[b]
                obj = [o - f * t for o, t in zip(obj, T[i])]
        T.append(obj)
        if not _run(T, basis, nvars + n_ub):
            raise Unbounded("objective is unbounded below")
        T.pop()
    x = [ZERO] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            x[b] = T[i][-1]
    _check(x, A_ub, b_ub, A_eq, b_eq)
    return x


def _check(x, A_ub, b_ub, A_eq, b_eq) -> None:
    assert all(v >= 0 for v in x), "negative coordinate"
    for row, b in zip(A_ub, b_ub):
        assert sum(Fraction(a) * v for a, v in zip(row, x)) <= b, "inequality violated"
    for row, b in zip(A_eq, b_eq):
        assert sum(Fraction(a) * v for a, v in zip(row, x)) == b, "equality violated"


def feasible_point(nvars, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> list[Fraction] | None:
    return solve(nvars, A_ub, b_ub, A_eq, b_eq)
