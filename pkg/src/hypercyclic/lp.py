"""Exact feasibility LP: find ``x >= 0`` with ``A x = b`` over the rationals.

Phase-one simplex on a dense Fraction tableau with Bland's rule, which
cannot cycle.  Problem sizes here are tiny (tens of variables), so no
attempt is made at sparsity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def find_nonnegative_solution(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Return a vertex ``x >= 0`` with ``A x == b`` exactly, or ``None``."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for row, bi in zip(A, b):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)
    if m == 0:
        return [Fraction(0)] * n

    # tableau columns: n structural + m artificial; basis starts artificial
    T = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs for min sum(artificial)
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= T[i][j]
    for i in range(m):
        cost[n + i] += 1

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded direction; cannot happen in phase one
            break
        _pivot(T, cost, leave, enter)
        basis[leave] = enter

    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return x


def _pivot(T, cost, r, c):
    p = T[r][c]
    T[r] = [x / p for x in T[r]]
    pr = T[r]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [x - f * y for x, y in zip(row, pr)]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [x - f * y for x, y in zip(cost, pr)]
