"""Exact linear algebra over the rationals and the integers.

Matrices are plain lists of rows.  Entries may be ``int`` or ``Fraction``;
results are always ``Fraction`` (rational routines) or ``int`` (lattice
routines).  Nothing in here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(M: Sequence[Sequence]) -> Matrix:
    rows = [[Fraction(x) for x in row] for row in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix is not rectangular")
    return rows


def transpose(M: Sequence[Sequence]) -> list[list]:
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def _integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    # Scaling a row by a nonzero rational does not change rank.
    out = []
    for row in to_fractions(M):
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss(M: Sequence[Sequence]) -> tuple[int, list[list[int]], int]:
    """Fraction-free elimination.

    Returns ``(rank, echelon_rows, sign)`` where the integer rows are the
    Bareiss echelon form of the row-denominator-cleared input and ``sign``
    tracks row swaps.
    """
    A = _integer_rows(M)
    if not A:
        return 0, [], 1
    nrows, ncols = len(A), len(A[0])
    prev = 1
    rank = 0
    sign = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((r for r in range(rank, nrows) if A[r][col] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            A[rank], A[pivot] = A[pivot], A[rank]
            sign = -sign
        p = A[rank][col]
        for r in range(rank + 1, nrows):
            a = A[r][col]
            row = A[r]
            prow = A[rank]
            for c in range(col, ncols):
                # exact division is the Bareiss invariant
                row[c] = (p * row[c] - a * prow[c]) // prev
        prev = p
        rank += 1
    return rank, A, sign


def rational_rank(M: Sequence[Sequence]) -> int:
    """Exact rank over Q."""
    return bareiss(M)[0]


def determinant(M: Sequence[Sequence]) -> Fraction:
    rows = to_fractions(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    for row in rows:
        scale *= lcm(*(x.denominator for x in row))
    rank, A, sign = bareiss(rows)
    if rank < n:
        return Fraction(0)
    return Fraction(sign * A[n - 1][n - 1]) / scale


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = to_fractions(M)
    if not A:
        return [], []
    nrows, ncols = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of the right kernel {x : M x = 0}, one vector per entry."""
    if not M:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(M)
    ncols = len(R[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of M x = b, or None when inconsistent."""
    A = to_fractions(M)
    aug = [row + [Fraction(bi)] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    ncols = len(A[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[-1]
    return x


def inverse(M: Sequence[Sequence]) -> Matrix:
    A = to_fractions(M)
    n = len(A)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def primitive_integer_vector(v: Sequence, keep_sign: bool = False) -> list[int]:
    """Clear denominators, divide by the content, make the first nonzero entry positive.

    With ``keep_sign`` the direction of ``v`` is preserved instead.
    """
    fr = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = gcd(*ints)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    if keep_sign:
        return ints
    lead = next(x for x in ints if x != 0)
    return [-x for x in ints] if lead < 0 else ints


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  The nonzero
    rows of ``H`` come first, have positive pivots strictly moving right, and
    entries above each pivot are reduced into ``[0, pivot)``.
    """
    H = [[int(x) for x in row] for row in M]
    if any(Fraction(x).denominator != 1 for row in M for x in row):
        raise ValueError("hermite_normal_form needs an integer matrix")
    m = len(H)
    ncols = len(H[0]) if H else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def combine(i, j, a, b, c, d):
        # rows (i, j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
        for X in (H, U):
            ri, rj = X[i], X[j]
            X[i] = [a * x + b * y for x, y in zip(ri, rj)]
            X[j] = [c * x + d * y for x, y in zip(ri, rj)]

    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = _xgcd(a, b)
            combine(r, i, x, y, -b // g, a // g)
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
