"""Kronecker approximation on the torus and integer relation search.

The existence statements behind these are nonconstructive; what lives here
is the effective layer: a brute-force scan, exact LLL reduction, and the
usual relation-detection and embedding lattices.  Relation search is a
heuristic: "not found" never proves independence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import determinant, matmul

DEFAULT_DELTA = Fraction(99, 100)
BRUTE_FORCE_LIMIT = 10**6


class DependentBasis(ValueError):
    pass


class NotFound(LookupError):
    def __init__(self, bound: int, message: str = ""):
        super().__init__(message or f"no multiplier found within budget {bound}")
        self.bound = bound


@dataclass(frozen=True)
class Lattice:
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> Lattice:
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows))


@dataclass(frozen=True)
class RelationSearchResult:
    found: bool
    relation: tuple[int, ...] | None
    height_bound: int
    residual: float | None = None


@dataclass(frozen=True)
class KroneckerResult:
    m: int
    distances: tuple[float, ...]
    strategy: str  # "brute_force" (minimal m) or "lll" (some valid m)

    @property
    def error(self) -> float:
        return max(self.distances)


def _gram_schmidt(B):
    n = len(B)
    Bs = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = []
    for i in range(n):
        v = list(B[i])
        for j in range(i):
            if norms[j] == 0:
                continue
            mu[i][j] = sum((a * b for a, b in zip(B[i], Bs[j])), Fraction(0)) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, Bs[j])]
        Bs.append(v)
        norms.append(sum((x * x for x in v), Fraction(0)))
    return Bs, mu, norms


def lll_reduce(basis, delta=DEFAULT_DELTA) -> tuple[list[list[Fraction]], list[list[int]]]:
    """LLL-reduce the rows of ``basis`` in exact rational arithmetic.

    Returns ``(reduced, U)`` with ``U`` unimodular and ``U @ basis == reduced``.
    """
    rows = basis.basis if isinstance(basis, Lattice) else basis
    B = [[Fraction(x) for x in r] for r in rows]
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    n = len(B)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return B, U
    Bs, mu, norms = _gram_schmidt(B)
    if any(x == 0 for x in norms):
        raise DependentBasis("input basis is linearly dependent")
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                B[k] = [x - q * y for x, y in zip(B[k], B[j])]
                U[k] = [x - q * y for x, y in zip(U[k], U[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            Bs, mu, norms = _gram_schmidt(B)
            k = max(k - 1, 1)
    return B, U


def is_lll_reduced(B, delta=DEFAULT_DELTA) -> bool:
    _, mu, norms = _gram_schmidt([[Fraction(x) for x in r] for r in B])
    n = len(B)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    return all(norms[k] >= (Fraction(delta) - mu[k][k - 1] ** 2) * norms[k - 1] for k in range(1, n))


def is_unimodular(U) -> bool:
    return all(Fraction(x).denominator == 1 for r in U for x in r) and abs(determinant(U)) == 1


def same_lattice(before, after, U) -> bool:
    return is_unimodular(U) and matmul(U, before) == [[Fraction(x) for x in r] for r in after]


# -- Kronecker ---------------------------------------------------------------

def _torus_distance(x: np.ndarray) -> np.ndarray:
    return np.abs(x - np.round(x))


def _scan(r: np.ndarray, y: np.ndarray, eps: float, limit: int, chunk: int = 1 << 16) -> int | None:
    for start in range(1, limit + 1, chunk):
        m = np.arange(start, min(start + chunk, limit + 1), dtype=np.float64)
        d = _torus_distance(np.outer(m, r) - y).max(axis=1)
        hit = np.flatnonzero(d < eps)
        if hit.size:
            return int(m[hit[0]])
    return None


def _lll_multiplier(r: np.ndarray, y: np.ndarray, eps: float, limit: int) -> int | None:
    """Inhomogeneous simultaneous approximation via an embedding lattice."""
    n = len(r)
    for scale_exp in range(4, 13):
        S = 10**scale_exp
        if S * eps < 4:
            continue
        w = max(1, int(S * eps / max(limit, 1) * 2))
        rows = [[w] + [round(S * float(ri)) for ri in r] + [0]]
        for i in range(n):
            rows.append([0] * (i + 1) + [S] + [0] * (n - i))
        K = max(1, int(S * eps))
        rows.append([0] + [-round(S * float(yi)) for yi in y] + [K])
        try:
            red, _ = lll_reduce(rows)
        except DependentBasis:
            return None
        best = None
        for v in red:
            if abs(v[-1]) != K:
                continue
            sgn = 1 if v[-1] == K else -1
            m = int(sgn * v[0] / w)
            if m < 1:
                continue
            d = _torus_distance(m * r - y).max()
            if d < eps and (best is None or m < best):
                best = m
        if best is not None:
            return best
    return None


def kronecker_approximate(r: Sequence[float], y: Sequence[float], eps: float,
                          brute_force_limit: int = BRUTE_FORCE_LIMIT,
                          lll_limit: int = 10**12) -> KroneckerResult:
    """Find m >= 1 with every m*r_i - y_i within ``eps`` of an integer."""
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    r = np.asarray([float(x) for x in r], dtype=np.float64)
    y = np.asarray([float(x) for x in y], dtype=np.float64)
    if r.shape != y.shape or r.ndim != 1 or r.size == 0:
        raise ValueError("r and y must be nonempty vectors of equal length")
    m = _scan(r, y, eps, brute_force_limit)
    strategy = "brute_force"
    if m is None:
        m = _lll_multiplier(r, y, eps, lll_limit)
        strategy = "lll"
    if m is None:
        raise NotFound(brute_force_limit)
    dist = _torus_distance(m * r - y)
    if dist.max() >= eps:  # float drift at huge m
        raise NotFound(brute_force_limit, "candidate multiplier failed verification")
    return KroneckerResult(m, tuple(float(d) for d in dist), strategy)


# -- integer relations ---------------------------------------------------------

def find_integer_relation(xs: Sequence[float], H: int = 10**3, tol: float = 1e-10) -> RelationSearchResult:
    """Look for small integers b with |sum b_i x_i| < tol."""
    xs = [float(x) for x in xs]
    if len(xs) < 2:
        raise ValueError("need at least two numbers")
    k = len(xs)
    S = 1.0 / tol
    rows = []
    for i, x in enumerate(xs):
        rows.append([int(i == j) for j in range(k)] + [round(S * x)])
    try:
        red, _ = lll_reduce(rows)
    except DependentBasis:
        red = rows
    best = None
    for v in red:
        b = [int(c) for c in v[:k]]
        if not any(b) or max(abs(c) for c in b) > H:
            continue
        res = abs(math.fsum(c * x for c, x in zip(b, xs)))
        if res < tol and (best is None or sum(c * c for c in b) < sum(c * c for c in best[0])):
            best = (b, res)
    if best is None:
        return RelationSearchResult(False, None, H)
    b, res = best
    lead = next(c for c in b if c)
    if lead < 0:
        b = [-c for c in b]
    return RelationSearchResult(True, tuple(b), H, res)
