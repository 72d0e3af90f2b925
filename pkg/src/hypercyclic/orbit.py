"""Float simulation of semigroup orbits and grid coverage statistics.

This is the empirical side only.  Exactness lives in the density
certificates; here points are numpy doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np

NORM_BOUNDS = (1e-12, 1e12)
COMMUTE_TOL = 1e-10
DENSE_THRESHOLD = 0.98
COMPLEMENT_THRESHOLD = 0.02


class NonCommuting(ValueError):
    pass


class Hint(str, Enum):
    DENSE = "LooksDense"
    HALF_SPACE = "LooksHalfSpace"
    SOMEWHERE_DENSE = "LooksSomewhereDense"
    NOWHERE_DENSE = "LooksNowhereDense"


@dataclass
class OrbitCloud:
    points: np.ndarray  # (N, dim)
    L: int
    k: int
    base_point: np.ndarray
    overflow: np.ndarray  # bool mask, norm outside NORM_BOUNDS or non-finite

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def finite_points(self) -> np.ndarray:
        return self.points[~self.overflow]


@dataclass
class CoverageReport:
    box: tuple[tuple[float, float], ...]
    grid: int
    hit_fraction: float
    hit_fraction_positive_halfspace: float
    hit_fraction_negative_halfspace: float
    best_subbox_fraction: float
    log_hit_fraction: float
    verdict_hint: Hint
    points_in_box: int
    total_points: int
    thresholds: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "box": [list(b) for b in self.box],
            "grid": self.grid,
            "hit_fraction": self.hit_fraction,
            "hit_fraction_positive_halfspace": self.hit_fraction_positive_halfspace,
            "hit_fraction_negative_halfspace": self.hit_fraction_negative_halfspace,
            "best_subbox_fraction": self.best_subbox_fraction,
            "log_hit_fraction": self.log_hit_fraction,
            "verdict_hint": self.verdict_hint.value,
            "points_in_box": self.points_in_box,
            "total_points": self.total_points,
            "thresholds": dict(self.thresholds),
        }


def _as_arrays(T) -> list[np.ndarray]:
    if hasattr(T, "shadows"):
        return T.shadows()
    return [np.asarray(M, dtype=np.float64) for M in T]


def check_commuting(mats: Sequence[np.ndarray], tol: float = COMMUTE_TOL) -> None:
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            A, B = mats[i], mats[j]
            scale = max(1.0, np.linalg.norm(A) * np.linalg.norm(B))
            if np.linalg.norm(A @ B - B @ A) > tol * scale:
                raise NonCommuting(f"generators {i} and {j} do not commute")


def enumerate_orbit(T, x=None, L: int = 10) -> OrbitCloud:
    """All M_1^e_1 ... M_k^e_k x with sum(e) <= L.

    Words are built level by level; a word whose first nonzero exponent is
    at index i comes from its predecessor (that exponent decremented) by one
    application of M_i, so every point costs a single matrix-vector product.
    """
    if L < 0:
        raise ValueError("L must be >= 0")
    mats = _as_arrays(T)
    if x is None:
        x = T.base_vector()
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    k = len(mats)
    if any(M.shape != (len(x), len(x)) for M in mats):
        raise ValueError("matrix shapes do not match the point")
    check_commuting(mats)
    # level[i]: points (as columns) whose word has first nonzero index i; index k is the empty word
    level = [np.empty((len(x), 0)) for _ in range(k)] + [x.reshape(-1, 1)]
    out = [x.reshape(1, -1)]
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(L):
            new = []
            for i in range(k):
                src = np.concatenate(level[i:], axis=1)
                new.append(mats[i] @ src)
            new.append(np.empty((len(x), 0)))
            level = new
            out.extend(p.T for p in new[:k] if p.shape[1])
        pts = np.concatenate(out, axis=0)
        norms = np.linalg.norm(pts, axis=1)
    lo, hi = NORM_BOUNDS
    bad = ~np.isfinite(norms) | (norms < lo) | (norms > hi)
    return OrbitCloud(pts, L, k, x, bad)


def orbit_size(k: int, L: int) -> int:
    return math.comb(L + k, k)


def _window_max(hits: np.ndarray, w: int) -> float:
    """Largest fraction of hit cells over all axis-aligned windows of side w."""
    c = hits.astype(np.int64)
    for ax in range(c.ndim):
        c = np.cumsum(c, axis=ax)
        pad = [(0, 0)] * c.ndim
        pad[ax] = (1, 0)
        c = np.pad(c, pad)
        c = np.take(c, range(w, c.shape[ax]), axis=ax) - np.take(c, range(0, c.shape[ax] - w), axis=ax)
    return float(c.max()) / w ** hits.ndim if c.size else 0.0


def coverage(cloud: OrbitCloud, box=None, g: int = 10,
             dense_threshold: float = DENSE_THRESHOLD,
             complement_threshold: float = COMPLEMENT_THRESHOLD,
             rescale: bool = True) -> CoverageReport:
    """Grid hit fractions of the orbit inside ``box`` (default [-1,1]^n).

    With ``rescale`` the cloud is divided by the norm of its base point first.
    """
    if g < 2:
        raise ValueError("grid resolution must be >= 2")
    n = cloud.dim
    if box is None:
        box = [(-1.0, 1.0)] * n
    box = tuple((float(a), float(b)) for a, b in box)
    if len(box) != n or any(not b > a for a, b in box):
        raise ValueError("box must be nondegenerate with one interval per axis")
    pts = cloud.finite_points()
    if rescale and len(pts):
        nx = np.linalg.norm(cloud.base_point)
        if nx > 0:
            pts = pts / nx
    lo = np.array([a for a, _ in box])
    hi = np.array([b for _, b in box])
    hits = np.zeros((g,) * n, dtype=bool)
    inside = np.all((pts >= lo) & (pts < hi), axis=1) if len(pts) else np.zeros(0, dtype=bool)
    if inside.any():
        idx = np.floor((pts[inside] - lo) / (hi - lo) * g).astype(np.int64)
        idx = np.clip(idx, 0, g - 1)
        hits[tuple(idx.T)] = True
    frac = float(hits.mean())

    # half spaces split by the sign of the last coordinate's cell centre
    centers = lo[-1] + (np.arange(g) + 0.5) * (hi[-1] - lo[-1]) / g
    last_hits = np.moveaxis(hits, -1, 0)
    pos_cells, neg_cells = centers > 0, centers < 0
    pos = float(last_hits[pos_cells].mean()) if pos_cells.any() else 0.0
    neg = float(last_hits[neg_cells].mean()) if neg_cells.any() else 0.0
    best = _window_max(hits, max(1, g // 2))

    if frac >= dense_threshold:
        hint = Hint.DENSE
    elif max(pos, neg) >= dense_threshold and min(pos, neg) <= complement_threshold:
        hint = Hint.HALF_SPACE
    elif best >= dense_threshold:
        hint = Hint.SOMEWHERE_DENSE
    else:
        hint = Hint.NOWHERE_DENSE
    return CoverageReport(box, g, frac, pos, neg, best, log_coverage(cloud, g), hint,
                          int(inside.sum()), len(cloud),
                          {"dense": dense_threshold, "complement": complement_threshold})


def log_rescale(pts: np.ndarray) -> np.ndarray:
    """v -> v/|v| * (1 + frac(log|v|)): folds all scales into the shell 1 <= |v| < 2."""
    r = np.linalg.norm(pts, axis=1)
    keep = r > 0
    pts, r = pts[keep], r[keep]
    return pts / r[:, None] * (1 + np.mod(np.log(r), 1.0))[:, None]


def log_coverage(cloud: OrbitCloud, g: int = 10) -> float:
    """Fraction of grid cells of [-2,2]^n with centre in the shell that the folded cloud hits."""
    n = cloud.dim
    pts = log_rescale(cloud.finite_points())
    axis = -2 + (np.arange(g) + 0.5) * 4 / g
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    radius = np.sqrt(sum(c * c for c in grids))
    shell = (radius >= 1) & (radius < 2)
    if not shell.any():
        return 0.0
    hits = np.zeros((g,) * n, dtype=bool)
    if len(pts):
        idx = np.clip(np.floor((pts + 2) / 4 * g).astype(np.int64), 0, g - 1)
        hits[tuple(idx.T)] = True
    return float(hits[shell].mean())


# -- base points -----------------------------------------------------------------------

def check_base_point(T, x=None) -> tuple[bool, str]:
    """Does the point avoid the class-specific subspaces with non-dense orbits?"""
    x = list(T.base_point if x is None else x)
    cls = getattr(T, "class_tag", "custom")
    if cls in ("DiagonalR",):
        for i, v in enumerate(x):
            if v == 0:
                return False, f"coordinate {i + 1} zero"
        return True, "no zero coordinate"
    if cls in ("DiagonalC", "RotationScalingR", "OddR", "TriangularC"):
        m = len(x) // 2
        pairs = m if cls != "TriangularC" else m - 2
        label = "coordinate" if cls in ("DiagonalC", "TriangularC") else "block"
        for j in range(pairs):
            if x[2 * j] == 0 and x[2 * j + 1] == 0:
                return False, f"{label} {j + 1} zero"
        if cls == "OddR" and x[-1] == 0:
            return False, f"coordinate {len(x)} zero"
        if cls == "TriangularC" and x[-2] == 0 and x[-1] == 0:
            return False, "last coordinate zero"
        return True, "no zero coordinate block"
    if cls in ("ToeplitzR", "TriangularR"):
        if x[-1] == 0:
            return False, "last coordinate zero"
        return True, "last coordinate nonzero"
    if cls == "ToeplitzC":
        if x[-2] == 0 and x[-1] == 0:
            return False, "last coordinate zero"
        return True, "last coordinate nonzero"
    return True, "no class-specific rule"


def dump_points(cloud: OrbitCloud, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# n={cloud.dim} k={cloud.k} L={cloud.L}\n")
        np.savetxt(fh, cloud.points, fmt="%.17g")
