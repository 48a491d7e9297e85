"""Point clouds, finite metric spaces and the metric primitives built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

ABS_TOL = 1e-9


@dataclass(frozen=True)
class PointCloud:
    """Finite, ordered list of points in R^m stored as an (n, m) float array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"expected a non-empty (n, m) coordinate array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def subset(self, indices) -> "PointCloud":
        return PointCloud(self.points[np.asarray(indices, dtype=np.int64)])

    @classmethod
    def from_csv(cls, path) -> "PointCloud":
        return cls(np.loadtxt(path, delimiter=",", ndmin=2))

    def to_csv(self, path) -> None:
        np.savetxt(path, self.points, delimiter=",", fmt="%.17g")


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Symmetric matrix of pairwise distances between ``n`` points."""

    dist: np.ndarray
    validated: bool = field(default=False, compare=False)

    def __post_init__(self):
        d = np.array(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {d.shape}")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self) -> int:
        return self.n

    def subspace(self, indices) -> "FiniteMetricSpace":
        idx = np.asarray(indices, dtype=np.int64)
        return FiniteMetricSpace(self.dist[np.ix_(idx, idx)], validated=self.validated)

    @classmethod
    def from_csv(cls, path) -> "FiniteMetricSpace":
        return cls(np.loadtxt(path, delimiter=",", ndmin=2))

    def to_csv(self, path) -> None:
        np.savetxt(path, self.dist, delimiter=",", fmt="%.17g")


@dataclass
class ValidationReport:
    symmetry: list = field(default_factory=list)
    diagonal: list = field(default_factory=list)
    negative: list = field(default_factory=list)
    triangle: list = field(default_factory=list)
    non_finite: list = field(default_factory=list)
    # zero off-diagonal distances are legal in a pseudometric but flag duplicates
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.symmetry or self.diagonal or self.negative
                    or self.triangle or self.non_finite)

    def violations(self) -> list[str]:
        out = []
        for name in ("non_finite", "diagonal", "symmetry", "negative", "triangle"):
            for idx in getattr(self, name):
                out.append(f"{name} at {idx}")
        return out


def distance_matrix(pc: PointCloud) -> FiniteMetricSpace:
    x = pc.points
    diff = x[:, None, :] - x[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    return FiniteMetricSpace(d, validated=True)


def validate_metric(fms, check_triangle: bool = True, tol: float = ABS_TOL,
                    max_reported: int = 100) -> tuple[ValidationReport, FiniteMetricSpace]:
    """Check the metric axioms and return the report with a re-flagged space.

    ``fms`` may be a FiniteMetricSpace or a raw square array. Triangle checks
    are O(n^3) and vectorized one pivot row at a time.
    """
    d = fms.dist if isinstance(fms, FiniteMetricSpace) else np.asarray(fms, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    rep = ValidationReport()

    def take(mask):
        idx = np.argwhere(mask)
        return [tuple(int(v) for v in row) for row in idx[:max_reported]]

    rep.non_finite = take(~np.isfinite(d))
    dd = np.where(np.isfinite(d), d, 0.0)
    rep.diagonal = [(j, j) for j in range(n) if abs(dd[j, j]) > tol][:max_reported]
    rep.symmetry = take(np.triu(np.abs(dd - dd.T) > tol, 1))
    rep.negative = take(dd < -tol)
    off = ~np.eye(n, dtype=bool)
    rep.warnings = [f"zero distance at {p}" for p in take(np.triu((np.abs(dd) <= tol) & off, 1))]
    if check_triangle:
        for k in range(n):
            # dist[j][l] <= dist[j][k] + dist[k][l]
            bad = dd > dd[:, k][:, None] + dd[k, :][None, :] + tol
            if bad.any():
                for j, l in np.argwhere(bad)[: max_reported - len(rep.triangle)]:
                    rep.triangle.append((int(j), int(k), int(l)))
                if len(rep.triangle) >= max_reported:
                    break
    validated = rep.ok and check_triangle
    return rep, FiniteMetricSpace(d, validated=validated)


def hausdorff_distance(a: PointCloud, b: PointCloud) -> float:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    diff = a.points[:, None, :] - b.points[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def epsilon_net(pc, eps: float) -> np.ndarray:
    """Greedy maximal packing of closed eps/4-balls, scanned in input order.

    A point is kept iff its distance to every kept point exceeds eps/2, so every
    rejected point lies within eps/2 of the net. Accepts a PointCloud or a
    FiniteMetricSpace. Returns the kept indices in increasing order.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    sep = eps / 2.0
    if isinstance(pc, FiniteMetricSpace):
        d = pc.dist
        kept = []
        for j in range(pc.n):
            if not kept or d[j, kept].min() > sep:
                kept.append(j)
        return np.array(kept, dtype=np.int64)
    x = pc.points
    kept = [0]
    # mindist tracks each point's distance to the current net
    mindist = np.linalg.norm(x - x[0], axis=1)
    for j in range(1, len(x)):
        if mindist[j] > sep:
            kept.append(j)
            np.minimum(mindist, np.linalg.norm(x - x[j], axis=1), out=mindist)
    return np.array(kept, dtype=np.int64)


def read_points_or_metric(path, kind: str = "points"):
    path = Path(path)
    if kind == "points":
        return PointCloud.from_csv(path)
    return FiniteMetricSpace.from_csv(path)
