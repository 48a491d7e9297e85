"""Seeded samplers for the point families studied here.

Every sampler is a deterministic function of its arguments. Randomness comes
from splitmix64 streams derived from the seed with a per-family label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

import numpy as np

from .metric import FiniteMetricSpace, PointCloud
from .rng import SplitMix64

FAMILIES = ("sierpinski", "cantor_interval", "arcs", "uniform_cube", "segment",
            "lattice_subset", "bipartite", "bipartite_union")

SIERPINSKI_VERTICES = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])
CHAOS_BURN_IN = 100
MAX_BIPARTITE_LEVEL = 12
MAX_UNION_POINTS = 4096


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int = 1
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def with_n(self, n: int) -> "GeneratorSpec":
        return GeneratorSpec(self.family, int(n), self.seed, dict(self.params))

    def to_dict(self) -> dict:
        return asdict(self)


def gen_sierpinski(n: int, seed: int = 0) -> PointCloud:
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = SplitMix64.stream(seed, "sierpinski")
    choice = rng.integers(3, n + CHAOS_BURN_IN)
    out = np.empty((n + CHAOS_BURN_IN, 2))
    x, y = 0.0, 0.0
    vx = SIERPINSKI_VERTICES[:, 0].tolist()
    vy = SIERPINSKI_VERTICES[:, 1].tolist()
    for k, c in enumerate(choice.tolist()):
        x = 0.5 * (x + vx[c])
        y = 0.5 * (y + vy[c])
        out[k, 0] = x
        out[k, 1] = y
    return PointCloud(out[CHAOS_BURN_IN:])


def gen_cantor_interval(n: int, levels: int = 10, seed: int = 0) -> PointCloud:
    """Middle-thirds Cantor set (``levels`` ternary digits) times [0, 1]."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    rng = SplitMix64.stream(seed, "cantor_interval")
    digits = 2 * rng.integers(2, n * levels).reshape(n, levels)
    scale = 3.0 ** -np.arange(1, levels + 1)
    x = digits @ scale + rng.random(n) * 3.0**-levels
    y = rng.random(n)
    return PointCloud(np.column_stack([x, y]))


def gen_arcs(n: int) -> PointCloud:
    """floor(n/2) evenly spaced points on each of two opposing unit-circle arcs."""
    if n < 2:
        raise ValueError("gen_arcs needs n >= 2")
    k = n // 2
    theta = np.linspace(-math.pi / 8, math.pi / 8, k)
    c1 = np.column_stack([np.cos(theta), np.sin(theta), np.zeros(k)])
    c2 = np.column_stack([1.0 - np.cos(theta), np.zeros(k), np.sin(theta)])
    return PointCloud(np.vstack([c1, c2]))


def gen_uniform_cube(n: int, m: int = 2, seed: int = 0) -> PointCloud:
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    rng = SplitMix64.stream(seed, "uniform_cube")
    return PointCloud(rng.random(n * m).reshape(n, m))


def gen_segment(n: int) -> PointCloud:
    if n < 1:
        raise ValueError("n must be >= 1")
    t = np.linspace(0.0, 1.0, n) if n > 1 else np.zeros(1)
    return PointCloud(np.column_stack([t, np.zeros(n)]))


def gen_lattice_subset(N: int, m: int = 2, density: float = 1.0, seed: int = 0) -> PointCloud:
    """Bernoulli(density) subset of [N]^m = {1..N}^m in lexicographic order.

    If no lattice point survives, the one with the smallest draw is kept so the
    result is never empty.
    """
    if N < 1 or m < 1:
        raise ValueError("N and m must be >= 1")
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    grid = np.array(np.meshgrid(*[np.arange(1, N + 1)] * m, indexing="ij"), dtype=np.float64)
    pts = grid.reshape(m, -1).T
    u = SplitMix64.stream(seed, "lattice_subset").random(len(pts))
    keep = u < density
    if not keep.any():
        keep[np.argmin(u)] = True
    return PointCloud(pts[keep])


def gen_bipartite_space(level: int) -> FiniteMetricSpace:
    """Two sides of 2^level points: cross distance 2^-(level+1), same side 2^-level.

    Points are ordered x_1..x_{2^n}, y_1..y_{2^n}.
    """
    if not 0 <= level <= MAX_BIPARTITE_LEVEL:
        raise ValueError(f"level must lie in [0, {MAX_BIPARTITE_LEVEL}]")
    half = 2**level
    side = np.repeat([0, 1], half)
    d = np.where(side[:, None] == side[None, :], 2.0**-level, 2.0 ** -(level + 1))
    np.fill_diagonal(d, 0.0)
    return FiniteMetricSpace(d, validated=True)


def bipartite_union_levels(max_level: int) -> np.ndarray:
    return np.concatenate([np.full(2 ** (j + 1), j) for j in range(max_level + 1)])


def gen_bipartite_union(max_level: int) -> FiniteMetricSpace:
    """Levels 0..max_level side by side; points on levels i != j are 2^-min(i,j) apart."""
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    total = 2 ** (max_level + 2) - 2
    if total > MAX_UNION_POINTS:
        raise ValueError(f"bipartite union of {total} points exceeds {MAX_UNION_POINTS}")
    lev = bipartite_union_levels(max_level)
    d = 2.0 ** -np.minimum(lev[:, None], lev[None, :]).astype(np.float64)
    offset = 0
    for j in range(max_level + 1):
        size = 2 ** (j + 1)
        d[offset:offset + size, offset:offset + size] = gen_bipartite_space(j).dist
        offset += size
    return FiniteMetricSpace(d, validated=True)


def generate(spec: GeneratorSpec):
    """Dispatch a GeneratorSpec to its sampler."""
    p = spec.params
    fam = spec.family
    if fam == "sierpinski":
        return gen_sierpinski(spec.n, spec.seed)
    if fam == "cantor_interval":
        return gen_cantor_interval(spec.n, int(p.get("levels", 10)), spec.seed)
    if fam == "arcs":
        return gen_arcs(spec.n)
    if fam == "uniform_cube":
        return gen_uniform_cube(spec.n, int(p.get("m", 2)), spec.seed)
    if fam == "segment":
        return gen_segment(spec.n)
    if fam == "lattice_subset":
        return gen_lattice_subset(int(p.get("N", spec.n)), int(p.get("m", 2)),
                                  float(p.get("density", 1.0)), spec.seed)
    if fam == "bipartite":
        return gen_bipartite_space(int(p.get("level", spec.n)))
    return gen_bipartite_union(int(p.get("max_level", spec.n)))
