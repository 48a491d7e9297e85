"""Minimal spanning trees, their power sums, and the MST dimension estimator."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .fitting import DEFAULT_ALPHA_GRID, DimensionEstimate, growth_inversion
from .generators import GeneratorSpec, generate
from .metric import FiniteMetricSpace, PointCloud, distance_matrix

DEFAULT_MST_SIZES = (500, 1000, 2000, 4000)


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """Edges as an (n-1, 2) index array with matching ``lengths``."""

    edges: np.ndarray
    lengths: np.ndarray
    n: int

    def __post_init__(self):
        if len(self.edges) != max(self.n - 1, 0) or len(self.lengths) != len(self.edges):
            raise ValueError("a spanning tree on n points has n-1 edges")

    @property
    def total_length(self) -> float:
        return float(np.sum(self.lengths))

    def as_list(self) -> list[tuple[int, int, float]]:
        return [(int(j), int(k), float(w)) for (j, k), w in zip(self.edges, self.lengths)]


def _as_metric(x) -> FiniteMetricSpace:
    return distance_matrix(x) if isinstance(x, PointCloud) else x


def minimum_spanning_tree(x) -> SpanningTree:
    """Kruskal over all pairs; ties broken by the lexicographic (j, k) index."""
    fms = _as_metric(x)
    n = fms.n
    if n < 1:
        raise ValueError("need at least one point")
    j, k = np.triu_indices(n, 1)
    w = fms.dist[j, k]
    order = np.lexsort((k, j, w))
    pairs = np.column_stack([j[order], k[order]]).astype(np.int32)
    _, killing, _ = kernels.union_find_pairs(n, pairs)
    chosen = pairs[killing]
    return SpanningTree(chosen.astype(np.int64), w[order][killing], n)


def e_alpha_mst(t: SpanningTree, alpha: float) -> float:
    """Half the sum of |e|^alpha over tree edges."""
    return 0.5 * float(np.sum(np.asarray(t.lengths, dtype=float) ** alpha))


@dataclass
class CorrespondenceReport:
    kind: str
    ok: bool
    max_error: float
    n_intervals: int
    mismatches: list = field(default_factory=list)


def verify_mst_ph0_correspondence(pc, kind: str = "rips", tol: float = 1e-9) -> CorrespondenceReport:
    """Compare sorted finite PH_0 lengths with MST edge lengths (halved for Čech)."""
    from .filtration import cech_filtration, rips_filtration
    from .persistence import persistent_homology

    if kind == "rips":
        f = rips_filtration(pc, max_dim=1)
        scale = 1.0
    elif kind == "cech":
        f = cech_filtration(pc, max_dim=1)
        scale = 0.5
    else:
        raise ValueError(f"unknown complex kind {kind!r}")
    bc = persistent_homology(f, keep_ephemeral=True)
    ph = np.sort(bc.lengths(0))
    tree = np.sort(minimum_spanning_tree(pc).lengths * scale)
    if len(ph) != len(tree):
        return CorrespondenceReport(kind, False, math.inf, len(ph),
                                    [f"count mismatch: {len(ph)} intervals vs {len(tree)} edges"])
    err = np.abs(ph - tree)
    bad = np.nonzero(err > tol)[0]
    mism = [(int(r), float(ph[r]), float(tree[r])) for r in bad[:20]]
    return CorrespondenceReport(kind, len(bad) == 0, float(err.max(initial=0.0)), len(ph), mism)


def _mst_lengths(spec: GeneratorSpec) -> np.ndarray:
    return minimum_spanning_tree(generate(spec)).lengths


def map_sizes(fn, spec: GeneratorSpec, sizes, workers: int | None):
    """Evaluate ``fn`` on ``spec.with_n(n)`` for each size; results in size order."""
    specs = [spec.with_n(n) for n in sizes]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, specs))
    return [fn(s) for s in specs]


def _check_sizes(sizes):
    sizes = [int(s) for s in sizes]
    if len(sizes) < 4:
        raise ValueError("need at least 4 sizes")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    return sizes


def estimate_mst_dimension(spec: GeneratorSpec, sizes=DEFAULT_MST_SIZES,
                           alpha_grid=DEFAULT_ALPHA_GRID, workers: int | None = None) -> DimensionEstimate:
    sizes = _check_sizes(sizes)
    lengths = map_sizes(_mst_lengths, spec, sizes, workers)
    sums = {a: [0.5 * float(np.sum(L ** a)) for L in lengths] for a in alpha_grid}
    est, curve, used, flag = growth_inversion(sizes, sums)
    a_ref = min(used, key=lambda a: abs(a - 1.0))
    diag = [(n, sums[a_ref][k], a_ref) for k, n in enumerate(sizes)]
    note = "no alpha in beta window; nearest used" if flag else ""
    return DimensionEstimate(est, "mst", None, diag, (min(used), max(used)), curve, flag, note)
