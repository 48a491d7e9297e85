"""Power-weighted persistence sums, box counts, and the dimension estimators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .fitting import (DEFAULT_ALPHA_GRID, DegenerateFit, DimensionEstimate, growth_inversion,
                      linear_fit)
from .generators import GeneratorSpec, generate
from .metric import PointCloud, epsilon_net
from .mst import _check_sizes, estimate_mst_dimension, map_sizes
from .persistence import Barcode, barcode

__all__ = [
    "DimensionEstimate", "e_alpha", "interval_count_tail", "box_count_grid",
    "ball_packing_count", "estimate_box_dimension", "estimate_ph_dimension",
    "estimate_mst_dimension", "estimate_ph_complexity", "arcs_experiment", "ArcsReport",
    "tail_exponent_pair", "TailExponents", "delaunay_count_bound",
]

DEFAULT_PH_SIZES = (500, 1000, 2000, 4000)
DEFAULT_BOX_SCALES = tuple(2.0**-k for k in range(3, 8))
ARCS_MAX_N = 400
MIN_TAIL_LENGTHS = 10


def e_alpha(b: Barcode, i: int, alpha: float) -> float:
    """Sum of (d - b)^alpha over bounded degree-i intervals of positive length."""
    L = b.lengths(i)
    L = L[L > 0]
    return float(np.sum(L**alpha)) if len(L) else 0.0


def interval_count_tail(b: Barcode, i: int, eps: float) -> int:
    if eps < 0:
        raise ValueError("eps must be >= 0")
    return int(np.sum(b.lengths(i) > eps))


def box_count_grid(pc: PointCloud, delta: float) -> int:
    """Occupied half-open cells [k*delta, (k+1)*delta) of the grid anchored at the origin."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    cells = np.floor(pc.points / delta).astype(np.int64)
    return int(len(np.unique(cells, axis=0)))


def ball_packing_count(x, delta: float) -> int:
    """Greedy packing of disjoint closed delta-balls centred at sample points.

    Point clouds use the ambient criterion (centres more than 2*delta apart,
    i.e. the greedy net with eps = 4*delta). A bare metric space has no ambient
    room, so balls are the subsets {z : d(c, z) <= delta} and two balls are
    disjoint when no sample point lies in both.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    if isinstance(x, PointCloud):
        return int(len(epsilon_net(x, 4.0 * delta)))
    D = x.dist
    member = D <= delta
    covered = np.zeros(len(D), dtype=bool)
    count = 0
    for c in range(len(D)):
        if not np.any(covered & member[c]):
            covered |= member[c]
            count += 1
    return count


def estimate_box_dimension(pc, deltas=DEFAULT_BOX_SCALES, variant: str = "grid") -> DimensionEstimate:
    """Slope of log N_delta against log(1/delta)."""
    deltas = sorted({float(d) for d in deltas}, reverse=True)
    if len(deltas) < 3 or deltas[0] / deltas[-1] < 4.0 or deltas[-1] <= 0:
        raise DegenerateFit("need >= 3 positive scales spanning at least two octaves")
    if variant == "grid":
        counts = [box_count_grid(pc, d) for d in deltas]
    elif variant == "packing":
        counts = [ball_packing_count(pc, d) for d in deltas]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    lx = -np.log(deltas)
    ly = np.log(counts)
    fit = linear_fit(lx, ly)
    diag = [(d, c, math.exp(fit.slope * u + fit.intercept)) for d, c, u in zip(deltas, counts, lx)]
    return DimensionEstimate(max(fit.slope, 0.0), "box", None, diag, (deltas[-1], deltas[0]),
                             [(0.0, fit.slope, fit.stderr)])


def _sample_lengths(spec: GeneratorSpec, i: int, kind: str) -> np.ndarray:
    x = generate(spec)
    kw = {"allow_collinear": True} if kind == "alpha2d" else {}
    b = barcode(x, kind, max_dim=i + 1, **kw)
    L = b.lengths(i)
    return L[L > 0]


def estimate_ph_dimension(spec: GeneratorSpec, i: int = 1, kind: str = "alpha2d",
                          sizes=DEFAULT_PH_SIZES, alpha_grid=DEFAULT_ALPHA_GRID,
                          workers: int | None = None) -> DimensionEstimate:
    """Growth-rate reading of the PH_i-dimension: fit E_alpha^i(x_n) ~ n^beta and invert."""
    if kind not in ("rips", "cech", "alpha2d"):
        raise ValueError(f"unknown complex kind {kind!r}")
    sizes = _check_sizes(sizes)
    lengths = map_sizes(partial(_sample_lengths, i=i, kind=kind), spec, sizes, workers)
    counts = [len(L) for L in lengths]
    if not any(counts):
        diag = [(n, 0.0, 0.0) for n in sizes]
        return DimensionEstimate(0.0, "ph", i, diag, (), [], True, "every barcode is empty")
    sums = {a: [float(np.sum(L**a)) for L in lengths] for a in alpha_grid}
    try:
        est, curve, used, flag = growth_inversion(sizes, sums)
    except DegenerateFit as exc:
        diag = [(n, float(c), 0.0) for n, c in zip(sizes, counts)]
        return DimensionEstimate(0.0, "ph", i, diag, (), [], True, str(exc))
    a_ref = min(used, key=lambda a: abs(a - 1.0))
    diag = [(n, sums[a_ref][k], a_ref) for k, n in enumerate(sizes)]
    note = "no alpha in beta window; nearest used" if flag else ""
    return DimensionEstimate(est, "ph", i, diag, (min(used), max(used)), curve, flag, note)


@dataclass
class TailExponents:
    sum_exponent: float
    count_exponent: float
    degenerate: bool = False
    scales: list = field(default_factory=list)
    counts: list = field(default_factory=list)


def _dyadic_range(y: np.ndarray) -> tuple[int, int]:
    j_start = math.floor(math.log2(1.0 / y.max())) + 1
    j_end = max(math.ceil(math.log2(2.0 / y.min())), j_start + 1)
    return j_start, j_end


def _finest_half(k: int) -> slice:
    return slice(min(k // 2, max(k - 2, 0)), k)


def tail_exponent_pair(lengths) -> TailExponents:
    """Count and sum exponents of a multiset of positive reals.

    Count exponent: slope of log F(eps) against log(1/eps), F(eps) = #{y > eps},
    over dyadic eps = 2^-j spanning the data, fitted on the finest half of the
    scales. Sum exponent: the alpha at which the dyadic block sums
    sum_{2^-(j+1) < y <= 2^-j} y^alpha stop growing with j, i.e. where their
    fitted log-slope (same finest half) crosses zero; found by bisection.
    """
    y = np.asarray(lengths, dtype=float).reshape(-1)
    if len(y) and (not np.all(np.isfinite(y)) or np.any(y <= 0)):
        raise ValueError("lengths must be finite and positive")
    if len(y) < MIN_TAIL_LENGTHS:
        return TailExponents(0.0, 0.0, True)
    j_start, j_end = _dyadic_range(y)
    js = np.arange(j_start, j_end + 1)
    eps = 2.0 ** -js.astype(float)
    F = np.array([np.sum(y > e) for e in eps], dtype=float)
    half = _finest_half(len(js))
    x = js[half] * math.log(2.0)
    count_exp = linear_fit(x, np.log(F[half])).slope if np.all(F[half] > 0) else 0.0

    # block j holds y in (2^-(j+1), 2^-j]
    blk = np.floor(-np.log2(y)).astype(np.int64)
    blk = np.where(2.0 ** -blk.astype(float) < y, blk - 1, blk)
    bj = np.arange(j_start - 1, j_end)
    sel = bj[_finest_half(len(bj))]
    occupied = [j for j in sel if np.any(blk == j)]
    if len(occupied) < 2:
        sum_exp = 0.0
    else:
        members = [y[blk == j] for j in occupied]
        xs = np.array(occupied, dtype=float) * math.log(2.0)

        def slope(a):
            return linear_fit(xs, [math.log(np.sum(m**a)) for m in members]).slope

        lo, hi = 0.0, 1.0
        if slope(lo) <= 0:
            sum_exp = 0.0
        else:
            while slope(hi) > 0 and hi < 1024:
                lo, hi = hi, 2 * hi
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                lo, hi = (mid, hi) if slope(mid) > 0 else (lo, mid)
            sum_exp = 0.5 * (lo + hi)
    return TailExponents(float(sum_exp), float(max(count_exp, 0.0)), False,
                         eps.tolist(), F.astype(int).tolist())


def estimate_ph_complexity(spec: GeneratorSpec, i: int = 1, kind: str = "alpha2d") -> DimensionEstimate:
    """Tail exponents of the degree-i barcode of a single (dense) sample."""
    L = _sample_lengths(spec, i, kind)
    if len(L) == 0:
        return DimensionEstimate(0.0, "ph_complexity", i, [(0.0, 0.0, 0.0)], (), [], True,
                                 "empty barcode")
    t = tail_exponent_pair(L)
    diag = [(e, c, 0.0) for e, c in zip(t.scales, t.counts)] or [(0.0, float(len(L)), 0.0)]
    return DimensionEstimate(t.count_exponent, "ph_complexity", i, diag,
                             (min(t.scales, default=0.0), max(t.scales, default=0.0)),
                             [(t.sum_exponent, t.count_exponent, 0.0)], t.degenerate,
                             f"sum exponent {t.sum_exponent:.6g}")


@dataclass
class ArcsReport:
    sizes: list
    counts: list
    e11: list
    count_slope: float
    e11_ratio: float
    e11_nonincreasing: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def arcs_experiment(sizes=(50, 100, 200, 400), budget: int | None = None) -> ArcsReport:
    """Čech PH_1 counts and E_1^1 of the two-arcs family at each size."""
    from .filtration import DEFAULT_BUDGET
    sizes = [int(n) for n in sizes]
    if not sizes or max(sizes) > ARCS_MAX_N or min(sizes) < 2:
        raise ValueError(f"sizes must lie in [2, {ARCS_MAX_N}]")
    counts, sums = [], []
    for n in sizes:
        b = barcode(generate(GeneratorSpec("arcs", n)), "cech", max_dim=2,
                    budget=budget or DEFAULT_BUDGET)
        counts.append(b.count(1, include_infinite=True))
        sums.append(e_alpha(b, 1, 1.0))
    pos = [k for k, c in enumerate(counts) if c > 0]
    slope = (linear_fit(np.log([sizes[k] for k in pos]), np.log([counts[k] for k in pos])).slope
             if len(pos) >= 2 else 0.0)
    ratio = max(sums) / min(sums) if min(sums) > 0 else math.inf
    mono = all(b <= a for a, b in zip(sums, sums[1:]))
    return ArcsReport(sizes, counts, sums, float(slope), float(ratio), mono)


def delaunay_count_bound(n: int, i: int, m: int = 2) -> int:
    """C(n, i+1): the maximal i-simplex count of an n-vertex Delaunay triangulation in R^m.

    Exact maximum for 0 < i < floor((m+1)/2); for larger i it is still an upper
    bound, since every i-simplex is an (i+1)-subset of the vertices.
    """
    if n < 0 or i < 0 or m < 1:
        raise ValueError("need n >= 0, i >= 0, m >= 1")
    c = math.comb(n, i + 1)
    if c > 2**63 - 1:
        raise OverflowError("bound exceeds 64-bit range")
    return c
