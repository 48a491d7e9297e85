import math

import numpy as np
import pytest

from phdim.dimension import (arcs_experiment, ball_packing_count, box_count_grid,
                             delaunay_count_bound, e_alpha, estimate_box_dimension,
                             estimate_ph_complexity, estimate_ph_dimension, interval_count_tail,
                             tail_exponent_pair)
from phdim.fitting import DegenerateFit
from phdim.generators import GeneratorSpec, gen_bipartite_union, gen_uniform_cube, generate
from phdim.metric import PointCloud
from phdim.persistence import Barcode, barcode
from phdim.rng import SplitMix64

TWO = Barcode.from_intervals([(1, 0.0, 0.5), (1, 0.25, 0.5)])
SIERPINSKI = math.log(3) / math.log(2)


def test_e_alpha_examples():
    assert e_alpha(TWO, 1, 1) == 0.75
    assert e_alpha(TWO, 1, 2) == 0.3125
    assert e_alpha(TWO, 0, 1) == 0


def test_tail_count_examples():
    assert interval_count_tail(TWO, 1, 0.3) == 1
    assert interval_count_tail(TWO, 1, 0.0) == 2
    assert interval_count_tail(Barcode.from_intervals([(1, 0, 0.5)]), 1, 0.5) == 0


def random_barcode(seed, k=300):
    rng = SplitMix64.stream(seed, "dim-bc")
    b = rng.random(k)
    return Barcode.from_intervals([(1, x, x + 0.999 * y) for x, y in zip(b, rng.random(k)) if y > 0])


@pytest.mark.parametrize("seed", range(5))
def test_e_alpha_strictly_decreasing(seed):
    bc = random_barcode(seed)
    vals = [e_alpha(bc, 1, a) for a in np.linspace(0.1, 4, 20)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("seed", range(5))
def test_tail_count_nonincreasing(seed):
    bc = random_barcode(seed)
    counts = [interval_count_tail(bc, 1, e) for e in np.linspace(0, 1, 50)]
    assert all(b <= a for a, b in zip(counts, counts[1:]))


@pytest.mark.parametrize("seed", range(5))
def test_dyadic_bucket_bounds(seed):
    bc = random_barcode(seed, k=1000)
    J = bc.dyadic_buckets(1)
    assert sum(J.values()) == len(bc.lengths(1))
    for alpha in (0.5, 1.0, 2.0):
        E = e_alpha(bc, 1, alpha)
        lo = sum(c * 2.0 ** (-(k + 1) * alpha) for k, c in J.items())
        hi = sum(c * 2.0 ** (-k * alpha) for k, c in J.items())
        assert lo <= E <= hi


def test_box_count_examples():
    seg = generate(GeneratorSpec("segment", 1000))
    # 8 half-open cells plus the extra cell holding the endpoint at 1.0
    assert box_count_grid(seg, 1 / 8) == 9
    one = PointCloud([[0.3, 0.7]])
    assert box_count_grid(one, 0.01) == 1 and ball_packing_count(one, 0.01) == 1


@pytest.mark.parametrize("seed", range(4))
def test_box_count_refinement_bounds(seed):
    pc = gen_uniform_cube(2000, 2 + seed % 2, seed=seed)
    m = pc.ambient_dim
    for d in (0.5, 0.2, 0.05):
        a, b = box_count_grid(pc, d), box_count_grid(pc, d / 2)
        assert a <= b <= 2**m * a


def test_packing_bipartite_union_level1():
    assert ball_packing_count(gen_bipartite_union(1), 0.3) == 3


@pytest.mark.xfail(strict=True, reason="the printed count assumes deeper levels are isolated at "
                   "delta=0.3, but a level-2 ball still covers the opposite side; the true greedy count is 4")
def test_packing_bipartite_union_level3():
    assert ball_packing_count(gen_bipartite_union(3), 0.3) == 3


def test_box_dimension_sierpinski():
    est = estimate_box_dimension(generate(GeneratorSpec("sierpinski", 50000, seed=1)))
    assert est.estimate == pytest.approx(SIERPINSKI, abs=0.05)
    assert len(est.diagnostics) == 5


def test_box_dimension_segment():
    assert estimate_box_dimension(generate(GeneratorSpec("segment", 10000))).estimate == pytest.approx(1.0, abs=0.05)


def test_box_dimension_cantor_triadic_scales():
    pc = generate(GeneratorSpec("cantor_interval", 50000, seed=0))
    est = estimate_box_dimension(pc, [3.0**-k for k in range(1, 6)])
    assert est.estimate == pytest.approx(1 + math.log(2) / math.log(3), abs=0.06)


def test_box_dimension_packing_variant():
    est = estimate_box_dimension(generate(GeneratorSpec("sierpinski", 20000, seed=2)), variant="packing")
    assert est.estimate == pytest.approx(SIERPINSKI, abs=0.15)


def test_box_dimension_needs_scales():
    pc = gen_uniform_cube(10)
    with pytest.raises(DegenerateFit):
        estimate_box_dimension(pc, [0.1, 0.05])
    with pytest.raises(DegenerateFit):
        estimate_box_dimension(pc, [0.1, 0.08, 0.06])


def test_ph_dimension_segment_is_zero():
    est = estimate_ph_dimension(GeneratorSpec("segment"), 1, "alpha2d", (50, 100, 200, 400))
    assert est.estimate == 0 and est.degenerate and est.diagnostics


def test_ph_dimension_square():
    est = estimate_ph_dimension(GeneratorSpec("uniform_cube", seed=0), 1, "alpha2d",
                                (4000, 8000, 16000, 32000))
    assert est.estimate == pytest.approx(2.0, abs=0.25)
    assert est.curve and est.diagnostics


@pytest.mark.xfail(strict=True, reason="at 500..4000 points the PH_1 growth fit reads about 2.1, "
                   "far above 1.585; it converges only at larger sizes")
def test_ph_dimension_sierpinski_desk_sizes():
    est = estimate_ph_dimension(GeneratorSpec("sierpinski", seed=1), 1, "alpha2d", (500, 1000, 2000, 4000))
    assert est.estimate == pytest.approx(SIERPINSKI, abs=0.2)


@pytest.mark.parametrize("seed", range(3))
def test_alpha_ph1_count_bound(seed):
    for n in (30, 200):
        bc = barcode(gen_uniform_cube(n, 2, seed=seed), "alpha2d")
        assert bc.count(1) <= delaunay_count_bound(n, 1, 2) == math.comb(n, 2)


def test_tail_pair_synthetic():
    y4 = np.concatenate([np.full(4**k, 2.0**-k) for k in range(11)])
    t = tail_exponent_pair(y4)
    assert t.sum_exponent == pytest.approx(2, abs=0.05) and t.count_exponent == pytest.approx(2, abs=0.05)
    y2 = np.concatenate([np.full(2**k, 2.0**-k) for k in range(11)])
    t = tail_exponent_pair(y2)
    assert t.sum_exponent == pytest.approx(1, abs=0.05) and t.count_exponent == pytest.approx(1, abs=0.05)


def test_tail_pair_constant_and_small():
    assert tail_exponent_pair(np.full(100, 0.5)).count_exponent == pytest.approx(0, abs=1e-12)
    assert tail_exponent_pair([0.5] * 9).degenerate
    with pytest.raises(ValueError):
        tail_exponent_pair([0.5] * 9 + [-1.0])


def test_ph_complexity_runs():
    est = estimate_ph_complexity(GeneratorSpec("uniform_cube", 3000, seed=1))
    assert est.method == "ph_complexity" and est.estimate >= 0 and est.diagnostics


def test_delaunay_count_bound():
    assert delaunay_count_bound(10, 1, 3) == 45
    assert delaunay_count_bound(5, 1, 3) == 10
    assert delaunay_count_bound(2, 1) == 1
    with pytest.raises(OverflowError):
        delaunay_count_bound(10**6, 5)


def test_arcs_smoke():
    r = arcs_experiment([4, 8])
    assert all(c >= 0 for c in r.counts) and all(math.isfinite(s) for s in r.e11)
    with pytest.raises(ValueError):
        arcs_experiment([500])
