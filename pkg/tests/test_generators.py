import math

import numpy as np
import pytest

from phdim.generators import (GeneratorSpec, gen_arcs, gen_bipartite_space, gen_bipartite_union,
                              gen_cantor_interval, gen_lattice_subset, gen_segment,
                              gen_sierpinski, gen_uniform_cube, generate)
from phdim.metric import validate_metric
from phdim.rng import SplitMix64


def test_splitmix_reference_values():
    # published splitmix64 outputs for seed 0
    r = SplitMix64(0)
    assert [r.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_streams_are_label_separated():
    a = SplitMix64.stream(7, "a").random(5)
    b = SplitMix64.stream(7, "b").random(5)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, SplitMix64.stream(7, "a").random(5))


@pytest.mark.parametrize("family", ["sierpinski", "cantor_interval", "uniform_cube", "lattice_subset"])
def test_determinism(family):
    spec = GeneratorSpec(family, 200, seed=42, params={"N": 6, "density": 0.5} if family == "lattice_subset" else {})
    a, b = generate(spec), generate(spec)
    assert np.array_equal(a.points, b.points)
    assert a.points.tobytes() == b.points.tobytes()


def test_seed_changes_sample():
    assert not np.array_equal(gen_sierpinski(50, 1).points, gen_sierpinski(50, 2).points)


def test_sierpinski_inside_triangle():
    p = gen_sierpinski(5000, 3).points
    h = math.sqrt(3) / 2
    assert np.all(p[:, 1] >= -1e-12)
    assert np.all(p[:, 1] <= h * (1 - np.abs(2 * p[:, 0] - 1)) + 1e-9)


def test_cantor_level_one():
    x = gen_cantor_interval(500, levels=1, seed=0).points[:, 0]
    assert np.all((x <= 1 / 3) | (x >= 2 / 3))
    assert x.min() >= 0 and x.max() <= 1


def test_arcs_on_circles():
    p = gen_arcs(40).points
    c1, c2 = p[:20], p[20:]
    assert np.allclose(np.hypot(c1[:, 0], c1[:, 1]), 1.0) and np.all(c1[:, 2] == 0)
    assert np.allclose((1 - c2[:, 0]) ** 2 + c2[:, 2] ** 2, 1.0) and np.all(c2[:, 1] == 0)


def test_arcs_theta_zero_points():
    p = gen_arcs(6).points  # 3 per arc, middle one at theta = 0
    assert np.allclose(p[1], [1, 0, 0])
    assert np.allclose(p[4], [0, 0, 0])


def test_arcs_n4_endpoints():
    p = gen_arcs(4).points
    t = math.pi / 8
    assert np.allclose(p[:2], [[math.cos(t), -math.sin(t), 0], [math.cos(t), math.sin(t), 0]])
    assert len(p) == 4


def test_segment_and_lattice():
    assert gen_segment(3).points.tolist() == [[0, 0], [0.5, 0], [1, 0]]
    assert gen_lattice_subset(2, 2, 1.0, seed=9).points.tolist() == [[1, 1], [1, 2], [2, 1], [2, 2]]
    sub = gen_lattice_subset(10, 3, 0.3, seed=1).points
    assert sub.shape[1] == 3 and 0 < len(sub) < 1000
    assert np.all((sub >= 1) & (sub <= 10) & (sub == np.round(sub)))


def test_uniform_cube_range():
    p = gen_uniform_cube(1000, 3, seed=0).points
    assert p.shape == (1000, 3) and p.min() >= 0 and p.max() < 1


@pytest.mark.parametrize("level", range(0, 6))
def test_bipartite_distances(level):
    D = gen_bipartite_space(level).dist
    off = D[~np.eye(len(D), dtype=bool)]
    assert len(D) == 2 ** (level + 1)
    assert set(off.tolist()) <= {2.0 ** (-level - 1), 2.0 ** -level}
    assert validate_metric(D)[0].ok


def test_bipartite_level_examples():
    D = gen_bipartite_space(1).dist
    assert D[0, 2] == D[0, 3] == D[1, 2] == D[1, 3] == 0.25
    assert D[0, 1] == D[2, 3] == 0.5
    # cross distance 2^-(n+1) is 0.5 at n = 0
    assert gen_bipartite_space(0).dist.tolist() == [[0, 0.5], [0.5, 0]]


def test_bipartite_union():
    D = gen_bipartite_union(1).dist
    assert D.shape == (6, 6)
    assert np.all(D[:2, 2:] == 1.0)
    assert validate_metric(D)[0].ok


def test_spec_validation():
    with pytest.raises(ValueError):
        GeneratorSpec("nope", 10)
    with pytest.raises(ValueError):
        GeneratorSpec("segment", 0)
    with pytest.raises(ValueError):
        gen_bipartite_space(-1)
