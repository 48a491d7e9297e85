import math

import numpy as np
import pytest

from phdim.metric import (FiniteMetricSpace, PointCloud, distance_matrix, epsilon_net,
                          hausdorff_distance, validate_metric)
from phdim.generators import gen_bipartite_space, gen_uniform_cube


def test_distance_matrix_line():
    d = distance_matrix(PointCloud([[0.0], [1.0], [3.0]])).dist
    assert d.tolist() == [[0, 1, 3], [1, 0, 2], [3, 2, 0]]


def test_distance_matrix_pythagorean():
    assert distance_matrix(PointCloud([[0, 0], [3, 4]])).dist[0, 1] == 5.0


def test_distance_matrix_single_point():
    assert distance_matrix(PointCloud([[2.0, 7.0]])).dist.tolist() == [[0.0]]


def test_validate_euclidean_passes():
    rep, fms = validate_metric(distance_matrix(gen_uniform_cube(3, 2, seed=4)))
    assert rep.ok and fms.validated


def test_validate_symmetry_violation():
    rep, fms = validate_metric(np.array([[0.0, 1.0], [2.0, 0.0]]))
    assert (0, 1) in rep.symmetry
    assert not fms.validated


def test_validate_bipartite_with_triangle_check():
    fms = gen_bipartite_space(1)
    rep, _ = validate_metric(fms)
    assert rep.ok
    # oracle: every ordered triple by hand
    D = fms.dist
    n = len(D)
    assert all(D[a, c] <= D[a, b] + D[b, c] for a in range(n) for b in range(n) for c in range(n))


def test_validate_reports_each_category():
    D = np.array([[1.0, -1.0, 5.0], [-1.0, 0.0, 1.0], [5.0, 1.0, np.inf]])
    rep, _ = validate_metric(D)
    assert rep.diagonal and rep.negative and rep.non_finite
    rep2, _ = validate_metric(np.array([[0, 1, 5], [1, 0, 1], [5, 1, 0]], dtype=float))
    assert rep2.triangle and not rep2.symmetry


def test_validate_zero_distance_is_warning():
    rep, fms = validate_metric(np.zeros((2, 2)))
    assert rep.ok and rep.warnings and fms.validated


def test_validate_non_square():
    with pytest.raises(ValueError):
        validate_metric(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        FiniteMetricSpace(np.zeros((2, 3)))


def test_hausdorff_examples():
    assert hausdorff_distance(PointCloud([[0.0]]), PointCloud([[0.0], [1.0]])) == 1.0
    a = PointCloud([[0.0], [1.0]])
    assert hausdorff_distance(a, a) == 0.0
    # four pairwise distances 0.1, 0.9, 0.9, 0.1
    assert hausdorff_distance(a, PointCloud([[0.1], [0.9]])) == pytest.approx(0.1, abs=1e-12)


def test_hausdorff_symmetric_and_set_semantics():
    a = gen_uniform_cube(30, 3, seed=1)
    b = gen_uniform_cube(20, 3, seed=2)
    assert hausdorff_distance(a, b) == hausdorff_distance(b, a)
    dup = PointCloud(np.vstack([a.points, a.points[::-1]]))
    assert hausdorff_distance(a, dup) == 0.0
    with pytest.raises(ValueError):
        hausdorff_distance(a, gen_uniform_cube(3, 2))


def test_epsilon_net_examples():
    assert epsilon_net(PointCloud([[0.0], [0.1], [1.0]]), 0.5).tolist() == [0, 2]
    assert epsilon_net(PointCloud([[4.0]]), 10.0).tolist() == [0]
    pc = gen_uniform_cube(40, 2, seed=3)
    dmin = distance_matrix(pc).dist[np.triu_indices(40, 1)].min()
    assert len(epsilon_net(pc, 1.9 * dmin)) == 40


@pytest.mark.parametrize("eps", [0.05, 0.2, 0.7])
def test_epsilon_net_covers_and_separates(eps):
    pc = gen_uniform_cube(300, 2, seed=11)
    net = epsilon_net(pc, eps)
    D = distance_matrix(pc).dist
    assert np.all(D[:, net].min(axis=1) <= eps / 2)
    sub = D[np.ix_(net, net)]
    assert np.all(sub[np.triu_indices(len(net), 1)] > eps / 2)
    # the metric-space path scans identically
    assert epsilon_net(FiniteMetricSpace(D), eps).tolist() == net.tolist()


def test_epsilon_net_rejects_nonpositive():
    with pytest.raises(ValueError):
        epsilon_net(PointCloud([[0.0]]), 0.0)


def test_distance_matrix_always_valid():
    for seed in range(5):
        rep, _ = validate_metric(distance_matrix(gen_uniform_cube(25, 4, seed=seed)))
        assert rep.ok


def test_pointcloud_rejects_bad_input():
    with pytest.raises(ValueError):
        PointCloud(np.empty((0, 2)))
    with pytest.raises(ValueError):
        PointCloud([[math.nan, 0.0]])


def test_csv_roundtrip(tmp_path):
    pc = gen_uniform_cube(7, 3, seed=5)
    pc.to_csv(tmp_path / "p.csv")
    assert np.array_equal(PointCloud.from_csv(tmp_path / "p.csv").points, pc.points)
    fms = distance_matrix(pc)
    fms.to_csv(tmp_path / "d.csv")
    assert np.array_equal(FiniteMetricSpace.from_csv(tmp_path / "d.csv").dist, fms.dist)
