import math
from itertools import combinations

import numpy as np
import pytest

from phdim.acceptance import xi_bruteforce
from phdim.extremal import (circumradius, perturbation_check, stable_class_certificate, tp1,
                            tp1_corner, tp2, tp2_corner, triangle_persistence, verify_tp_minima,
                            xi_search)
from phdim.filtration import BudgetExceeded, cech_filtration
from phdim.metric import PointCloud
from phdim.persistence import persistent_homology
from phdim.rng import SplitMix64

EQUI = ([0, 0], [1, 0], [0.5, math.sqrt(3) / 2])
TRI = ([0, 0], [40, 0], [20, 30])


def test_circumradius_examples():
    assert circumradius([0, 0], [4, 0], [0, 3]) == pytest.approx(2.5)
    assert circumradius(*EQUI) == pytest.approx(0.5773503, abs=1e-7)
    with pytest.raises(ValueError):
        circumradius([0, 0], [1, 0], [2, 0])


def test_triangle_persistence_examples():
    assert triangle_persistence([0, 0], [4, 0], [0, 3]) is None
    b, d = triangle_persistence(*EQUI)
    assert (b, d) == pytest.approx((0.5, 1 / math.sqrt(3)))
    assert d - b == pytest.approx(0.07735, abs=1e-5)
    b, d = triangle_persistence(*TRI)
    # sides 40, sqrt(1300), sqrt(1300); area 600
    assert d == pytest.approx(40 * 1300 / (4 * 600)) and d - b == pytest.approx(5 / 3)


def test_triangle_persistence_matches_cech_pipeline():
    rng = SplitMix64.stream(0, "acute")
    seen = 0
    while seen < 200:
        P = rng.random(6).reshape(3, 2)
        tp = triangle_persistence(*P)
        if tp is None:
            continue
        seen += 1
        iv = persistent_homology(cech_filtration(PointCloud(P), 2)).finite(1)
        assert iv.shape == (1, 2)
        assert abs(iv[0, 0] - tp[0]) <= 1e-9 and abs(iv[0, 1] - tp[1]) <= 1e-9


def test_non_acute_triangles_have_no_cech_ph1():
    rng = SplitMix64.stream(1, "obtuse")
    for _ in range(100):
        P = rng.random(6).reshape(3, 2)
        if triangle_persistence(*P) is None:
            assert len(persistent_homology(cech_filtration(PointCloud(P), 2)).finite(1)) == 0


def test_tp_values():
    assert tp1(130, 100, -100) == pytest.approx(900 / 260, abs=1e-12)
    assert abs(tp1(130, 100, -100) - tp1_corner(100, 3)) <= 1e-9
    # closed form 1/2 (c^2 + N - sqrt(N (c^2 + N))) at c = 3, N = 100
    assert abs(tp2(100, 30, -30) - 0.5 * (109 - math.sqrt(10900))) <= 1e-12
    assert abs(tp2(100, 30, -30) - tp2_corner(100, 3)) <= 1e-9


def test_tp1_symmetric_case():
    # x = y, y2 = -y: sqrt((2y^2)^2) / (2y) - y = 0
    for y in (0.5, 2.0, 7.0):
        assert tp1(y, y, -y) == pytest.approx(0.0, abs=1e-12)


def test_tp_rejects_nonpositive_x():
    with pytest.raises(ValueError):
        tp1(0, 1, -1)


def test_tp1_increasing_in_x():
    rng = SplitMix64.stream(2, "tp-deriv")
    N, c = 100.0, 3.0
    s = c * math.sqrt(N)
    for _ in range(500):
        y1 = s + (N - s) * rng.random(1)[0]
        y2 = -(s + (N - s) * rng.random(1)[0])
        x0 = math.sqrt(-y1 * y2)
        x = x0 * (1 + 1e-3) + N * rng.random(1)[0]
        h = 1e-4 * x
        assert (tp1(x + h, y1, y2) - tp1(x - h, y1, y2)) / (2 * h) > 0


@pytest.mark.parametrize("N", [100, 400, 900])
def test_verify_tp_minima(N):
    r = verify_tp_minima(N, 3, 32)
    assert r.ok
    assert r.tp1_min >= r.tp1_corner - 1e-9 and r.tp2_min >= r.tp2_corner - 1e-9


def test_verify_tp_minima_validates():
    with pytest.raises(ValueError):
        verify_tp_minima(4, 3)
    with pytest.raises(ValueError):
        verify_tp_minima(100, 3, grid_steps=2)


def test_certificate_examples():
    cert = stable_class_certificate(np.array(TRI))
    assert cert.size == pytest.approx(5 / 3 - math.sqrt(2), abs=1e-9)
    assert cert.interval == pytest.approx((20.0, 65 / 3))
    assert stable_class_certificate(np.array([[0, 0], [1, 1], [2, 2]])) is None
    assert stable_class_certificate(np.array([[1, 1], [1, 2], [2, 1], [2, 2]])) is None


def test_certificate_robust_to_perturbation():
    cert = stable_class_certificate(np.array(TRI))
    held, worst = perturbation_check(cert, 100, seed=0)
    assert held and worst >= cert.size


def test_certificate_input_checks():
    with pytest.raises(ValueError):
        stable_class_certificate(np.array([[0.5, 0], [1, 0], [0, 1]]))
    with pytest.raises(BudgetExceeded):
        stable_class_certificate(np.array([[k, k * k] for k in range(61)]))


@pytest.mark.parametrize("N,want", [(1, 1), (2, 4), (3, 9)])
def test_xi_small_exact(N, want):
    r = xi_search(N)
    assert r.size == want and r.exact and len(r.witness) == want


def test_xi_matches_oracle_at_low_threshold():
    for thr in (0.05, 0.1, 0.2):
        r = xi_search(3, threshold=thr)
        assert r.exact and r.size == xi_bruteforce(3, thr)


def witness_is_valid(P, threshold):
    for a, b, c in combinations(P.tolist(), 3):
        tp = triangle_persistence(a, b, c)
        if tp is not None and tp[1] - tp[0] > threshold:
            return False
    return True


def test_xi_monotone_in_threshold_and_N():
    thresholds = [0.3, 0.2, 0.12, 0.06]
    for N in (3, 4):
        sizes = [xi_search(N, threshold=t).size for t in thresholds]
        assert all(b <= a for a, b in zip(sizes, sizes[1:]))
    for t in thresholds:
        sizes = [xi_search(N, threshold=t).size for N in (1, 2, 3, 4)]
        assert all(b >= a for a, b in zip(sizes, sizes[1:]))


def test_xi_local_search_returns_valid_witness():
    r = xi_search(6, threshold=0.1, seed=3, restarts=5)
    assert not r.exact and r.bad_triples > 0
    assert len(r.witness) == r.size and witness_is_valid(r.witness, 0.1)
    assert r.size >= xi_search(4, threshold=0.1).size


def test_xi_local_search_deterministic():
    a = xi_search(6, threshold=0.1, seed=7, restarts=3)
    b = xi_search(6, threshold=0.1, seed=7, restarts=3)
    assert np.array_equal(a.witness, b.witness)
