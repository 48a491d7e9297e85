"""The ten desk-scale acceptance checks.

Each check returns a :class:`CheckResult`; ``run_suite`` runs a filtered
subset and prints one line per check. The CLI ``verify`` command and the
test suite share these functions.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from .dimension import (arcs_experiment, estimate_box_dimension, estimate_ph_dimension,
                        tail_exponent_pair)
from .extremal import tp1, tp1_corner, tp2, tp2_corner, verify_tp_minima, xi_search
from .filtration import cech_filtration, rips_filtration
from .generators import GeneratorSpec, gen_bipartite_space, gen_uniform_cube, generate
from .metric import PointCloud, distance_matrix, hausdorff_distance
from .mst import estimate_mst_dimension, verify_mst_ph0_correspondence
from .persistence import Barcode, bottleneck_distance, link_ph0_count, persistent_homology
from .rng import SplitMix64

SIERPINSKI_DIM = math.log(3) / math.log(2)


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.key:<12} {self.title} ({self.seconds:.1f}s / {self.budget:.0f}s): {self.detail}"


def _timed(key, title, budget, fn) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if dt >= budget:
        ok = False
        detail += "; over runtime budget"
    return CheckResult(key, title, bool(ok), detail, dt, budget)


def check_bipartite() -> CheckResult:
    def body():
        notes, ok = [], True
        for n in range(1, 5):
            bc = persistent_homology(rips_filtration(gen_bipartite_space(n), max_dim=2))
            iv = bc.degree(1)
            want = 2 ** (2 * n) - 2 ** (n + 1) + 1
            exact = bool(np.all(iv[:, 0] == 2.0 ** (-n - 1)) and np.all(iv[:, 1] == 2.0 ** -n))
            ok &= len(iv) == want and exact
            notes.append(f"n={n}:{len(iv)}/{want}{'' if exact else ' (bad endpoints)'}")
        return ok, " ".join(notes)
    return _timed("bipartite", "bipartite exact PH_1 counts", 30, body)


def gf2_rank(M: np.ndarray) -> int:
    """Rank over Z/2 by plain Gaussian elimination."""
    M = (np.asarray(M) % 2).astype(np.uint8)
    r = 0
    rows, cols = M.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        r += 1
        if r == rows:
            break
    return r


def betti_bruteforce(simplices: dict, eps: float, degree: int) -> int:
    """dim H_degree of the subcomplex {s : value(s) <= eps}, from boundary ranks."""
    live = {d: sorted(s for s, v in simplices.items() if len(s) == d + 1 and v <= eps)
            for d in range(degree + 2)}

    def boundary(d):
        rows = {s: k for k, s in enumerate(live[d - 1])}
        B = np.zeros((len(live[d - 1]), len(live[d])), dtype=np.uint8)
        for j, s in enumerate(live[d]):
            for f in combinations(s, d):
                B[rows[f], j] = 1
        return B

    n_d = len(live[degree])
    rk_d = gf2_rank(boundary(degree)) if degree > 0 and n_d and live[degree - 1] else 0
    rk_up = gf2_rank(boundary(degree + 1)) if live[degree + 1] else 0
    return n_d - rk_d - rk_up


def check_equilateral() -> CheckResult:
    def body():
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
        iv = persistent_homology(cech_filtration(PointCloud(pts), max_dim=2)).finite(1)
        R = 1 / math.sqrt(3)
        ok = len(iv) == 1 and abs(iv[0, 0] - 0.5) <= 1e-9 and abs(iv[0, 1] - R) <= 1e-9
        # analytic Čech values: edges at half length, the acute triangle at its circumradius
        cx = {(0,): 0.0, (1,): 0.0, (2,): 0.0, (0, 1): 0.5, (0, 2): 0.5, (1, 2): 0.5, (0, 1, 2): R}
        bc = Barcode.from_intervals([(1, b, d) for b, d in iv])
        ranks = []
        for eps in (0.49, 0.55, 0.6):
            want = betti_bruteforce(cx, eps, 1)
            got = bc.betti(1, eps)
            ranks.append(f"eps={eps}:{got}/{want}")
            ok &= want == got
        return ok, f"interval={iv.tolist()} " + " ".join(ranks)
    return _timed("equilateral", "equilateral Čech barcode", 1, body)


def check_mst_ph0() -> CheckResult:
    def body():
        bad, worst = [], 0.0
        for k in range(50):
            n = 20 + (k * 137) % 281  # spread over [20, 300]
            pc = gen_uniform_cube(n, 2, seed=1000 + k)
            for kind in ("rips", "cech"):
                rep = verify_mst_ph0_correspondence(pc, kind)
                worst = max(worst, rep.max_error)
                if not rep.ok:
                    bad.append((k, kind))
        return not bad, f"50 clouds x 2 kinds, max error {worst:.2e}, failures {bad[:5]}"
    return _timed("mst-ph0", "MST / PH_0 bijection", 60, body)


def check_stability() -> CheckResult:
    def body():
        worst = -math.inf
        fails = 0
        for k in range(100):
            rng = SplitMix64.stream(k, "stability")
            n = 12 + k % 19
            X = rng.random(2 * n).reshape(n, 2)
            eta = 0.002 + 0.05 * rng.random(1)[0]
            Y = X + eta * (2 * rng.random(2 * n).reshape(n, 2) - 1)
            a, b = PointCloud(X), PointCloud(Y)
            h = hausdorff_distance(a, b)
            ba = persistent_homology(cech_filtration(a, max_dim=2))
            bb = persistent_homology(cech_filtration(b, max_dim=2))
            for i in (0, 1):
                gap = bottleneck_distance(ba, bb, i) - h
                worst = max(worst, gap)
                fails += gap > 1e-9
        return fails == 0, f"200 comparisons, max(bottleneck - hausdorff) = {worst:.3e}"
    return _timed("stability", "bottleneck <= Hausdorff", 120, body)


def check_rips_linear() -> CheckResult:
    def body():
        ok, notes = True, []
        for n in (100, 200, 400):
            D = distance_matrix(gen_uniform_cube(n, 2, seed=n))
            c = persistent_homology(rips_filtration(D, max_dim=2)).count(1)
            link = max(link_ph0_count(D, v) for v in range(n))
            ok &= c <= 5 * n and link <= 5
            notes.append(f"n={n}: |PH1|={c} max link={link}")
        return ok, "; ".join(notes)
    return _timed("rips-linear", "Rips PH_1 linear count", 600, body)


def check_sierpinski() -> CheckResult:
    def body():
        box = estimate_box_dimension(generate(GeneratorSpec("sierpinski", 50000, seed=1))).estimate
        ph = estimate_ph_dimension(GeneratorSpec("sierpinski", seed=1), 1, "alpha2d",
                                   (500, 1000, 2000, 4000)).estimate
        mst = estimate_mst_dimension(GeneratorSpec("sierpinski", seed=1)).estimate
        oks = (abs(box - SIERPINSKI_DIM) <= 0.05, 1.39 <= ph <= 1.79,
               abs(mst - SIERPINSKI_DIM) <= 0.15)
        marks = ["ok" if o else "out" for o in oks]
        return all(oks), (f"box={box:.4f} ({marks[0]}), ph1={ph:.4f} ({marks[1]}), "
                          f"mst={mst:.4f} ({marks[2]})")
    return _timed("sierpinski", "Sierpinski dimension agreement", 600, body)


def check_arcs() -> CheckResult:
    def body():
        r = arcs_experiment((50, 100, 200, 400))
        ok = 1.3 <= r.count_slope <= 1.7 and r.e11_ratio < 3
        sums = ", ".join(f"{s:.5f}" for s in r.e11)
        return ok, (f"counts={r.counts} slope={r.count_slope:.3f}; E_1^1=[{sums}] "
                    f"max/min={r.e11_ratio:.3f} nonincreasing={r.e11_nonincreasing}")
    return _timed("arcs", "two-arcs growth", 900, body)


def check_tp() -> CheckResult:
    def body():
        v1, v2 = tp1(130, 100, -100), tp2(100, 30, -30)
        ok = abs(v1 - tp1_corner(100, 3)) <= 1e-9 and abs(v2 - tp2_corner(100, 3)) <= 1e-9
        reps = [verify_tp_minima(N, 3, 32) for N in (100, 400)]
        ok &= all(r.ok for r in reps)
        return ok, (f"tp1={v1:.9f} tp2={v2:.9f}; minima "
                    + ", ".join(f"N={r.N}:{r.tp1_min:.6f}/{r.tp2_min:.6f} ok={r.ok}" for r in reps))
    return _timed("tp", "TP_1 / TP_2 corner minima", 30, body)


def check_tail() -> CheckResult:
    def body():
        y = np.concatenate([np.full(4**k, 2.0**-k) for k in range(11)])
        t = tail_exponent_pair(y)
        ok = 1.95 <= t.sum_exponent <= 2.05 and 1.95 <= t.count_exponent <= 2.05
        return ok, f"sum exponent={t.sum_exponent:.4f} count exponent={t.count_exponent:.4f}"
    return _timed("tail", "tail-exponent equivalence", 5, body)


def xi_bruteforce(N: int, threshold: float) -> int:
    """Oracle: largest subset of [N]^2 with no acute triple whose Čech PH_1 length exceeds threshold."""
    P = [(x, y) for x in range(1, N + 1) for y in range(1, N + 1)]
    bad = []
    for t in combinations(range(len(P)), 3):
        pts = np.array([P[i] for i in t], dtype=float)
        iv = persistent_homology(cech_filtration(PointCloud(pts), max_dim=2)).finite(1)
        if len(iv) and (iv[0, 1] - iv[0, 0]) > threshold:
            bad.append(sum(1 << i for i in t))
    best = 0
    for mask in range(1 << len(P)):
        if all(mask & b != b for b in bad):
            best = max(best, bin(mask).count("1"))
    return best


def check_xi() -> CheckResult:
    def body():
        thr = math.sqrt(2) + 1
        ok, notes = True, []
        for N, want in ((2, 4), (3, 9)):
            r = xi_search(N)
            oracle = xi_bruteforce(N, thr)
            ok &= r.size == want == oracle and r.exact
            notes.append(f"N={N}: {r.size} (oracle {oracle}, exact={r.exact})")
        return ok, "; ".join(notes)
    return _timed("xi", "xi search ground truth", 60, body)


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "bipartite": check_bipartite,
    "equilateral": check_equilateral,
    "mst-ph0": check_mst_ph0,
    "stability": check_stability,
    "rips-linear": check_rips_linear,
    "sierpinski": check_sierpinski,
    "arcs": check_arcs,
    "tp": check_tp,
    "tail": check_tail,
    "xi": check_xi,
}


def run_suite(filter_: str | None = None, echo=print) -> list[CheckResult]:
    keys = [k for k in CHECKS if not filter_ or filter_ in k]
    out = []
    for k in keys:
        r = CHECKS[k]()
        if echo:
            echo(r.line())
        out.append(r)
    return out
