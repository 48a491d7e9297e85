"""Triangle persistence, the TP_1/TP_2 closed forms, stable-class certificates and the xi search."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .filtration import BudgetExceeded, cech_filtration
from .metric import PointCloud
from .persistence import persistent_homology
from .rng import SplitMix64

ACUTE_TOL = 1e-12
CERT_MAX_POINTS = 60
XI_EXACT_MAX_N = 4


def _pts(*ps):
    return [np.asarray(p, dtype=float).reshape(-1) for p in ps]


def circumradius(p, q, r) -> float:
    """abc / (4A) with the area from the shoelace formula."""
    p, q, r = _pts(p, q, r)
    if len(p) != 2:
        raise ValueError("circumradius expects planar points")
    a = float(np.linalg.norm(q - r))
    b = float(np.linalg.norm(p - r))
    c = float(np.linalg.norm(p - q))
    area = 0.5 * abs((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]))
    if area <= ACUTE_TOL * max(a, b, c) ** 2:
        raise ValueError("points are collinear")
    return a * b * c / (4.0 * area)


def _is_acute(p, q, r) -> bool:
    for o, u, v in ((p, q, r), (q, p, r), (r, p, q)):
        du, dv = u - o, v - o
        if float(du @ dv) <= ACUTE_TOL * float(np.linalg.norm(du) * np.linalg.norm(dv)):
            return False
    return True


def triangle_persistence(p, q, r):
    """The single PH_1 interval (L/2, R) of an acute triangle, or None.

    L is the longest edge and R the circumradius. Right and obtuse
    triangles carry no PH_1 class.
    """
    p, q, r = _pts(p, q, r)
    if np.array_equal(p, q) or np.array_equal(p, r) or np.array_equal(q, r):
        raise ValueError("duplicate points")
    if not _is_acute(p, q, r):
        return None
    a = float(np.linalg.norm(q - r))
    b = float(np.linalg.norm(p - r))
    c = float(np.linalg.norm(p - q))
    if len(p) == 2:
        R = circumradius(p, q, r)
    else:
        u, v = q - p, r - p
        gram = float((u @ u) * (v @ v) - (u @ v) ** 2)
        R = a * b * c / (2.0 * math.sqrt(gram))
    return (0.5 * max(a, b, c), R)


def _check_x(x):
    if not x > 0:
        raise ValueError("x must be positive")


def tp1(x: float, y1: float, y2: float) -> float:
    _check_x(x)
    return math.sqrt((x * x + y1 * y1) * (x * x + y2 * y2)) / (2.0 * x) - (y1 - y2) / 2.0


def tp2(x: float, y1: float, y2: float) -> float:
    _check_x(x)
    return (math.sqrt((x * x + y1 * y1) * (x * x + y2 * y2)) / (2.0 * x)
            - math.sqrt(x * x + y1 * y1) / 2.0)


def tp1_corner(N: float, c: float) -> float:
    return c * c * N / (2.0 * (c * math.sqrt(N) + N))


def tp2_corner(N: float, c: float) -> float:
    return 0.5 * (c * c + N - math.sqrt(N * (c * c + N)))


@dataclass
class TPReport:
    N: float
    c: float
    grid_steps: int
    tp1_corner: float
    tp1_min: float
    tp1_argmin: tuple
    tp1_ok: bool
    tp2_corner: float
    tp2_min: float
    tp2_argmin: tuple
    tp2_ok: bool

    @property
    def ok(self) -> bool:
        return self.tp1_ok and self.tp2_ok


def _tp1_vec(x, y1, y2):
    return np.sqrt((x * x + y1 * y1) * (x * x + y2 * y2)) / (2.0 * x) - (y1 - y2) / 2.0


def _tp2_vec(x, y1, y2):
    return np.sqrt((x * x + y1 * y1) * (x * x + y2 * y2)) / (2.0 * x) - np.sqrt(x * x + y1 * y1) / 2.0


def verify_tp_minima(N: float, c: float, grid_steps: int = 32, tol: float = 1e-9) -> TPReport:
    """Grid-sample both constraint boxes and compare with the corner minima.

    TP_1: c*sqrt(N) <= y1 <= N, -N <= y2 <= -c*sqrt(N), and x runs from
    sqrt(-y1*y2) + c*sqrt(N) over a span of N (TP_1 increases in x there).
    TP_2: the same y ranges with c*sqrt(N) <= x <= N.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    if N < c * c:
        raise ValueError("constraints are infeasible: need N >= c^2")
    if grid_steps < 8:
        raise ValueError("grid_steps must be >= 8")
    s = c * math.sqrt(N)
    k = grid_steps + 1
    ys = np.linspace(s, N, k)
    y1, y2, t = np.meshgrid(ys, -ys, np.linspace(0.0, N, k), indexing="ij")
    x = np.sqrt(-y1 * y2) + s + t
    v1 = _tp1_vec(x, y1, y2)
    i1 = np.unravel_index(np.argmin(v1), v1.shape)
    # corner: y1 = N (last), y2 = -N (last of -ys), t = 0
    near1 = abs(i1[0] - (k - 1)) <= 1 and abs(i1[1] - (k - 1)) <= 1 and i1[2] <= 1
    c1 = tp1_corner(N, c)
    m1 = float(v1[i1])

    y1, y2, x = np.meshgrid(ys, -ys, np.linspace(s, N, k), indexing="ij")
    v2 = _tp2_vec(x, y1, y2)
    i2 = np.unravel_index(np.argmin(v2), v2.shape)
    near2 = i2[0] <= 1 and i2[1] <= 1 and abs(i2[2] - (k - 1)) <= 1
    c2 = tp2_corner(N, c)
    m2 = float(v2[i2])

    def point(arrs, idx):
        return tuple(float(a[idx]) for a in arrs)

    y1a, y2a, ta = np.meshgrid(ys, -ys, np.linspace(0.0, N, k), indexing="ij")
    arg1 = (float(np.sqrt(-y1a[i1] * y2a[i1]) + s + ta[i1]), float(y1a[i1]), float(y2a[i1]))
    arg2 = point((x, y1, y2), i2)
    return TPReport(N, c, grid_steps, c1, m1, arg1, m1 >= c1 - tol and near1,
                    c2, m2, arg2, m2 >= c2 - tol and near2)


@dataclass
class StableClassCertificate:
    lattice_points: np.ndarray
    interval: tuple
    size: float
    m: int

    def to_dict(self) -> dict:
        return {"lattice_points": self.lattice_points.astype(int).tolist(),
                "interval": list(self.interval), "size": self.size, "m": self.m}


def _longest_ph1(points) -> tuple | None:
    f = cech_filtration(PointCloud(points), max_dim=2)
    iv = persistent_homology(f).finite(1)
    if len(iv) == 0:
        return None
    k = int(np.argmax(iv[:, 1] - iv[:, 0]))
    return float(iv[k, 0]), float(iv[k, 1])


def stable_class_certificate(x, m: int | None = None):
    """Certify a stable PH_1 class when the longest Čech interval exceeds sqrt(m).

    The test is sufficient only: a missing certificate proves nothing.
    """
    pts = np.asarray(x.points if isinstance(x, PointCloud) else x, dtype=float)
    if pts.ndim != 2:
        raise ValueError("lattice points must be a 2-d array")
    m = pts.shape[1] if m is None else m
    if m not in (2, 3) or pts.shape[1] != m:
        raise ValueError("m must be 2 or 3 and match the coordinates")
    if not np.array_equal(pts, np.round(pts)):
        raise ValueError("points must be integer lattice points")
    if len(pts) > CERT_MAX_POINTS:
        raise BudgetExceeded(f"at most {CERT_MAX_POINTS} lattice points")
    if len(pts) < 3:
        return None
    best = _longest_ph1(pts)
    if best is None:
        return None
    L = best[1] - best[0]
    if L <= math.sqrt(m):
        return None
    return StableClassCertificate(pts, best, L - math.sqrt(m), m)


def perturbation_check(cert: StableClassCertificate, trials: int = 100, seed: int = 0):
    """Resample one point per unit cube; return (all held, smallest longest-interval length)."""
    rng = SplitMix64.stream(seed, "certificate")
    pts = cert.lattice_points
    worst = math.inf
    for _ in range(trials):
        y = pts + rng.random(pts.size).reshape(pts.shape) - 0.5
        iv = _longest_ph1(y)
        worst = min(worst, 0.0 if iv is None else iv[1] - iv[0])
    return worst >= cert.size, worst


@dataclass
class XiResult:
    size: int
    witness: np.ndarray
    exact: bool
    bad_triples: int = 0
    extra: dict = field(default_factory=dict)


def _grid(N: int, m: int) -> np.ndarray:
    g = np.array(np.meshgrid(*[np.arange(1, N + 1)] * m, indexing="ij"))
    return g.reshape(m, -1).T.astype(np.int64)


def _triples(n: int):
    """All index triples i < j < k, in lexicographic order, one block per i."""
    for i in range(n - 2):
        j, k = np.triu_indices(n - i - 1, 1)
        yield np.column_stack([np.full(len(j), i), j + i + 1, k + i + 1])


def _bad_triples(P: np.ndarray, threshold: float) -> np.ndarray:
    """Index triples forming an acute triangle whose persistence exceeds ``threshold``."""
    out = [np.empty((0, 3), dtype=np.int64)]
    for t in _triples(len(P)):
        a, b, c = P[t[:, 0]], P[t[:, 1]], P[t[:, 2]]
        ab, ac, bc = b - a, c - a, c - b
        # integer dot products decide acuteness exactly
        acute = ((ab * ac).sum(1) > 0) & ((-ab * bc).sum(1) > 0) & ((ac * bc).sum(1) > 0)
        t, ab, ac, bc = t[acute], ab[acute], ac[acute], bc[acute]
        la = (ab * ab).sum(1).astype(float)
        lb = (ac * ac).sum(1).astype(float)
        lc = (bc * bc).sum(1).astype(float)
        gram = la * lb - ((ab * ac).sum(1).astype(float)) ** 2
        R = np.sqrt(la * lb * lc / (4.0 * gram))
        pers = R - 0.5 * np.sqrt(np.maximum(np.maximum(la, lb), lc))
        out.append(t[pers > threshold])
    return np.concatenate(out).astype(np.int64)


def xi_search(N: int, m: int = 2, threshold: float | None = None, seed: int = 0,
              restarts: int = 20) -> XiResult:
    """Largest subset of [N]^m with no acute triple of persistence above ``threshold``.

    Exhaustive (exact) for N <= 4; seeded local search otherwise. Ties go to the
    lexicographically smallest witness in the exact branch.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if threshold is None:
        threshold = math.sqrt(m) + 1.0
    P = _grid(N, m)
    n = len(P)
    bad = _bad_triples(P, threshold)
    if N <= XI_EXACT_MAX_N:
        masks = [(1 << int(a)) | (1 << int(b)) | (1 << int(c)) for a, b, c in bad]
        for k in range(n, 0, -1):
            for combo in combinations(range(n), k):
                mask = sum(1 << i for i in combo)
                if all(mask & t != t for t in masks):
                    return XiResult(k, P[list(combo)], True, len(bad))
        return XiResult(0, P[:0], True, len(bad))
    return _xi_local(P, bad, seed, restarts)


def _xi_local(P, bad, seed, restarts) -> XiResult:
    n = len(P)
    rng = SplitMix64.stream(seed, "xi_search")
    incid = [[] for _ in range(n)]
    for k, t in enumerate(bad.tolist()):
        for v in t:
            incid[v].append(k)
    best = None
    for _ in range(max(restarts, 1)):
        alive = np.ones(n, dtype=bool)
        live = np.ones(len(bad), dtype=bool)
        load = np.array([len(x) for x in incid], dtype=np.int64)
        noise = rng.random(n)
        # drop the most conflicted point until no bad triple survives
        while live.any():
            v = int(np.argmax(np.where(alive, load + noise, -1.0)))
            alive[v] = False
            for k in incid[v]:
                if live[k]:
                    live[k] = False
                    for w in bad[k]:
                        load[w] -= 1
        # re-add points that close no bad triple
        for v in np.argsort(rng.random(n)).tolist():
            if not alive[v] and all(alive[bad[k]].sum() < 2 for k in incid[v]):
                alive[v] = True
        if best is None or alive.sum() > best.sum():
            best = alive.copy()
    return XiResult(int(best.sum()), P[best], False, len(bad))
