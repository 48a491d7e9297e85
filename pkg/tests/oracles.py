"""Independent reference implementations used only by the tests.

None of these share code with the package: they are slow, direct
transcriptions of the definitions.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations

import numpy as np


def gf2_rank(M) -> int:
    M = (np.asarray(M, dtype=np.int64) % 2).astype(np.uint8).copy()
    if M.size == 0:
        return 0
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


def gf2_nullspace(M) -> np.ndarray:
    """Columns spanning the kernel of M over Z/2."""
    M = (np.asarray(M, dtype=np.int64) % 2).astype(np.uint8).copy()
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.uint8)
        v[f] = 1
        for k, p in enumerate(pivots):
            v[p] = M[k, f]
        basis.append(v)
    return np.array(basis, dtype=np.uint8).T.reshape(cols, len(basis))


class SimplicialOracle:
    """Persistent Betti numbers of a filtered complex from explicit boundary matrices."""

    def __init__(self, values: dict):
        self.values = {tuple(sorted(s)): float(v) for s, v in values.items()}
        self.by_dim = {}
        for s in sorted(self.values, key=lambda s: (len(s), s)):
            self.by_dim.setdefault(len(s) - 1, []).append(s)

    def _boundary(self, d):
        lo = self.by_dim.get(d - 1, [])
        hi = self.by_dim.get(d, [])
        idx = {s: k for k, s in enumerate(lo)}
        B = np.zeros((len(lo), len(hi)), dtype=np.uint8)
        for j, s in enumerate(hi):
            for f in combinations(s, d):
                B[idx[f], j] = 1
        return B

    def persistent_betti(self, i: int, a: float, b: float, reduced: bool = True) -> int:
        """rank of H_i(K_a) -> H_i(K_b) for a <= b."""
        cells = self.by_dim.get(i, [])
        in_a = np.array([self.values[s] <= a for s in cells], dtype=bool)
        if not in_a.any():
            return 0
        if i == 0:
            Bi = np.ones((1, len(cells)), dtype=np.uint8) if reduced else np.zeros((0, len(cells)))
        else:
            Bi = self._boundary(i)
        Z = gf2_nullspace(Bi[:, in_a]) if Bi.shape[0] else np.eye(int(in_a.sum()), dtype=np.uint8)
        Za = np.zeros((len(cells), Z.shape[1]), dtype=np.uint8)
        Za[in_a] = Z
        up = self.by_dim.get(i + 1, [])
        in_b = np.array([self.values[s] <= b for s in up], dtype=bool)
        Bb = self._boundary(i + 1)[:, in_b] if len(up) else np.zeros((len(cells), 0), dtype=np.uint8)
        dz = Za.shape[1]
        rb = gf2_rank(Bb) if Bb.size else 0
        both = gf2_rank(np.hstack([Za, Bb])) if Bb.size else dz
        inter = dz + rb - both
        return dz - inter


def barcode_persistent_betti(iv: np.ndarray, a: float, b: float) -> int:
    """Intervals [birth, death) containing [a, b]."""
    if len(iv) == 0:
        return 0
    return int(np.sum((iv[:, 0] <= a) & (iv[:, 1] > b)))


def brute_meb_radius(P) -> float:
    """Smallest ball through 1, 2 or 3 support points that contains everything (planar or 3-D)."""
    P = np.asarray(P, dtype=float)
    best = math.inf
    n = len(P)
    if n == 1:
        return 0.0
    cands = []
    for i, j in combinations(range(n), 2):
        cands.append(((P[i] + P[j]) / 2, np.linalg.norm(P[i] - P[j]) / 2))
    for i, j, k in combinations(range(n), 3):
        a, b, c = P[i], P[j], P[k]
        u, v = b - a, c - a
        uu, vv, uv = u @ u, v @ v, u @ v
        det = 2 * (uu * vv - uv * uv)
        if abs(det) < 1e-14:
            continue
        s = (vv * (uu - uv)) / det
        t = (uu * (vv - uv)) / det
        ctr = a + s * u + t * v
        cands.append((ctr, np.linalg.norm(ctr - a)))
    if P.shape[1] >= 3:
        for q in combinations(range(n), 4):
            A = 2 * (P[list(q[1:])] - P[q[0]])
            rhs = (P[list(q[1:])] ** 2).sum(1) - (P[q[0]] ** 2).sum()
            if abs(np.linalg.det(A[:, :3])) < 1e-12 or P.shape[1] != 3:
                continue
            ctr = np.linalg.solve(A, rhs)
            cands.append((ctr, np.linalg.norm(ctr - P[q[0]])))
    for ctr, r in cands:
        if np.all(np.linalg.norm(P - ctr, axis=1) <= r * (1 + 1e-9) + 1e-12):
            best = min(best, r)
    return float(best)


def prim_total(D) -> float:
    D = np.asarray(D, dtype=float)
    n = len(D)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = D[0].copy()
    total = 0.0
    for _ in range(n - 1):
        j = int(np.argmin(np.where(in_tree, np.inf, best)))
        total += best[j]
        in_tree[j] = True
        best = np.minimum(best, D[j])
    return total


def bottleneck_bruteforce(A, B) -> float:
    """Min over all full matchings with diagonal copies of the max cost."""
    A = [tuple(x) for x in A]
    B = [tuple(x) for x in B]
    k, l = len(A), len(B)
    n = k + l
    if n == 0:
        return 0.0
    C = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i < k and j < l:
                C[i, j] = max(abs(A[i][0] - B[j][0]), abs(A[i][1] - B[j][1]))
            elif i < k:
                C[i, j] = (A[i][1] - A[i][0]) / 2
            elif j < l:
                C[i, j] = (B[j][1] - B[j][0]) / 2
            else:
                C[i, j] = 0.0
    return float(min(max(C[i, p[i]] for i in range(n)) for p in permutations(range(n))))


def circumcircle(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    return np.array([ux, uy]), math.hypot(ax - ux, ay - uy)
