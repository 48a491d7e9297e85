"""Barcodes over Z/2, bottleneck distance, and link-filtration PH_0 counts."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .filtration import Filtration, rips_filtration
from .metric import FiniteMetricSpace, PointCloud, distance_matrix

INF = math.inf


@dataclass(frozen=True, eq=False)
class Barcode:
    """Multiset of (degree, birth, death) intervals; death is ``inf`` for essential classes."""

    dims: np.ndarray
    births: np.ndarray
    deaths: np.ndarray
    reduced: bool = True
    kind: str = "custom"
    max_dim: int = field(default=-1)

    def __post_init__(self):
        for name in ("dims", "births", "deaths"):
            arr = np.asarray(getattr(self, name), dtype=np.int64 if name == "dims" else np.float64)
            arr = arr.reshape(-1)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (len(self.dims) == len(self.births) == len(self.deaths)):
            raise ValueError("interval arrays differ in length")
        if np.any(self.deaths < self.births):
            raise ValueError("death precedes birth")

    @classmethod
    def from_intervals(cls, intervals, reduced=True, kind="custom") -> "Barcode":
        rows = [(int(i), float(b), INF if d is None else float(d)) for i, b, d in intervals]
        if not rows:
            return cls(np.empty(0), np.empty(0), np.empty(0), reduced, kind)
        i, b, d = zip(*rows)
        return cls(np.array(i), np.array(b), np.array(d), reduced, kind)

    def __len__(self) -> int:
        return len(self.dims)

    def degree(self, i: int) -> np.ndarray:
        """(k, 2) array of (birth, death) in degree ``i``, sorted by (birth, death)."""
        m = self.dims == i
        out = np.column_stack([self.births[m], self.deaths[m]])
        return out[np.lexsort((out[:, 1], out[:, 0]))] if len(out) else out.reshape(0, 2)

    def finite(self, i: int) -> np.ndarray:
        iv = self.degree(i)
        return iv[np.isfinite(iv[:, 1])]

    def essential(self, i: int) -> np.ndarray:
        iv = self.degree(i)
        return iv[~np.isfinite(iv[:, 1]), 0]

    def lengths(self, i: int) -> np.ndarray:
        iv = self.finite(i)
        return iv[:, 1] - iv[:, 0]

    def count(self, i: int, include_infinite: bool = True) -> int:
        m = self.dims == i
        if not include_infinite:
            m &= np.isfinite(self.deaths)
        return int(m.sum())

    def betti(self, i: int, eps: float) -> int:
        """Number of degree-i intervals [b, d) containing ``eps``."""
        m = (self.dims == i) & (self.births <= eps) & (eps < self.deaths)
        return int(m.sum())

    def dyadic_buckets(self, i: int) -> dict[int, int]:
        """|J_{i,k}|: finite intervals with 2^-(k+1) < length <= 2^-k, keyed by k."""
        ln = self.lengths(i)
        ln = ln[ln > 0]
        if not len(ln):
            return {}
        k = np.floor(-np.log2(ln)).astype(np.int64)
        # exact powers of two belong to the bucket they bound from above
        k = np.where(2.0 ** -k.astype(float) < ln, k - 1, k)
        k = np.where(2.0 ** -(k + 1).astype(float) >= ln, k + 1, k)
        keys, counts = np.unique(k, return_counts=True)
        return {int(a): int(c) for a, c in zip(keys, counts)}

    def to_records(self) -> list[dict]:
        order = np.lexsort((self.deaths, self.births, self.dims))
        return [{"dim": int(self.dims[k]), "birth": float(self.births[k]),
                 "death": None if not np.isfinite(self.deaths[k]) else float(self.deaths[k])}
                for k in order]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_json(cls, text: str, reduced=True, kind="custom") -> "Barcode":
        recs = json.loads(text)
        return cls.from_intervals([(r["dim"], r["birth"], r["death"]) for r in recs], reduced, kind)

    def to_csv(self) -> str:
        lines = ["dim,birth,death"]
        for r in self.to_records():
            d = "inf" if r["death"] is None else repr(r["death"])
            lines.append(f"{r['dim']},{r['birth']!r},{d}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, reduced=True, kind="custom") -> "Barcode":
        rows = []
        for line in text.strip().splitlines()[1:]:
            i, b, d = line.split(",")
            rows.append((int(i), float(b), INF if d.strip() == "inf" else float(d)))
        return cls.from_intervals(rows, reduced, kind)


def persistent_homology(f: Filtration, reduced: bool = True, keep_ephemeral: bool = False,
                        max_degree: int | None = None, algorithm: str = "cohomology",
                        check: bool = True) -> Barcode:
    """Barcode of a filtration in degrees 0 .. max_dim-1 (Z/2 coefficients).

    Degree 0 uses an elder-rule union-find. Higher degrees reduce the coboundary
    matrix with clearing (``algorithm="cohomology"``, the compiled hot path) or
    the boundary matrix with the twist optimization (``algorithm="homology"``);
    both yield the same pairs. Classes alive at the top of a truncated
    filtration get infinite death. ``reduced`` drops the class of the first
    vertex, so k connected points give k-1 finite degree-0 intervals.
    """
    if check:
        f.check()
    if algorithm not in ("cohomology", "homology"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    top = f.max_dim - 1 if max_degree is None else min(max_degree, f.max_dim - 1)
    if algorithm == "homology":
        raw = _homology_twist(f, reduced, top)
    else:
        raw = _cohomology(f, reduced, top)
    dims, births, deaths = raw
    if not keep_ephemeral and len(dims):
        keep = deaths > births
        dims, births, deaths = dims[keep], births[keep], deaths[keep]
    return Barcode(dims, births, deaths, reduced, f.kind, f.max_dim)


def _degree0(f: Filtration, reduced: bool):
    n0 = f.count(0)
    v0 = f.values[0]
    if f.max_dim >= 1 and f.count(1):
        edge_ranks = f.facet_ranks(1)
    else:
        edge_ranks = np.empty((0, 2), dtype=np.int32)
    dying, killing, essential = kernels.union_find_pairs(n0, edge_ranks)
    if reduced and len(essential):
        essential = essential[essential != 0]
    births = np.concatenate([v0[dying], v0[essential]])
    deaths = np.concatenate([f.values[1][killing] if len(killing) else np.empty(0),
                             np.full(len(essential), INF)])
    negative = np.zeros(f.count(1), dtype=np.uint8)
    negative[killing] = 1
    return births, deaths, negative


def _cohomology(f: Filtration, reduced: bool, top: int):
    dims, births, deaths = [], [], []
    if top < 0:
        return np.empty(0, np.int64), np.empty(0), np.empty(0)
    b, d, cleared = _degree0(f, reduced)
    dims.append(np.zeros(len(b), np.int64))
    births.append(b)
    deaths.append(d)
    for deg in range(1, top + 1):
        n_lo = f.count(deg)
        if f.count(deg + 1):
            fac = f.facet_ranks(deg + 1)
        else:
            fac = np.empty((0, deg + 2), dtype=np.int32)
        lo, hi, ess = kernels.cohomology_pairs(n_lo, fac, cleared)
        vlo = f.values[deg]
        dims.append(np.full(len(lo) + len(ess), deg, np.int64))
        births.append(np.concatenate([vlo[lo], vlo[ess]]))
        deaths.append(np.concatenate([f.values[deg + 1][hi] if len(hi) else np.empty(0),
                                      np.full(len(ess), INF)]))
        cleared = np.zeros(f.count(deg + 1), dtype=np.uint8)
        cleared[hi] = 1
    return np.concatenate(dims), np.concatenate(births), np.concatenate(deaths)


def _homology_twist(f: Filtration, reduced: bool, top: int):
    """Boundary-matrix reduction over Z/2, highest dimension first, with clearing.

    Reduced homology treats the empty simplex as the boundary of every vertex,
    so the first vertex is negative and contributes no class.
    """
    dims, births, deaths = [], [], []
    if top < 0:
        return np.empty(0, np.int64), np.empty(0), np.empty(0)
    cleared: set = set()
    for d in range(top + 1, -1, -1):
        zero_cols = []
        next_cleared = set()
        if d == 0:
            first = True
            for r in range(f.count(0)):
                if r in cleared:
                    continue
                if reduced and first:
                    first = False
                    continue
                zero_cols.append(r)
        else:
            fac = f.facet_ranks(d)
            owner: dict[int, set] = {}
            for r in range(f.count(d)):
                if r in cleared:
                    continue
                col = set(int(x) for x in fac[r])
                while col:
                    p = max(col)
                    if p not in owner:
                        break
                    col ^= owner[p]
                if not col:
                    zero_cols.append(r)
                    continue
                p = max(col)
                owner[p] = col
                next_cleared.add(p)
                if d - 1 <= top:
                    dims.append(d - 1)
                    births.append(f.values[d - 1][p])
                    deaths.append(f.values[d][r])
        if d <= top:
            for r in zero_cols:
                dims.append(d)
                births.append(f.values[d][r])
                deaths.append(INF)
        cleared = next_cleared
    return (np.array(dims, dtype=np.int64), np.array(births, dtype=np.float64),
            np.array(deaths, dtype=np.float64))


# --- bottleneck distance ------------------------------------------------------

def _hopcroft_karp(adj: list[list[int]], n_right: int) -> int:
    """Maximum bipartite matching size; ``adj[u]`` lists right vertices of left vertex u."""
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left
    unmatched_dist = math.inf

    def bfs() -> bool:
        nonlocal unmatched_dist
        q = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = math.inf
        unmatched_dist = math.inf
        while q:
            u = q.popleft()
            if dist[u] >= unmatched_dist:
                continue
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    if unmatched_dist == math.inf:
                        unmatched_dist = dist[u] + 1
                elif dist[w] == math.inf:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return unmatched_dist != math.inf

    def dfs(u) -> bool:
        # iterative augmenting-path search along the BFS layering
        stack = [(u, iter(adj[u]))]
        path = []
        while stack:
            node, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w == -1:
                    if dist[node] + 1 == unmatched_dist:
                        path.append((node, v))
                        for a, b in path:
                            match_l[a] = b
                            match_r[b] = a
                        return True
                elif dist[w] == dist[node] + 1:
                    path.append((node, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[node] = math.inf
                stack.pop()
                if path:
                    path.pop()
        return False

    size = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size


def _intervals(x, i):
    if isinstance(x, Barcode):
        return x.degree(i)
    arr = np.asarray(x, dtype=np.float64).reshape(-1, 2)
    return arr


def bottleneck_distance(a, b, i: int = 0) -> float:
    """Exact bottleneck distance between the degree-``i`` parts of two barcodes.

    Intervals may be matched to the diagonal. Essential intervals must match
    essential intervals; differing counts give ``inf``. The value is found by
    binary search over the finite candidate set with a Hopcroft–Karp
    perfect-matching test at each candidate.
    """
    A = _intervals(a, i)
    B = _intervals(b, i)
    fa = np.isfinite(A[:, 1])
    fb = np.isfinite(B[:, 1])
    ea = np.sort(A[~fa, 0])
    eb = np.sort(B[~fb, 0])
    if len(ea) != len(eb):
        return INF
    ess = float(np.max(np.abs(ea - eb))) if len(ea) else 0.0
    A = A[fa]
    B = B[fb]
    A = A[A[:, 1] > A[:, 0]]
    B = B[B[:, 1] > B[:, 0]]
    na, nb = len(A), len(B)
    if na == 0 and nb == 0:
        return ess
    half_a = 0.5 * (A[:, 1] - A[:, 0])
    half_b = 0.5 * (B[:, 1] - B[:, 0])
    if na and nb:
        cross = np.maximum(np.abs(A[:, None, 0] - B[None, :, 0]), np.abs(A[:, None, 1] - B[None, :, 1]))
    else:
        cross = np.empty((na, nb))
    cands = np.unique(np.concatenate([cross.ravel(), half_a, half_b, [0.0]]))

    # left: A points then diagonal copies of B; right: B points then diagonal copies of A
    def feasible(r: float) -> bool:
        adj = []
        for u in range(na):
            row = list(np.flatnonzero(cross[u] <= r)) if nb else []
            if half_a[u] <= r:
                row.append(nb + u)
            adj.append(row)
        diag_right = list(range(nb, nb + na))
        for v in range(nb):
            row = [v] if half_b[v] <= r else []
            adj.append(row + diag_right)
        return _hopcroft_karp(adj, nb + na) == na + nb

    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return max(float(cands[lo]), ess)


# --- link filtration ----------------------------------------------------------

def link_filtration_ph0(fms: FiniteMetricSpace, v: int) -> np.ndarray:
    """Finite reduced PH_0 intervals of the link filtration of vertex ``v`` in the Rips filtration.

    Vertex w enters the link at d(v, w); edge (w, u) at max(d(v,w), d(v,u), d(w,u)).
    """
    if isinstance(fms, PointCloud):
        fms = distance_matrix(fms)
    n = fms.n
    if not 0 <= v < n:
        raise IndexError(f"vertex {v} out of range")
    D = fms.dist
    others = np.array([w for w in range(n) if w != v], dtype=np.int64)
    if len(others) == 0:
        return np.empty((0, 2))
    vval = D[v, others]
    vorder = np.lexsort((others, vval))
    rank = np.empty(len(others), dtype=np.int64)
    rank[vorder] = np.arange(len(others))
    i, j = np.triu_indices(len(others), 1)
    ev = np.maximum(np.maximum(vval[i], vval[j]), D[others[i], others[j]])
    ri, rj = rank[i], rank[j]
    lo = np.minimum(ri, rj)
    hi = np.maximum(ri, rj)
    eorder = np.lexsort((hi, lo, ev))
    edges = np.column_stack([lo[eorder], hi[eorder]])
    dying, killing, _ = kernels.union_find_pairs(len(others), edges)
    births = vval[vorder][dying]
    deaths = ev[eorder][killing]
    return np.column_stack([births, deaths])


def link_ph0_count(fms, v: int) -> int:
    """Number of positive-length finite reduced PH_0 intervals of the link filtration of ``v``."""
    iv = link_filtration_ph0(fms, v)
    return int(np.sum(iv[:, 1] > iv[:, 0]))


def barcode(x, complex_kind: str = "rips", max_dim: int = 2, **kw) -> Barcode:
    """Convenience: build the named filtration and compute its barcode."""
    from .filtration import alpha_filtration_2d, cech_filtration
    if complex_kind == "rips":
        f = rips_filtration(x, max_dim=max_dim, **kw)
    elif complex_kind == "cech":
        f = cech_filtration(x, max_dim=max_dim, **kw)
    elif complex_kind in ("alpha2d", "alpha"):
        f = alpha_filtration_2d(x, allow_collinear=kw.get("allow_collinear", False))
    else:
        raise ValueError(f"unknown complex kind {complex_kind!r}")
    return persistent_homology(f)
