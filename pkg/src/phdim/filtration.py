"""Rips, Čech and planar alpha filtrations stored as explicit sorted simplex lists.

A :class:`Filtration` keeps one array per dimension. Row ``r`` of
``simplices[d]`` is the d-simplex of rank ``r``: rows are ordered by
(value, lexicographic vertex tuple), and the global order over all dimensions
is (value, dim, vertices). Persistence works in per-dimension ranks.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .metric import PointCloud, distance_matrix
from .rng import SplitMix64

DEFAULT_BUDGET = 50_000_000
_CHUNK = 1_000_000


class FiltrationError(ValueError):
    """Structurally invalid filtration (missing faces, non-monotone values, bad order)."""


class BudgetExceeded(RuntimeError):
    """Simplex count would exceed the configured budget."""


@dataclass(frozen=True, eq=False)
class Filtration:
    simplices: tuple
    values: tuple
    kind: str = "custom"
    n_vertices: int = 0
    _facets: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def max_dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, d: int) -> int:
        return len(self.values[d]) if 0 <= d <= self.max_dim else 0

    def __len__(self) -> int:
        return sum(len(v) for v in self.values)

    def __iter__(self):
        """Yield ``(vertices, value, dim)`` in the global filtration order."""
        if len(self) == 0:
            return
        width = self.max_dim + 1
        verts = np.full((len(self), width), -1, dtype=np.int64)
        vals = np.concatenate(self.values)
        dims = np.concatenate([np.full(len(v), d) for d, v in enumerate(self.values)])
        row = 0
        for d, s in enumerate(self.simplices):
            verts[row:row + len(s), : d + 1] = s
            row += len(s)
        keys = [verts[:, c] for c in range(width - 1, -1, -1)] + [dims, vals]
        for k in np.lexsort(keys):
            d = int(dims[k])
            yield tuple(int(v) for v in verts[k, : d + 1]), float(vals[k]), d

    def facet_ranks(self, d: int) -> np.ndarray:
        """(N_d, d+1) int32 ranks, in dimension d-1, of the facets of each d-simplex.

        Column ``c`` holds the facet obtained by dropping vertex ``c``.
        """
        if d < 1 or d > self.max_dim:
            raise ValueError(f"no facets for dimension {d}")
        if d in self._facets:
            return self._facets[d]
        lo = self.simplices[d - 1]
        hi = self.simplices[d]
        n = max(self.n_vertices, 1)
        out = np.empty((len(hi), d + 1), dtype=np.int32)
        if n ** d < 2**62:
            weights = n ** np.arange(d - 1, -1, -1, dtype=np.int64)
            lo_keys = lo.astype(np.int64) @ weights
            order = np.argsort(lo_keys, kind="stable")
            sorted_keys = lo_keys[order]
            for start in range(0, len(hi), _CHUNK):
                block = hi[start:start + _CHUNK].astype(np.int64)
                for c in range(d + 1):
                    face = np.delete(block, c, axis=1)
                    keys = face @ weights
                    pos = np.searchsorted(sorted_keys, keys)
                    pos_c = np.minimum(pos, len(sorted_keys) - 1)
                    if len(sorted_keys) == 0 or np.any(sorted_keys[pos_c] != keys):
                        raise FiltrationError(f"a facet of a {d}-simplex is missing")
                    out[start:start + len(block), c] = order[pos_c]
        else:
            index = {tuple(r): k for k, r in enumerate(lo.tolist())}
            for r, row in enumerate(hi.tolist()):
                for c in range(d + 1):
                    face = tuple(row[:c] + row[c + 1:])
                    if face not in index:
                        raise FiltrationError(f"facet {face} of {tuple(row)} is missing")
                    out[r, c] = index[face]
        self._facets[d] = out
        return out

    def check(self) -> None:
        """Raise FiltrationError unless the filtration is a valid, sorted, monotone complex."""
        for d, (s, v) in enumerate(zip(self.simplices, self.values)):
            if s.ndim != 2 or s.shape[1] != d + 1 or len(s) != len(v):
                raise FiltrationError(f"malformed arrays in dimension {d}")
            if len(s) == 0:
                continue
            if d > 0 and np.any(np.diff(s, axis=1) <= 0):
                raise FiltrationError(f"vertex tuples in dimension {d} must be strictly increasing")
            if s.min() < 0 or s.max() >= self.n_vertices:
                raise FiltrationError("vertex index out of range")
            if np.any(~np.isfinite(v)) or np.any(v < 0):
                raise FiltrationError("filtration values must be finite and nonnegative")
            dv = np.diff(v)
            if np.any(dv < 0):
                raise FiltrationError(f"dimension {d} is not sorted by value")
            ties = np.flatnonzero(dv == 0)
            if len(ties):
                a = s[ties]
                b = s[ties + 1]
                first = np.argmax(a != b, axis=1)
                rows = np.arange(len(ties))
                if np.any(a[rows, first] >= b[rows, first]):
                    raise FiltrationError(f"dimension {d} ties are not in lexicographic order")
            if d > 0:
                fr = self.facet_ranks(d)
                if np.any(self.values[d - 1][fr].max(axis=1) > v):
                    raise FiltrationError(f"a {d}-simplex enters before one of its faces")
        if self.max_dim >= 0 and self.count(0) != self.n_vertices:
            raise FiltrationError("every vertex must appear exactly once")
        if self.max_dim >= 0 and np.any(np.sort(self.simplices[0][:, 0]) != np.arange(self.n_vertices)):
            raise FiltrationError("every vertex must appear exactly once")

    @classmethod
    def from_simplices(cls, items, kind: str = "custom") -> "Filtration":
        """Build from an iterable of ``(vertex tuple, value)`` pairs in any order."""
        per_dim: dict[int, list] = {}
        n = 0
        for verts, value in items:
            t = tuple(sorted(int(v) for v in verts))
            if len(set(t)) != len(t):
                raise FiltrationError(f"repeated vertex in {verts}")
            per_dim.setdefault(len(t) - 1, []).append((t, float(value)))
            n = max(n, t[-1] + 1)
        if not per_dim:
            raise FiltrationError("empty filtration")
        top = max(per_dim)
        arrays = []
        for d in range(top + 1):
            rows = per_dim.get(d, [])
            s = np.array([r[0] for r in rows], dtype=np.int32).reshape(-1, d + 1)
            v = np.array([r[1] for r in rows], dtype=np.float64)
            arrays.append((s, v))
        return _assemble(kind, n, arrays, presorted=False)

    def to_text(self) -> str:
        buf = io.StringIO()
        for verts, value, d in self:
            buf.write(f"{value!r},{d},{' '.join(map(str, verts))}\n")
        return buf.getvalue()

    @classmethod
    def from_text(cls, text: str, kind: str = "custom") -> "Filtration":
        items = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            value, _dim, verts = line.split(",")
            items.append((tuple(int(v) for v in verts.split()), float(value)))
        return cls.from_simplices(items, kind=kind)


def _assemble(kind, n, arrays, presorted=True) -> Filtration:
    """Sort each dimension by (value, lex) and wrap. ``presorted`` means rows are already lex."""
    sims, vals = [], []
    for d, (s, v) in enumerate(arrays):
        s = np.ascontiguousarray(s, dtype=np.int32).reshape(-1, d + 1)
        v = np.ascontiguousarray(v, dtype=np.float64)
        if presorted:
            order = np.argsort(v, kind="stable")
        else:
            keys = [s[:, c] for c in range(d, -1, -1)] + [v]
            order = np.lexsort(keys)
        sims.append(s[order])
        vals.append(v[order])
    for s in sims:
        s.setflags(write=False)
    for v in vals:
        v.setflags(write=False)
    return Filtration(tuple(sims), tuple(vals), kind, int(n))


def _expand(prev: np.ndarray, n: int, start: int, stop: int):
    """Cofaces (row + [w]) with w beyond the row's last vertex, for rows[start:stop]."""
    rows = prev[start:stop]
    last = rows[:, -1].astype(np.int64)
    counts = n - 1 - last
    total = int(counts.sum())
    rep = np.repeat(np.arange(len(rows)), counts)
    # w runs last+1 .. n-1 within each row's block
    offsets = np.cumsum(counts) - counts
    w = np.arange(total) - np.repeat(offsets, counts) + np.repeat(last + 1, counts)
    return rep, w


def _check_budget(total, budget):
    if total > budget:
        raise BudgetExceeded(f"simplex count exceeds budget of {budget}")


def rips_filtration(fms, max_dim: int = 2, max_scale: float = math.inf,
                    budget: int = DEFAULT_BUDGET) -> Filtration:
    """Vietoris–Rips filtration: a simplex enters at its largest pairwise distance."""
    if isinstance(fms, PointCloud):
        fms = distance_matrix(fms)
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if not max_scale > 0:
        raise ValueError("max_scale must be positive")
    D = fms.dist
    n = fms.n
    total = n
    _check_budget(total, budget)
    arrays = [(np.arange(n, dtype=np.int32).reshape(-1, 1), np.zeros(n))]
    prev_s, prev_v = arrays[0]
    for d in range(1, max_dim + 1):
        out_s, out_v = [], []
        block = max(1, _CHUNK // max(n, 1))
        for start in range(0, len(prev_s), block):
            rep, w = _expand(prev_s, n, start, start + block)
            rows = prev_s[start:start + block][rep]
            val = prev_v[start:start + block][rep].copy()
            for c in range(d):
                np.maximum(val, D[rows[:, c], w], out=val)
            keep = val <= max_scale
            total += int(keep.sum())
            _check_budget(total, budget)
            out_s.append(np.column_stack([rows[keep], w[keep]]).astype(np.int32))
            out_v.append(val[keep])
        s = np.concatenate(out_s) if out_s else np.empty((0, d + 1), dtype=np.int32)
        v = np.concatenate(out_v) if out_v else np.empty(0)
        arrays.append((s.reshape(-1, d + 1), v))
        prev_s, prev_v = arrays[-1]
    return _assemble("rips", n, arrays)


def _ball_through(support: list) -> tuple[np.ndarray, float]:
    """Smallest ball with every support point on its boundary (circumball in their affine hull)."""
    p0 = support[0]
    if len(support) == 1:
        return p0.copy(), 0.0
    A = np.array([p - p0 for p in support[1:]])
    G = A @ A.T
    rhs = 0.5 * np.diag(G)
    lam = np.linalg.lstsq(G, rhs, rcond=None)[0]
    center = p0 + lam @ A
    radius = max(float(np.linalg.norm(p - center)) for p in support)
    return center, radius


def minimal_enclosing_ball(points) -> tuple[np.ndarray, float]:
    """Welzl's recursion over support sets; returns (center, radius)."""
    pts = [np.asarray(p, dtype=np.float64) for p in np.atleast_2d(np.asarray(points, dtype=np.float64))]
    if len(pts) == 0 or pts[0].size == 0:
        raise ValueError("minimal enclosing ball of an empty point set")
    dim = pts[0].size

    def welzl(k, support):
        if k == 0 or len(support) == dim + 1:
            if not support:
                return pts[0].copy(), -1.0
            return _ball_through(support)
        center, radius = welzl(k - 1, support)
        p = pts[k - 1]
        if radius >= 0 and np.linalg.norm(p - center) <= radius * (1 + 1e-12) + 1e-15:
            return center, radius
        return welzl(k - 1, support + [p])

    center, radius = welzl(len(pts), [])
    return center, max(radius, 0.0)


def minimal_enclosing_ball_radius(points) -> float:
    return minimal_enclosing_ball(points)[1]


def triangle_meb_radius(p0, p1, p2) -> np.ndarray:
    """Vectorized minimal-enclosing-ball radius of triangles given as (N, m) vertex arrays."""
    u = p1 - p0
    v = p2 - p0
    w = p2 - p1
    c2 = np.einsum("ij,ij->i", u, u)
    b2 = np.einsum("ij,ij->i", v, v)
    a2 = np.einsum("ij,ij->i", w, w)
    uv = np.einsum("ij,ij->i", u, v)
    longest = np.maximum(np.maximum(a2, b2), c2)
    nonacute = 2.0 * longest >= a2 + b2 + c2
    gram = c2 * b2 - uv * uv
    with np.errstate(divide="ignore", invalid="ignore"):
        circ = np.sqrt(a2 * b2 * c2 / (4.0 * gram))
    r = np.where(nonacute | ~(gram > 0), 0.5 * np.sqrt(longest), circ)
    return np.maximum(r, 0.5 * np.sqrt(longest))


def cech_filtration(pc: PointCloud, max_dim: int = 2, max_scale: float = math.inf,
                    budget: int = DEFAULT_BUDGET) -> Filtration:
    """Čech filtration: a simplex enters at the radius of its minimal enclosing ball."""
    if not 0 <= max_dim <= 3:
        raise ValueError("cech_filtration supports max_dim in [0, 3]")
    if not max_scale > 0:
        raise ValueError("max_scale must be positive")
    X = pc.points
    n = len(pc)
    total = n
    _check_budget(total, budget)
    arrays = [(np.arange(n, dtype=np.int32).reshape(-1, 1), np.zeros(n))]
    if max_dim >= 1:
        D = distance_matrix(pc).dist
        i, j = np.triu_indices(n, 1)
        val = 0.5 * D[i, j]
        keep = val <= max_scale
        total += int(keep.sum())
        _check_budget(total, budget)
        arrays.append((np.column_stack([i[keep], j[keep]]), val[keep]))
    for d in range(2, max_dim + 1):
        prev_s = arrays[-1][0].astype(np.int32)
        out_s, out_v = [], []
        block = max(1, _CHUNK // max(n, 1))
        for start in range(0, len(prev_s), block):
            rep, w = _expand(prev_s, n, start, start + block)
            rows = prev_s[start:start + block][rep]
            s = np.column_stack([rows, w]).astype(np.int32)
            # cheap prefilter: MEB radius is at least half the longest edge
            half = np.zeros(len(s))
            for a, b in combinations(range(d + 1), 2):
                np.maximum(half, 0.5 * D[s[:, a], s[:, b]], out=half)
            s = s[half <= max_scale]
            if d == 2:
                val = triangle_meb_radius(X[s[:, 0]], X[s[:, 1]], X[s[:, 2]])
            else:
                val = np.array([minimal_enclosing_ball_radius(X[row]) for row in s])
                for drop in range(4):
                    face = np.delete(s, drop, axis=1)
                    np.maximum(val, triangle_meb_radius(X[face[:, 0]], X[face[:, 1]], X[face[:, 2]]),
                               out=val)
            keep = val <= max_scale
            total += int(keep.sum())
            _check_budget(total, budget)
            out_s.append(s[keep])
            out_v.append(val[keep])
        s = np.concatenate(out_s) if out_s else np.empty((0, d + 1), dtype=np.int32)
        v = np.concatenate(out_v) if out_v else np.empty(0)
        arrays.append((s.reshape(-1, d + 1), v))
    return _assemble("cech", n, arrays)


# --- planar Delaunay triangulation (Bowyer–Watson with ghost triangles) -------

GHOST = -1
_EPS = 2.0**-53


def _orient(a, b, c) -> int:
    l = (b[0] - a[0]) * (c[1] - a[1])
    r = (b[1] - a[1]) * (c[0] - a[0])
    det = l - r
    bound = (3.0 + 16.0 * _EPS) * _EPS * (abs(l) + abs(r))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    ax, ay, bx, by, cx, cy = (Fraction(t) for t in (a[0], a[1], b[0], b[1], c[0], c[1]))
    exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (exact > 0) - (exact < 0)


def _incircle(a, b, c, d) -> int:
    """Positive iff d lies strictly inside the circle through CCW a, b, c."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    t1 = bdx * cdy - cdx * bdy
    t2 = cdx * ady - adx * cdy
    t3 = adx * bdy - bdx * ady
    det = alift * t1 + blift * t2 + clift * t3
    perm = (alift * (abs(bdx * cdy) + abs(cdx * bdy))
            + blift * (abs(cdx * ady) + abs(adx * cdy))
            + clift * (abs(adx * bdy) + abs(bdx * ady)))
    bound = (10.0 + 96.0 * _EPS) * _EPS * perm
    if det > bound:
        return 1
    if det < -bound:
        return -1
    F = Fraction
    adx, ady = F(a[0]) - F(d[0]), F(a[1]) - F(d[1])
    bdx, bdy = F(b[0]) - F(d[0]), F(b[1]) - F(d[1])
    cdx, cdy = F(c[0]) - F(d[0]), F(c[1]) - F(d[1])
    exact = ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
             + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
             + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))
    return (exact > 0) - (exact < 0)


class _Triangulation:
    def __init__(self, pts):
        self.p = pts
        self.tris: dict[int, tuple] = {}
        self.edge: dict[tuple, int] = {}
        self.next_id = 0
        self.last = None

    def add(self, a, b, c):
        t = self.next_id
        self.next_id += 1
        self.tris[t] = (a, b, c)
        self.edge[(a, b)] = t
        self.edge[(b, c)] = t
        self.edge[(c, a)] = t
        if c != GHOST:
            self.last = t
        return t

    def remove(self, t):
        a, b, c = self.tris.pop(t)
        for e in ((a, b), (b, c), (c, a)):
            if self.edge.get(e) == t:
                del self.edge[e]

    def contains(self, t, q) -> bool:
        a, b, c = self.tris[t]
        p = self.p
        if c == GHOST:
            o = _orient(p[a], p[b], q)
            if o != 0:
                return o > 0
            # collinear with the hull edge: inside iff strictly between a and b
            return ((p[a][0] - q[0]) * (p[b][0] - q[0]) + (p[a][1] - q[1]) * (p[b][1] - q[1])) < 0
        return _incircle(p[a], p[b], p[c], q) > 0

    def locate(self, q):
        p = self.p
        t = self.last
        for step in range(4 * len(self.tris) + 10):
            a, b, c = self.tris[t]
            if c == GHOST:
                return t
            edges = ((a, b), (b, c), (c, a))
            moved = False
            for k in range(3):
                u, v = edges[(k + step) % 3]
                if _orient(p[u], p[v], q) < 0:
                    t = self.edge[(v, u)]
                    moved = True
                    break
            if not moved:
                return t
        return t

    def insert(self, i):
        q = self.p[i]
        t0 = self.locate(q)
        if not self.contains(t0, q):
            t0 = next((t for t in self.tris if self.contains(t, q)), None)
            if t0 is None:
                raise ValueError(f"could not locate point {i}")
        cavity = {t0}
        stack = [t0]
        boundary = []
        rejected = set()
        while stack:
            t = stack.pop()
            a, b, c = self.tris[t]
            for u, v in ((a, b), (b, c), (c, a)):
                nb = self.edge[(v, u)]
                if nb in cavity:
                    continue
                if nb not in rejected and self.contains(nb, q):
                    cavity.add(nb)
                    stack.append(nb)
                else:
                    rejected.add(nb)
                    boundary.append((u, v))
        # an edge seen from both sides is interior to the cavity
        boundary = [(u, v) for u, v in boundary if self.edge.get((v, u)) not in cavity]
        for t in cavity:
            self.remove(t)
        for u, v in boundary:
            if u == GHOST:
                self.add(v, i, GHOST)
            elif v == GHOST:
                self.add(i, u, GHOST)
            else:
                self.add(u, v, i)


def delaunay_2d(pc: PointCloud) -> np.ndarray:
    """Delaunay triangles of a planar point set as sorted vertex triples, in lexicographic order.

    Cocircular ties resolve by treating points on a circumcircle as outside it, which
    keeps the incremental result valid and deterministic for the input order.
    """
    if pc.ambient_dim != 2:
        raise ValueError("delaunay_2d needs planar points")
    X = pc.points
    n = len(X)
    if n < 3:
        raise ValueError("delaunay_2d needs at least 3 points")
    if len(np.unique(X, axis=0)) != n:
        raise ValueError("duplicate points")
    pts = [(float(x), float(y)) for x, y in X]
    c = next((k for k in range(2, n) if _orient(pts[0], pts[1], pts[k]) != 0), None)
    if c is None:
        raise ValueError("all points are collinear")
    tri = _Triangulation(pts)
    a, b = 0, 1
    if _orient(pts[a], pts[b], pts[c]) < 0:
        a, b = b, a
    tri.add(a, b, c)
    tri.add(b, a, GHOST)
    tri.add(c, b, GHOST)
    tri.add(a, c, GHOST)
    for i in range(2, n):
        if i != c:
            tri.insert(i)
    out = np.array(sorted(tuple(sorted(t)) for t in tri.tris.values() if GHOST not in t),
                   dtype=np.int64)
    return out.reshape(-1, 3)


def circumradius_array(X, tris) -> np.ndarray:
    return _circumradius(X[tris[:, 0]], X[tris[:, 1]], X[tris[:, 2]])


def _circumradius(p0, p1, p2):
    # planar: R = |u||v||w| / (2 |u x v|), cross product with an exact fallback
    u = p1 - p0
    v = p2 - p0
    w = p2 - p1
    cross = np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
    for k in np.nonzero(cross == 0)[0]:
        a, b, c = (tuple(map(Fraction, q[k])) for q in (p0, p1, p2))
        cross[k] = abs(float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])))
    num = np.sqrt(np.einsum("ij,ij->i", u, u)) * np.sqrt(np.einsum("ij,ij->i", v, v)) \
        * np.sqrt(np.einsum("ij,ij->i", w, w))
    with np.errstate(divide="ignore"):
        return num / (2.0 * cross)


def jitter_points(pc: PointCloud, magnitude: float | None = None, seed: int = 0) -> PointCloud:
    """Deterministic perturbation; the default magnitude is 1e-9 times the bounding-box diameter."""
    X = pc.points
    if magnitude is None:
        diam = float(np.linalg.norm(X.max(axis=0) - X.min(axis=0))) or 1.0
        magnitude = 1e-9 * diam
    u = SplitMix64.stream(seed, "jitter").random(X.size).reshape(X.shape)
    return PointCloud(X + magnitude * (2.0 * u - 1.0))


def _all_collinear(X) -> bool:
    if len(X) < 3:
        return True
    pts = [(float(x), float(y)) for x, y in X]
    return all(_orient(pts[0], pts[1], p) == 0 for p in pts[2:])


def _path_filtration(X) -> Filtration:
    # Delaunay complex of collinear points: consecutive points along the line
    n = len(X)
    arrays = [(np.arange(n).reshape(-1, 1), np.zeros(n))]
    if n >= 2:
        d = X[-1] - X[0] if np.any(X[-1] != X[0]) else X[1] - X[0]
        order = np.lexsort((np.arange(n), X @ d))
        a, b = order[:-1], order[1:]
        e = np.sort(np.column_stack([a, b]), axis=1)
        arrays.append((e, 0.5 * np.linalg.norm(X[a] - X[b], axis=1)))
    return _assemble("alpha2d", n, arrays, presorted=False)


def alpha_filtration_2d(pc: PointCloud, jitter: float | None = None, seed: int = 0,
                        allow_collinear: bool = False) -> Filtration:
    """Alpha filtration of a planar point set.

    Triangle value: circumradius. Edge value: half its length if no opposite
    vertex lies strictly inside its diametral disk, otherwise the smallest value
    of an incident triangle. Duplicate points are separated by a deterministic
    jitter (``jitter`` overrides the default magnitude). Collinear input is
    an error unless ``allow_collinear`` is set, in which case the complex is
    the path through consecutive points.
    """
    if pc.ambient_dim != 2:
        raise ValueError("alpha_filtration_2d needs planar points")
    if len(pc) >= 2 and (jitter is not None or len(np.unique(pc.points, axis=0)) != len(pc)):
        pc = jitter_points(pc, jitter, seed)
    X = pc.points
    n = len(X)
    if allow_collinear and _all_collinear(X):
        return _path_filtration(X)
    tris = delaunay_2d(pc)
    tri_val = circumradius_array(X, tris)
    edge_val: dict[tuple, float] = {}
    attached_min: dict[tuple, float] = {}
    attached: set = set()
    for (a, b, c), r in zip(tris.tolist(), tri_val.tolist()):
        for u, v, opp in ((a, b, c), (a, c, b), (b, c, a)):
            e = (u, v)
            attached_min[e] = min(attached_min.get(e, math.inf), r)
            pu, pv, po = X[u], X[v], X[opp]
            if float(np.dot(pu - po, pv - po)) < 0:
                attached.add(e)
            else:
                edge_val.setdefault(e, 0.5 * float(np.linalg.norm(pu - pv)))
    edges = sorted(attached_min)
    ev = np.array([attached_min[e] if e in attached else edge_val[e] for e in edges])
    e_arr = np.array(edges, dtype=np.int64).reshape(-1, 2)
    lookup = {e: k for k, e in enumerate(edges)}
    # guard against rounding: a triangle never precedes its edges
    face_max = np.array([max(ev[lookup[(a, b)]], ev[lookup[(a, c)]], ev[lookup[(b, c)]])
                         for a, b, c in tris.tolist()]).reshape(-1)
    tv = np.maximum(tri_val, face_max) if len(tris) else tri_val
    arrays = [
        (np.arange(n).reshape(-1, 1), np.zeros(n)),
        (e_arr, ev),
        (tris, tv),
    ]
    return _assemble("alpha2d", n, arrays)
