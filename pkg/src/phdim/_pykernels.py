"""Pure-Python reduction kernels.

Mirror of the compiled ``_ckernels`` module, same signatures and outputs. Used
when the extension is not built or ``PHDIM_PURE_PYTHON=1`` is set.
"""

import numpy as np


def union_find_pairs(n_vertices, edges):
    """Elder-rule pairing of vertices and edges.

    ``edges`` is an (E, 2) array of vertex ranks, rows in filtration order.
    A smaller vertex rank is an older vertex. Returns ``(dying_vertex,
    killing_edge, essential_vertex)`` as int64 arrays.
    """
    parent = list(range(n_vertices))

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    dying = []
    killing = []
    for e, (u, v) in enumerate(np.asarray(edges).tolist()):
        ru = find(u)
        rv = find(v)
        if ru == rv:
            continue
        # roots are always the oldest vertex of their component
        if ru < rv:
            ru, rv = rv, ru
        parent[ru] = rv
        dying.append(ru)
        killing.append(e)
    essential = [v for v in range(n_vertices) if parent[v] == v]
    return (np.array(dying, dtype=np.int64), np.array(killing, dtype=np.int64),
            np.array(essential, dtype=np.int64))


def cohomology_pairs(n_lo, facets, cleared):
    """Reduce the coboundary matrix from dimension d to d+1 over Z/2.

    ``facets`` is an (n_hi, d+2) array giving, for each (d+1)-simplex in
    filtration order, the ranks of its d-dimensional facets. ``cleared`` marks
    d-simplices already known to be negative. Returns ``(lo, hi, essential)``.
    """
    facets = np.asarray(facets)
    cofaces = [[] for _ in range(n_lo)]
    for h, row in enumerate(facets.tolist()):
        for f in row:
            cofaces[f].append(h)
    cleared = np.asarray(cleared, dtype=bool).tolist()

    owner = {}
    reduced = {}
    pair_lo = []
    pair_hi = []
    essential = []
    for lo in range(n_lo - 1, -1, -1):
        if cleared[lo]:
            continue
        col = cofaces[lo]
        if col and col[0] not in owner:
            # common case: pivot unclaimed, no reduction needed
            owner[col[0]] = lo
            reduced[lo] = col
            pair_lo.append(lo)
            pair_hi.append(col[0])
            continue
        work = set(col)
        while work:
            pivot = min(work)
            other = owner.get(pivot)
            if other is None:
                break
            work.symmetric_difference_update(reduced[other])
        if not work:
            essential.append(lo)
            continue
        col = sorted(work)
        owner[col[0]] = lo
        reduced[lo] = col
        pair_lo.append(lo)
        pair_hi.append(col[0])
    return (np.array(pair_lo, dtype=np.int64), np.array(pair_hi, dtype=np.int64),
            np.array(sorted(essential), dtype=np.int64))
