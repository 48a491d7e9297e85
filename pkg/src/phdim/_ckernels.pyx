# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled reduction kernels. See ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector
from libc.stdint cimport int32_t, int64_t

cnp.import_array()


cdef inline int64_t _find(int64_t* parent, int64_t a) noexcept nogil:
    cdef int64_t root = a
    cdef int64_t nxt
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


def union_find_pairs(Py_ssize_t n_vertices, edges):
    cdef int64_t[:, ::1] e = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
    cdef Py_ssize_t n_edges = e.shape[0]
    parent_arr = np.arange(n_vertices, dtype=np.int64)
    cdef int64_t[::1] parent = parent_arr
    dying_arr = np.empty(max(n_vertices - 1, 0), dtype=np.int64)
    killing_arr = np.empty(max(n_vertices - 1, 0), dtype=np.int64)
    cdef int64_t[::1] dying = dying_arr
    cdef int64_t[::1] killing = killing_arr
    cdef Py_ssize_t k = 0, i
    cdef int64_t ru, rv, tmp
    with nogil:
        for i in range(n_edges):
            ru = _find(&parent[0], e[i, 0])
            rv = _find(&parent[0], e[i, 1])
            if ru == rv:
                continue
            if ru < rv:
                tmp = ru
                ru = rv
                rv = tmp
            parent[ru] = rv
            dying[k] = ru
            killing[k] = i
            k += 1
    essential = np.flatnonzero(parent_arr == np.arange(n_vertices)).astype(np.int64)
    return dying_arr[:k].copy(), killing_arr[:k].copy(), essential


cdef void _xor_sorted(vector[int32_t]& a, int32_t* b, Py_ssize_t nb,
                      vector[int32_t]& out) noexcept nogil:
    # symmetric difference of two ascending runs
    out.clear()
    cdef Py_ssize_t i = 0, j = 0, na = a.size()
    while i < na and j < nb:
        if a[i] < b[j]:
            out.push_back(a[i])
            i += 1
        elif a[i] > b[j]:
            out.push_back(b[j])
            j += 1
        else:
            i += 1
            j += 1
    while i < na:
        out.push_back(a[i])
        i += 1
    while j < nb:
        out.push_back(b[j])
        j += 1


def cohomology_pairs(Py_ssize_t n_lo, facets, cleared):
    cdef int32_t[:, ::1] fac = np.ascontiguousarray(facets, dtype=np.int32)
    cdef cnp.uint8_t[::1] clr = np.ascontiguousarray(cleared, dtype=np.uint8)
    cdef Py_ssize_t n_hi = fac.shape[0]
    cdef Py_ssize_t width = fac.shape[1] if fac.ndim == 2 else 0
    if n_hi == 0:
        width = 0

    # CSR coboundary: rows ascending by construction
    start_arr = np.zeros(n_lo + 1, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    cdef Py_ssize_t h, c, lo
    for h in range(n_hi):
        for c in range(width):
            start[fac[h, c] + 1] += 1
    for lo in range(n_lo):
        start[lo + 1] += start[lo]
    entries_arr = np.empty(start[n_lo], dtype=np.int32)
    cdef int32_t[::1] entries = entries_arr
    fill_arr = start_arr[:-1].copy()
    cdef int64_t[::1] fill = fill_arr
    with nogil:
        for h in range(n_hi):
            for c in range(width):
                lo = fac[h, c]
                entries[fill[lo]] = <int32_t>h
                fill[lo] += 1

    owner_arr = np.full(max(n_hi, 1), -1, dtype=np.int64)
    cdef int64_t[::1] owner = owner_arr
    red_start_arr = np.zeros(max(n_lo, 1), dtype=np.int64)
    red_len_arr = np.zeros(max(n_lo, 1), dtype=np.int64)
    cdef int64_t[::1] red_start = red_start_arr
    cdef int64_t[::1] red_len = red_len_arr
    pair_lo_arr = np.empty(max(n_lo, 1), dtype=np.int64)
    pair_hi_arr = np.empty(max(n_lo, 1), dtype=np.int64)
    ess_arr = np.empty(max(n_lo, 1), dtype=np.int64)
    cdef int64_t[::1] pair_lo = pair_lo_arr
    cdef int64_t[::1] pair_hi = pair_hi_arr
    cdef int64_t[::1] ess = ess_arr
    cdef Py_ssize_t n_pairs = 0, n_ess = 0
    cdef vector[int32_t] store
    cdef vector[int32_t] work
    cdef vector[int32_t] tmp
    cdef int64_t other, s, ln
    cdef int32_t pivot
    cdef Py_ssize_t k

    with nogil:
        for lo in range(n_lo - 1, -1, -1):
            if clr[lo]:
                continue
            s = start[lo]
            ln = start[lo + 1] - s
            if ln > 0 and owner[entries[s]] == -1:
                pivot = entries[s]
                owner[pivot] = lo
                red_start[lo] = store.size()
                red_len[lo] = ln
                for k in range(ln):
                    store.push_back(entries[s + k])
                pair_lo[n_pairs] = lo
                pair_hi[n_pairs] = pivot
                n_pairs += 1
                continue
            work.clear()
            for k in range(ln):
                work.push_back(entries[s + k])
            while work.size() > 0:
                other = owner[work[0]]
                if other == -1:
                    break
                _xor_sorted(work, store.data() + red_start[other], red_len[other], tmp)
                work.swap(tmp)
            if work.size() == 0:
                ess[n_ess] = lo
                n_ess += 1
                continue
            pivot = work[0]
            owner[pivot] = lo
            red_start[lo] = store.size()
            red_len[lo] = work.size()
            for k in range(<Py_ssize_t>work.size()):
                store.push_back(work[k])
            pair_lo[n_pairs] = lo
            pair_hi[n_pairs] = pivot
            n_pairs += 1

    essential = np.sort(ess_arr[:n_ess])
    return pair_lo_arr[:n_pairs].copy(), pair_hi_arr[:n_pairs].copy(), essential
