# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: union-find labelling and exact subset enumeration.

Vertex indices are int32 and uniforms float32: the trial loop is memory
bound, so halving the element width roughly halves the per-trial cost.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def component_roots(Py_ssize_t order, cnp.int32_t[::1] u, cnp.int32_t[::1] v):
    """Label every vertex with its component root after union of the edges.

    Union by size with path halving; a final pass fully compresses so the
    returned array maps vertex -> root id directly.
    """
    cdef cnp.ndarray[cnp.int32_t, ndim=1] parent_arr = np.arange(order, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] size_arr = np.ones(order, dtype=np.int32)
    cdef cnp.int32_t[::1] parent = parent_arr
    cdef cnp.int32_t[::1] size = size_arr
    cdef Py_ssize_t i, m = u.shape[0]
    cdef cnp.int32_t a, b, t
    for i in range(m):
        a = u[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = v[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            t = a
            a = b
            b = t
        parent[b] = a
        size[a] += size[b]
    for i in range(order):
        a = parent[i]
        while parent[a] != a:
            a = parent[a]
        parent[i] = a
    return parent_arr


def trial_census(
    Py_ssize_t order,
    cnp.int32_t[::1] u,
    cnp.int32_t[::1] v,
    cnp.float32_t[::1] r,
    double p,
):
    """One percolation trial: retain edge i iff r[i] < p, union, census.

    Returns (component-size histogram over 0..order, retained edge count).
    Retained edges are first compacted branchlessly (store always, advance
    the write index by the comparison result) so the union loop and the
    retention filter each run without data-dependent branches on the draw.
    Union by size with path halving; roots are fixpoints of parent, so the
    histogram is read off size[i] wherever parent[i] == i.
    """
    cdef Py_ssize_t m = u.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] parent_arr = np.arange(order, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] size_arr = np.ones(order, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cu_arr = np.empty(m, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cv_arr = np.empty(m, dtype=np.int32)
    cdef cnp.int32_t[::1] parent = parent_arr
    cdef cnp.int32_t[::1] size = size_arr
    cdef cnp.int32_t[::1] cu = cu_arr
    cdef cnp.int32_t[::1] cv = cv_arr
    cdef float pf = <float> p
    cdef Py_ssize_t i, j = 0, retained
    cdef cnp.int32_t a, b, t
    for i in range(m):
        cu[j] = u[i]
        cv[j] = v[i]
        j += r[i] < pf
    retained = j
    for i in range(retained):
        a = cu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = cv[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            t = a
            a = b
            b = t
        parent[b] = a
        size[a] += size[b]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hist_arr = np.zeros(order + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = hist_arr
    for i in range(order):
        if parent[i] == i:
            hist[size[i]] += 1
    return hist_arr, retained


def trial_stats(
    Py_ssize_t order,
    cnp.int32_t[::1] u,
    cnp.int32_t[::1] v,
    cnp.float32_t[::1] r,
    double p,
    workspace=None,
):
    """Scalar form of trial_census for aggregation loops.

    Returns (connected, isolated_count, middle_components, retained) where
    middle_components counts components of size in [2, order // 2]. Skips
    the histogram array that trial_census materializes. workspace, if
    given, is a 4-tuple of int32 arrays (parent[order], size[order],
    cu[num_edges], cv[num_edges]) reused across calls; contents are
    overwritten.
    """
    cdef Py_ssize_t m = u.shape[0]
    cdef cnp.int32_t[::1] parent
    cdef cnp.int32_t[::1] size
    cdef cnp.int32_t[::1] cu
    cdef cnp.int32_t[::1] cv
    if workspace is None:
        parent = np.empty(order, dtype=np.int32)
        size = np.empty(order, dtype=np.int32)
        cu = np.empty(m, dtype=np.int32)
        cv = np.empty(m, dtype=np.int32)
    else:
        parent, size, cu, cv = workspace
    cdef float pf = <float> p
    cdef Py_ssize_t i, j = 0, retained
    cdef cnp.int32_t a, b, t
    cdef Py_ssize_t half = order // 2, iso = 0, middle = 0, comps = 0, s
    for i in range(m):
        cu[j] = u[i]
        cv[j] = v[i]
        j += r[i] < pf
    retained = j
    for i in range(order):
        parent[i] = <cnp.int32_t> i
        size[i] = 1
    for i in range(retained):
        a = cu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = cv[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            t = a
            a = b
            b = t
        parent[b] = a
        size[a] += size[b]
    for i in range(order):
        if parent[i] == i:
            comps += 1
            s = size[i]
            if s == 1:
                iso += 1
            elif s <= half:
                middle += 1
    return comps == 1, iso, middle, retained


def subset_scan(Py_ssize_t order, cnp.int32_t[::1] u, cnp.int32_t[::1] v, double p):
    """Exact scan over all 2^m edge subsets.

    Returns (connectivity probability, distribution of the isolated-vertex
    count as a vector over 0..order). Caller enforces m <= 26.
    """
    cdef Py_ssize_t m = u.shape[0]
    if m > 26:
        raise ValueError("subset_scan limited to m <= 26 edges")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] weights = np.empty(m + 1, dtype=np.float64)
    cdef Py_ssize_t j
    for j in range(m + 1):
        weights[j] = p**j * (1.0 - p) ** (m - j)
    # per-vertex incidence bitmask over edge indices
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] inc_arr = np.zeros(order, dtype=np.uint64)
    cdef cnp.uint64_t[::1] inc = inc_arr
    for j in range(m):
        inc[u[j]] |= <cnp.uint64_t> 1 << j
        inc[v[j]] |= <cnp.uint64_t> 1 << j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dist_arr = np.zeros(order + 1, dtype=np.float64)
    cdef cnp.float64_t[::1] dist = dist_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] parent_arr = np.empty(order, dtype=np.int32)
    cdef cnp.int32_t[::1] parent = parent_arr
    cdef double conn = 0.0, w
    cdef unsigned long long mask, top = (<unsigned long long> 1) << m
    cdef Py_ssize_t i, bits, comps, iso
    cdef cnp.int32_t a, b
    for mask in range(top):
        for i in range(order):
            parent[i] = i
        comps = order
        bits = 0
        for j in range(m):
            if not (mask >> j) & 1:
                continue
            bits += 1
            a = u[j]
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = v[j]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[b] = a
                comps -= 1
        iso = 0
        for i in range(order):
            if (mask & inc[i]) == 0:
                iso += 1
        w = weights[bits]
        if comps == 1:
            conn += w
        dist[iso] += w
    return conn, dist_arr
