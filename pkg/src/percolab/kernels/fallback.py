"""Pure-Python versions of the compiled kernels.

Same contracts and same results as _census, an order of magnitude slower.
Used automatically when the extension is not built; the benchmark in
benchmarks/bench_kernels.py compares the two.
"""
from __future__ import annotations

import numpy as np


def component_roots(order: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    parent = list(range(order))
    size = [1] * order
    for a, b in zip(u.tolist(), v.tolist()):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    for i in range(order):
        a = parent[i]
        while parent[a] != a:
            a = parent[a]
        parent[i] = a
    return np.array(parent, dtype=np.int32)


def trial_census(order: int, u: np.ndarray, v: np.ndarray, r: np.ndarray, p: float):
    mask = r < np.float32(p)
    roots = component_roots(order, u[mask], v[mask])
    counts = np.bincount(roots, minlength=order)
    sizes = counts[counts > 0]
    hist = np.bincount(sizes, minlength=order + 1).astype(np.int64)
    return hist, int(mask.sum())


def trial_stats(order: int, u: np.ndarray, v: np.ndarray, r: np.ndarray, p: float, workspace=None):
    # workspace is accepted for interface parity; the list-based union-find
    # here cannot reuse numpy buffers.
    hist, retained = trial_census(order, u, v, r, p)
    half = order // 2
    connected = bool(hist[order] == 1)
    middle = int(hist[2 : half + 1].sum())
    return connected, int(hist[1]), middle, retained


def subset_scan(order: int, u: np.ndarray, v: np.ndarray, p: float):
    m = len(u)
    if m > 26:
        raise ValueError("subset_scan limited to m <= 26 edges")
    weights = [p**j * (1.0 - p) ** (m - j) for j in range(m + 1)]
    inc = [0] * order
    uu, vv = u.tolist(), v.tolist()
    for j in range(m):
        inc[uu[j]] |= 1 << j
        inc[vv[j]] |= 1 << j
    dist = np.zeros(order + 1, dtype=np.float64)
    conn = 0.0
    for mask in range(1 << m):
        parent = list(range(order))
        comps = order
        bits = 0
        for j in range(m):
            if not (mask >> j) & 1:
                continue
            bits += 1
            a = uu[j]
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = vv[j]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[b] = a
                comps -= 1
        iso = sum(1 for i in range(order) if (mask & inc[i]) == 0)
        w = weights[bits]
        if comps == 1:
            conn += w
        dist[iso] += w
    return conn, dist
