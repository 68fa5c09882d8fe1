"""Compare the compiled kernels against the pure-Python fallback.

Runs the percolation census on a hypercube and the exact subset scan on a
small product graph with both implementations and reports wall times and
speedups. The compiled column is skipped if the extension is not built.

Usage: python benchmarks/bench_kernels.py [--n 12] [--trials 20] [--p 0.5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from percolab import PowerGraph, TrialPlan, parse_graph
from percolab.kernels import fallback
from percolab.percolation import edge_uniforms

try:
    from percolab.kernels import _census
except ImportError:
    _census = None

K2 = parse_graph("2 1\n0 1\n")
P3 = parse_graph("3 2\n0 1\n1 2\n")


def best_of(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_census(n, trials, p):
    g = PowerGraph(K2, n)
    u, v = g.edge_arrays()
    r = edge_uniforms(TrialPlan(42, 0, p), g.num_edges)
    pf = float(np.float32(p))
    rows = []
    if _census is not None:
        rows.append(
            ("census/cython", best_of(lambda: _census.trial_census(g.order, u, v, r, pf), trials))
        )
    rows.append(
        ("census/python", best_of(lambda: fallback.trial_census(g.order, u, v, r, pf), max(1, trials // 5)))
    )
    if _census is not None:
        a = _census.trial_census(g.order, u, v, r, pf)
        b = fallback.trial_census(g.order, u, v, r, pf)
        assert a[1] == b[1] and np.array_equal(a[0], b[0]), "kernel results diverge"
    return g, rows


def bench_subset_scan(p):
    g = PowerGraph(P3, 2)
    u, v = g.edge_arrays()
    rows = []
    if _census is not None:
        rows.append(("subset/cython", best_of(lambda: _census.subset_scan(g.order, u, v, p), 5)))
    rows.append(("subset/python", best_of(lambda: fallback.subset_scan(g.order, u, v, p), 2)))
    return g, rows


def print_table(title, graph, rows):
    print(f"\n{title}: order={graph.order}, edges={graph.num_edges}")
    base = rows[-1][1]  # python fallback is listed last
    for name, seconds in rows:
        print(f"  {name:16s} {seconds * 1e3:10.3f} ms   x{base / seconds:7.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=12, help="hypercube exponent for the census")
    ap.add_argument("--trials", type=int, default=20, help="repetitions per measurement")
    ap.add_argument("--p", type=float, default=0.5, help="edge-retention probability")
    args = ap.parse_args()

    if _census is None:
        print("compiled extension not built; timing the fallback only")

    print_table("percolation census", *bench_census(args.n, args.trials, args.p))
    print_table("exact subset scan", *bench_subset_scan(args.p))


if __name__ == "__main__":
    main()
