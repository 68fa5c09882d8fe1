"""Monte Carlo experiment harness.

Runs seeded percolation trials, aggregates connectivity frequency, the
isolated-vertex distribution, factorial moments and Poisson diagnostics
into an ExperimentReport. Aggregation is exact integer arithmetic, so a
report is byte-identical for a fixed (config, master_seed) regardless of
how many worker processes are used.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from percolab.errors import EmptySample, TargetOutOfRange
from percolab.graph_core import BaseGraph, ThresholdSolution, solve_threshold
from percolab.kernels import trial_stats
from percolab.percolation import TrialPlan, edge_uniforms
from percolab.power_graph import GraphView, PowerGraph

_BISECT_TOL = 1e-12
_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class ExperimentConfig:
    graph: GraphView
    trials: int
    master_seed: int
    lam: float | None = None
    p: float | None = None
    r_max: int = 4
    workers: int = 1
    label: str = ""

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if (self.lam is None) == (self.p is None):
            raise ValueError("exactly one of lam or p must be given")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass
class ExperimentReport:
    label: str
    order: int
    size: int
    p: float
    q: float
    lam_target: float  # analytic E[#isolated] at the q actually used
    trials: int
    master_seed: int
    connected_trials: int
    p_connected: float
    connected_ci: tuple[float, float]
    p_no_isolated: float
    no_isolated_ci: tuple[float, float]
    x_pmf: dict[int, float]
    mean_x: float
    factorial_moments: list[tuple[float, float]]  # (estimate, stderr) for r=1..r_max
    tv_poisson: float
    middle_prob: float
    wall_seconds: float = field(compare=False, default=0.0)
    trials_per_second: float = field(compare=False, default=0.0)

    def to_dict(self, deterministic: bool = False) -> dict:
        d = {
            "schema": 1,
            "label": self.label,
            "order": self.order,
            "size": self.size,
            "p": self.p,
            "q": self.q,
            "lam_target": self.lam_target,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "connected_trials": self.connected_trials,
            "p_connected": self.p_connected,
            "connected_ci": list(self.connected_ci),
            "p_no_isolated": self.p_no_isolated,
            "no_isolated_ci": list(self.no_isolated_ci),
            "x_pmf": {str(x): f for x, f in sorted(self.x_pmf.items())},
            "mean_x": self.mean_x,
            "factorial_moments": [list(t) for t in self.factorial_moments],
            "tv_poisson": self.tv_poisson,
            "middle_prob": self.middle_prob,
        }
        if not deterministic:
            d["wall_seconds"] = self.wall_seconds
            d["trials_per_second"] = self.trials_per_second
        return d

    CSV_FIELDS = (
        "label",
        "order",
        "size",
        "p",
        "q",
        "lam_target",
        "trials",
        "p_connected",
        "connected_ci_lo",
        "connected_ci_hi",
        "p_no_isolated",
        "mean_x",
        "e2",
        "tv_poisson",
        "middle_prob",
    )

    def to_csv_row(self) -> list:
        e2 = self.factorial_moments[1][0] if len(self.factorial_moments) > 1 else ""
        return [
            self.label,
            self.order,
            self.size,
            repr(self.p),
            repr(self.q),
            repr(self.lam_target),
            self.trials,
            repr(self.p_connected),
            repr(self.connected_ci[0]),
            repr(self.connected_ci[1]),
            repr(self.p_no_isolated),
            repr(self.mean_x),
            repr(e2) if e2 != "" else "",
            repr(self.tv_poisson),
            repr(self.middle_prob),
        ]


def wilson_interval(successes: int, trials: int, confidence: float = 0.95):
    """Wilson score interval for a binomial proportion."""
    if not 0 <= successes <= trials or trials < 1:
        raise ValueError(f"bad counts: {successes}/{trials}")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    margin = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials))
    return (max(0.0, center - margin), min(1.0, center + margin))


def _falling_factorial(x: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= x - i
    return out


def _moments_from_histogram(hist: dict[int, int], trials: int, r_max: int):
    moments = []
    for r in range(1, r_max + 1):
        s1 = sum(c * _falling_factorial(x, r) for x, c in hist.items())
        s2 = sum(c * _falling_factorial(x, r) ** 2 for x, c in hist.items())
        mean = s1 / trials
        var = max(0.0, s2 / trials - mean * mean)
        moments.append((mean, math.sqrt(var / trials)))
    return moments


def factorial_moments(samples, r_max: int):
    """(estimate, stderr) of E[X(X-1)...(X-r+1)] for r = 1..r_max."""
    if r_max < 1:
        raise ValueError(f"r_max must be >= 1, got {r_max}")
    hist: dict[int, int] = {}
    n = 0
    for x in samples:
        hist[x] = hist.get(x, 0) + 1
        n += 1
    if n == 0:
        raise EmptySample("factorial_moments needs at least one sample")
    return _moments_from_histogram(hist, n, r_max)


def poisson_pmf(x: int, lam: float) -> float:
    return math.exp(-lam + x * math.log(lam) - math.lgamma(x + 1))


def poisson_tv_distance(pmf: dict[int, float], lam: float) -> float:
    """Total-variation distance between an empirical pmf and Poisson(lam).

    The Poisson mass beyond the empirical support is added in full.
    """
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    total = sum(pmf.values())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"pmf must be normalized, sums to {total}")
    support_max = max(pmf)
    acc = 0.0
    cdf = 0.0
    for x in range(support_max + 1):
        px = poisson_pmf(x, lam)
        cdf += px
        acc += abs(pmf.get(x, 0.0) - px)
    acc += max(0.0, 1.0 - cdf)  # Poisson tail beyond the support
    return 0.5 * acc


def solve_retention(graph: GraphView, lam: float) -> ThresholdSolution:
    """Find q with E[#isolated in g_q] = lam, p = 1 - q.

    Power graphs use the closed-form degree polynomial of the base; explicit
    graphs invert sum_v q^deg(v) = lam by bisection (strictly increasing in q).
    """
    if isinstance(graph, PowerGraph):
        return solve_threshold(graph.degree_polynomial(), lam, graph.n)
    if lam <= 0:
        raise TargetOutOfRange(f"lam must be positive, got {lam}")
    if lam >= graph.order:
        raise TargetOutOfRange(f"lam = {lam} >= order = {graph.order}; no root in (0, 1)")
    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_MAX_ITER):
        q = 0.5 * (lo + hi)
        f = sum(q ** graph.degree(v) for v in range(graph.order)) - lam
        if abs(f) <= _BISECT_TOL or hi - lo <= 1e-16:
            return ThresholdSolution(q=q, p=1.0 - q, target=lam, residual=abs(f))
        if f > 0:
            hi = q
        else:
            lo = q
    q = 0.5 * (lo + hi)
    f = sum(q ** graph.degree(v) for v in range(graph.order)) - lam
    return ThresholdSolution(q=q, p=1.0 - q, target=lam, residual=abs(f))


def _run_chunk(args):
    # Kernel-direct trial loop: the aggregate only needs three scalars per
    # trial, so skip the full TrialOutcome that run_trial would build.
    graph, p, master_seed, start, count = args
    u, v = graph.edge_arrays()
    order = graph.order
    num_edges = graph.num_edges
    pf = float(np.float32(p))
    buf = np.empty(num_edges, dtype=np.float32)
    workspace = (
        np.empty(order, dtype=np.int32),
        np.empty(order, dtype=np.int32),
        np.empty(num_edges, dtype=np.int32),
        np.empty(num_edges, dtype=np.int32),
    )
    hist: dict[int, int] = {}
    connected = 0
    middle = 0
    for t in range(start, start + count):
        uniforms = edge_uniforms(TrialPlan(master_seed=master_seed, trial_index=t, p=p), num_edges, out=buf)
        conn, iso, mid, _ = trial_stats(order, u, v, uniforms, pf, workspace)
        hist[iso] = hist.get(iso, 0) + 1
        if conn:
            connected += 1
        if mid:
            middle += 1
    return connected, middle, hist


def _chunk_bounds(trials: int, workers: int):
    chunks = min(trials, max(workers, 1) * 4)
    base, extra = divmod(trials, chunks)
    start = 0
    out = []
    for i in range(chunks):
        count = base + (1 if i < extra else 0)
        if count:
            out.append((start, count))
        start += count
    return out

def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    g = cfg.graph
    if cfg.lam is not None:
        sol = solve_retention(g, cfg.lam)
        p, q = sol.p, sol.q
    else:
        p = cfg.p
        q = 1.0 - p
        if not 0 < p < 1:
            raise ValueError(f"p must be in (0, 1), got {p}")
    lam_target = g.expected_isolated(q)

    t0 = time.perf_counter()
    tasks = [(g, p, cfg.master_seed, start, count) for start, count in _chunk_bounds(cfg.trials, cfg.workers)]
    if cfg.workers == 1 or len(tasks) == 1:
        results = [_run_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_chunk, tasks))
    wall = time.perf_counter() - t0

    connected = 0
    middle = 0
    hist: dict[int, int] = {}
    for c, m, h in results:  # merge order fixed by chunk order
        connected += c
        middle += m
        for x, n in h.items():
            hist[x] = hist.get(x, 0) + n

    trials = cfg.trials
    zeros = hist.get(0, 0)
    pmf = {x: n / trials for x, n in sorted(hist.items())}
    mean_x = sum(x * n for x, n in hist.items()) / trials
    moments = _moments_from_histogram(hist, trials, cfg.r_max)
    return ExperimentReport(
        label=cfg.label or g.describe(),
        order=g.order,
        size=g.num_edges,
        p=p,
        q=q,
        lam_target=lam_target,
        trials=trials,
        master_seed=cfg.master_seed,
        connected_trials=connected,
        p_connected=connected / trials,
        connected_ci=wilson_interval(connected, trials),
        p_no_isolated=zeros / trials,
        no_isolated_ci=wilson_interval(zeros, trials),
        x_pmf=pmf,
        mean_x=mean_x,
        factorial_moments=moments,
        tv_poisson=poisson_tv_distance(pmf, lam_target),
        middle_prob=middle / trials,
        wall_seconds=wall,
        trials_per_second=trials / wall if wall > 0 else 0.0,
    )


def convergence_sweep(
    base: BaseGraph,
    lam: float,
    n_values,
    trials: int,
    master_seed: int = 0,
    workers: int = 1,
    r_max: int = 4,
) -> list[ExperimentReport]:
    """One experiment per n; the empirical side of the limit statements."""
    reports = []
    for n in n_values:
        g = PowerGraph(base, n)
        cfg = ExperimentConfig(
            graph=g,
            trials=trials,
            master_seed=master_seed,
            lam=lam,
            workers=workers,
            r_max=r_max,
            label=g.describe(),
        )
        reports.append(run_experiment(cfg))
    return reports
