"""Seeded edge percolation, component census, and exact small-graph oracles.

Per-edge randomness is counter-based: a Philox generator keyed by
(master_seed, trial_index) produces one uniform per edge, indexed by the
edge's position in the deterministic edge stream. The decision for edge i
of trial t is therefore a pure function of (master_seed, t, i),
independent of worker scheduling.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from percolab.errors import TooManyEdges
from percolab.kernels import subset_scan, trial_census
from percolab.power_graph import GraphView

EXACT_EDGE_CAP = 26  # 2^26 subsets is the desk-scale ceiling


@dataclass(frozen=True)
class TrialPlan:
    master_seed: int
    trial_index: int
    p: float

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError(f"retention probability must be in (0, 1), got {self.p}")


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one percolation trial.

    census maps component order -> count for orders in [2, order // 2];
    components larger than order // 2 are only counted (large_components)
    together with their total vertex mass (large_vertices).
    """

    connected: bool
    isolated_count: int
    census: dict[int, int] = field(compare=False)
    large_components: int
    large_vertices: int
    retained_edges: int

    @property
    def has_middle_component(self) -> bool:
        return bool(self.census)


def edge_uniforms(plan: TrialPlan, num_edges: int, out: np.ndarray | None = None) -> np.ndarray:
    """The trial's uniform draws (float32), one per edge-stream position.

    out, if given, must be a float32 array of length num_edges; reusing a
    buffer avoids a per-trial allocation in tight loops.
    """
    gen = np.random.Generator(
        np.random.Philox(key=np.array([plan.master_seed, plan.trial_index], dtype=np.uint64))
    )
    if out is None:
        return gen.random(num_edges, dtype=np.float32)
    return gen.random(out=out, dtype=np.float32)


def run_trial(g: GraphView, plan: TrialPlan, *, retain_all: bool = False) -> TrialOutcome:
    """Percolate g once and census the surviving components.

    retain_all is a test hook forcing every edge to survive.
    """
    u, v = g.edge_arrays()
    if retain_all:
        uniforms = np.full(g.num_edges, -1.0, dtype=np.float32)  # every draw below p
    else:
        uniforms = edge_uniforms(plan, g.num_edges)
    # compare in float32 so the compiled and fallback kernels agree exactly
    hist, retained = trial_census(g.order, u, v, uniforms, float(np.float32(plan.p)))
    half = g.order // 2
    middle_idx = np.nonzero(hist[2 : half + 1])[0]
    census = {int(s + 2): int(hist[s + 2]) for s in middle_idx}
    large = hist[half + 1 :]
    large_components = int(large.sum())
    large_sizes = np.nonzero(large)[0] + half + 1
    return TrialOutcome(
        connected=bool(hist[g.order] == 1),
        isolated_count=int(hist[1]),
        census=census,
        large_components=large_components,
        large_vertices=int((large_sizes * large[large_sizes - half - 1]).sum()),
        retained_edges=retained,
    )


def _exact_scan(g: GraphView, p: float):
    if g.num_edges > EXACT_EDGE_CAP:
        raise TooManyEdges(
            f"exact enumeration capped at {EXACT_EDGE_CAP} edges, graph has {g.num_edges}"
        )
    if not 0 <= p <= 1:
        raise ValueError(f"p must be in [0, 1], got {p}")
    u, v = g.edge_arrays()
    return subset_scan(g.order, u, v, p)


def exact_connectivity_probability(g: GraphView, p: float) -> float:
    """P[g_p connected] by exact enumeration of all 2^m edge subsets."""
    conn, _ = _exact_scan(g, p)
    return conn


def exact_isolated_distribution(g: GraphView, p: float) -> np.ndarray:
    """Exact law of the isolated-vertex count; vector over 0..order."""
    _, dist = _exact_scan(g, p)
    return dist
