"""percolab: connectivity thresholds for random subgraphs of sparse graphs.

Solve the degree-polynomial threshold equation for a base graph, percolate
Cartesian powers (or explicit sparse graphs) with reproducible seeded
randomness, and verify isolated-vertex, component-census and isoperimetric
behaviour against exact small-instance oracles.
"""

from percolab.graph_core import (
    BaseGraph,
    DegreePolynomial,
    ThresholdSolution,
    degree_polynomial,
    eval_polynomial,
    is_connected,
    parse_graph,
    solve_threshold,
)
from percolab.kernels import BACKEND as KERNEL_BACKEND
from percolab.percolation import (
    TrialOutcome,
    TrialPlan,
    exact_connectivity_probability,
    exact_isolated_distribution,
    run_trial,
)
from percolab.power_graph import ExplicitGraph, GraphView, PowerGraph
from percolab.stats import (
    ExperimentConfig,
    ExperimentReport,
    convergence_sweep,
    factorial_moments,
    poisson_tv_distance,
    run_experiment,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [
    "BaseGraph",
    "DegreePolynomial",
    "ExperimentConfig",
    "ExperimentReport",
    "ExplicitGraph",
    "GraphView",
    "KERNEL_BACKEND",
    "PowerGraph",
    "ThresholdSolution",
    "TrialOutcome",
    "TrialPlan",
    "convergence_sweep",
    "degree_polynomial",
    "eval_polynomial",
    "exact_connectivity_probability",
    "exact_isolated_distribution",
    "factorial_moments",
    "is_connected",
    "parse_graph",
    "poisson_tv_distance",
    "run_experiment",
    "run_trial",
    "solve_threshold",
    "wilson_interval",
]
