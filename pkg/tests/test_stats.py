"""Monte Carlo harness: intervals, moments, Poisson diagnostics, reports."""
from __future__ import annotations

import math

import pytest

from percolab import (
    ExperimentConfig,
    PowerGraph,
    TrialPlan,
    factorial_moments,
    poisson_tv_distance,
    run_experiment,
    run_trial,
    wilson_interval,
)
from percolab.errors import EmptySample, TargetOutOfRange
from percolab.power_graph import ExplicitGraph
from percolab.stats import (
    ExperimentReport,
    convergence_sweep,
    poisson_pmf,
    solve_retention,
)

from conftest import path_graph


class TestWilsonInterval:
    # frozen against a hand-rolled evaluation with z = 1.959963984540054
    CASES = {
        (7, 10): (0.39677814746114537, 0.8922087325936989),
        (0, 20): (0.0, 0.16112515805281938),
        (20, 20): (0.8388748419471806, 1.0),
    }

    def test_frozen_values(self):
        for (s, n), (lo, hi) in self.CASES.items():
            got = wilson_interval(s, n)
            assert got[0] == pytest.approx(lo, abs=1e-12)
            assert got[1] == pytest.approx(hi, abs=1e-12)

    def test_interval_contains_point_estimate(self):
        lo, hi = wilson_interval(42, 100)
        assert lo < 0.42 < hi

    def test_confidence_widens_interval(self):
        narrow = wilson_interval(50, 100, confidence=0.8)
        wide = wilson_interval(50, 100, confidence=0.99)
        assert wide[0] < narrow[0] and narrow[1] < wide[1]

    def test_bad_counts(self):
        with pytest.raises(ValueError):
            wilson_interval(5, 4)
        with pytest.raises(ValueError):
            wilson_interval(-1, 4)
        with pytest.raises(ValueError):
            wilson_interval(0, 0)


class TestFactorialMoments:
    def test_hand_computed(self):
        # samples 0,1,2,3: E1 = 6/4, E2 = (0+0+2+6)/4, E3 = 6/4
        est = factorial_moments([0, 1, 2, 3], 3)
        assert est[0][0] == pytest.approx(1.5, abs=1e-15)
        assert est[1][0] == pytest.approx(2.0, abs=1e-15)
        assert est[2][0] == pytest.approx(1.5, abs=1e-15)

    def test_constant_sample_has_zero_stderr(self):
        est = factorial_moments([2] * 10, 2)
        assert est[0] == (2.0, 0.0)
        assert est[1] == (2.0, 0.0)

    def test_empty_sample(self):
        with pytest.raises(EmptySample):
            factorial_moments([], 2)

    def test_bad_order(self):
        with pytest.raises(ValueError):
            factorial_moments([1], 0)


class TestPoisson:
    def test_pmf_values(self):
        assert poisson_pmf(0, 1.0) == pytest.approx(math.exp(-1), rel=1e-14)
        assert poisson_pmf(3, 2.0) == pytest.approx(8 * math.exp(-2) / 6, rel=1e-12)

    def test_tv_against_truncated_self_is_tail_only(self):
        lam = 1.0
        pmf = {x: poisson_pmf(x, lam) for x in range(60)}
        # renormalize the tiny truncation remainder onto 0
        pmf[0] += 1.0 - sum(pmf.values())
        assert poisson_tv_distance(pmf, lam) < 1e-12

    def test_tv_point_mass(self):
        # TV({X=0}, Poisson(1)) = 1 - e^(-1)
        assert poisson_tv_distance({0: 1.0}, 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)

    def test_tv_requires_normalized_pmf(self):
        with pytest.raises(ValueError):
            poisson_tv_distance({0: 0.5}, 1.0)

    def test_tv_requires_positive_rate(self):
        with pytest.raises(ValueError):
            poisson_tv_distance({0: 1.0}, 0.0)


class TestSolveRetention:
    def test_power_graph_uses_degree_polynomial(self, p3):
        g = PowerGraph(p3, 2)
        sol = solve_retention(g, 1.0)
        assert sol.q == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-10)
        assert g.expected_isolated(sol.q) == pytest.approx(1.0, abs=1e-9)

    def test_explicit_graph_bisection(self):
        # path on 4 vertices: 2q + 2q^2 = 1 -> q = (sqrt(3) - 1)/2
        g = path_graph(4)
        sol = solve_retention(g, 1.0)
        assert sol.q == pytest.approx((math.sqrt(3.0) - 1.0) / 2.0, abs=1e-9)
        assert sol.p == pytest.approx(1.0 - sol.q, abs=1e-15)

    def test_explicit_graph_out_of_range(self):
        g = path_graph(4)
        with pytest.raises(TargetOutOfRange):
            solve_retention(g, 4.0)
        with pytest.raises(TargetOutOfRange):
            solve_retention(g, 0.0)


class TestExperimentConfig:
    def test_exactly_one_of_lam_or_p(self, k2):
        g = PowerGraph(k2, 2)
        with pytest.raises(ValueError):
            ExperimentConfig(graph=g, trials=10, master_seed=0)
        with pytest.raises(ValueError):
            ExperimentConfig(graph=g, trials=10, master_seed=0, lam=1.0, p=0.5)

    def test_counts_validated(self, k2):
        g = PowerGraph(k2, 2)
        with pytest.raises(ValueError):
            ExperimentConfig(graph=g, trials=0, master_seed=0, p=0.5)
        with pytest.raises(ValueError):
            ExperimentConfig(graph=g, trials=10, master_seed=0, p=0.5, workers=0)


class TestRunExperiment:
    def test_aggregate_matches_per_trial_loop(self, p3):
        # the chunked kernel path must reproduce a plain run_trial loop
        g = PowerGraph(p3, 2)
        trials, seed, p = 300, 17, 0.55
        cfg = ExperimentConfig(graph=g, trials=trials, master_seed=seed, p=p)
        rep = run_experiment(cfg)
        connected = middle = 0
        hist: dict[int, int] = {}
        for t in range(trials):
            out = run_trial(g, TrialPlan(seed, t, p))
            connected += out.connected
            middle += out.has_middle_component
            hist[out.isolated_count] = hist.get(out.isolated_count, 0) + 1
        assert rep.connected_trials == connected
        assert rep.middle_prob == pytest.approx(middle / trials, abs=1e-15)
        assert rep.x_pmf == {x: c / trials for x, c in hist.items()}

    def test_worker_count_does_not_change_report(self, k2):
        g = PowerGraph(k2, 6)
        reports = [
            run_experiment(
                ExperimentConfig(graph=g, trials=400, master_seed=3, lam=1.0, workers=w)
            )
            for w in (1, 3)
        ]
        assert reports[0].to_dict(deterministic=True) == reports[1].to_dict(deterministic=True)

    def test_connectivity_implies_no_isolated(self, k2):
        g = PowerGraph(k2, 8)
        rep = run_experiment(ExperimentConfig(graph=g, trials=2000, master_seed=5, lam=1.0))
        assert rep.p_connected <= rep.p_no_isolated
        assert rep.connected_ci[0] <= rep.p_connected <= rep.connected_ci[1]

    def test_mean_isolated_tracks_analytic_target(self, k2):
        g = PowerGraph(k2, 10)
        rep = run_experiment(ExperimentConfig(graph=g, trials=4000, master_seed=6, lam=1.0))
        est, stderr = rep.factorial_moments[0]
        assert rep.mean_x == pytest.approx(est, abs=1e-12)
        assert abs(est - rep.lam_target) <= 4 * stderr

    def test_explicit_p_respected(self, p3):
        g = PowerGraph(p3, 2)
        rep = run_experiment(ExperimentConfig(graph=g, trials=50, master_seed=1, p=0.7))
        assert rep.p == 0.7 and rep.q == pytest.approx(0.3, abs=1e-15)

    def test_report_serialization(self, p3):
        g = PowerGraph(p3, 2)
        rep = run_experiment(ExperimentConfig(graph=g, trials=50, master_seed=1, p=0.7))
        d = rep.to_dict()
        assert d["schema"] == 1 and "wall_seconds" in d
        assert "wall_seconds" not in rep.to_dict(deterministic=True)
        row = rep.to_csv_row()
        assert len(row) == len(ExperimentReport.CSV_FIELDS)


class TestConvergenceSweep:
    def test_one_report_per_exponent(self, k2):
        reports = convergence_sweep(k2, 1.0, [2, 3, 4], trials=100, master_seed=2)
        assert [r.order for r in reports] == [4, 8, 16]
        assert all(r.trials == 100 for r in reports)
        assert len({r.label for r in reports}) == 3
