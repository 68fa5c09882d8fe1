"""Isoperimetric profiles, growth conditions, dominating-set constructions."""
from __future__ import annotations

import pytest

from percolab import PowerGraph
from percolab.bounds import (
    BasicConditionsParams,
    boundary_of_set,
    check_basic_conditions,
    ell_dominating_set,
    isoperimetric_profile,
    min_boundary,
    randomized_dominating_set,
    tillich_constant_estimate,
)
from percolab.errors import BudgetExceeded, ComponentTooSmall, InvalidSet
from percolab.power_graph import ExplicitGraph

from conftest import cycle_graph, grid_graph, path_graph

# frozen by exhaustive subset enumeration
CUBE_PROFILE = [3, 4, 5, 4]


@pytest.fixture(scope="module")
def cube(k2):
    return PowerGraph(k2, 3)


class TestBoundary:
    def test_singleton_boundary_is_degree(self, cube):
        assert boundary_of_set(cube, {0}) == 3

    def test_face_of_cube(self, cube):
        # a 2-dimensional subcube has 4 outgoing edges
        assert boundary_of_set(cube, {0, 1, 2, 3}) == 4

    def test_complement_symmetry(self, cube):
        S = {0, 1, 2}
        comp = set(range(cube.order)) - S
        assert boundary_of_set(cube, S) == boundary_of_set(cube, comp)

    def test_invalid_sets(self, cube):
        with pytest.raises(InvalidSet):
            boundary_of_set(cube, set())
        with pytest.raises(InvalidSet):
            boundary_of_set(cube, set(range(cube.order)))
        with pytest.raises(InvalidSet):
            boundary_of_set(cube, {99})


class TestMinBoundary:
    def test_cube_profile(self, cube):
        assert isoperimetric_profile(cube) == CUBE_PROFILE

    def test_profile_with_custom_cutoff(self, cube):
        assert isoperimetric_profile(cube, 2) == CUBE_PROFILE[:2]

    def test_branch_and_bound_matches_enumeration(self, cube):
        grid = grid_graph(3, 3)
        for g in (cube, grid):
            for s in range(1, g.order // 2 + 1):
                exhaustive = min_boundary(g, s)
                bnb = min_boundary(g, s, enumeration_budget=0)
                assert bnb == exhaustive, (g.describe(), s)

    def test_node_budget_carries_best_bound(self, cube):
        with pytest.raises(BudgetExceeded) as exc:
            min_boundary(cube, 4, enumeration_budget=0, node_budget=5)
        assert exc.value.best_upper_bound is not None
        assert exc.value.best_upper_bound >= CUBE_PROFILE[3]

    def test_cardinality_domain(self, cube):
        with pytest.raises(InvalidSet):
            min_boundary(cube, 0)
        with pytest.raises(InvalidSet):
            min_boundary(cube, 5)  # above half the order


class TestBasicConditions:
    def test_hypercubes_pass(self, k2):
        params = BasicConditionsParams(epsilon_prime=0.5, c=1, epsilon=1.0)
        reports = check_basic_conditions(
            lambda n: PowerGraph(k2, n), 2, params, [2, 3, 4]
        )
        assert all(r.all_passed for r in reports)
        assert [r.n for r in reports] == [2, 3, 4]

    def test_low_degree_instance_fails_with_witness(self):
        # order matches 2^2 but the path has endpoints of degree 1 < n
        params = BasicConditionsParams(epsilon_prime=0.5, c=1, epsilon=1.0)
        reports = check_basic_conditions({2: path_graph(4)}, 2, params, [2])
        report = reports[0]
        assert not report.all_passed
        failed = {c.index: c for c in report.checks if not c.passed}
        assert 2 in failed
        assert failed[2].witness["degree"] == 1
        assert "vertex" in failed[2].witness

    def test_wrong_order_fails_condition_one(self):
        params = BasicConditionsParams(epsilon_prime=0.5, c=1, epsilon=1.0)
        reports = check_basic_conditions({2: cycle_graph(6)}, 2, params, [2])
        assert not reports[0].checks[0].passed

    def test_report_dict_shape(self, k2):
        params = BasicConditionsParams(epsilon_prime=0.5, c=1, epsilon=1.0)
        d = check_basic_conditions(lambda n: PowerGraph(k2, n), 2, params, [2])[0].to_dict()
        assert d["all_passed"] is True
        assert [c["condition"] for c in d["checks"]] == [1, 2, 3, 4, 5]

    def test_params_validated(self):
        with pytest.raises(ValueError):
            BasicConditionsParams(epsilon_prime=0.0, c=1, epsilon=1.0)


class TestTillichConstant:
    def test_single_edge_powers_reach_one(self, k2):
        est = tillich_constant_estimate(k2, range(1, 5))
        assert est == pytest.approx(1.0, abs=1e-9)

    def test_triangle_powers(self, k3):
        assert tillich_constant_estimate(k3, range(1, 3)) == pytest.approx(2.0, abs=1e-9)


class TestRandomizedDominatingSet:
    def test_verified_and_within_bound(self, graph_corpus):
        for name, g in graph_corpus[:6]:
            result = randomized_dominating_set(g, frozenset(), g.min_degree, seed=1)
            assert result.verified, name
            assert len(result.vertices) <= result.bound

    def test_seed_reproducibility(self):
        g = cycle_graph(9)
        a = randomized_dominating_set(g, frozenset(), 2, seed=4)
        b = randomized_dominating_set(g, frozenset(), 2, seed=4)
        assert a.vertices == b.vertices and a.attempts == b.attempts

    def test_given_set_counts_toward_domination(self):
        g = path_graph(6)
        W = frozenset(range(6))
        result = randomized_dominating_set(g, W, 1, seed=0)
        assert result.vertices == frozenset()
        assert result.attempts == 0

    def test_degree_floor_enforced(self):
        g = path_graph(5)
        with pytest.raises(InvalidSet):
            randomized_dominating_set(g, frozenset(), 2, seed=0)

    def test_result_dict(self):
        g = cycle_graph(7)
        d = randomized_dominating_set(g, frozenset({0}), 2, seed=2).to_dict()
        assert d["size"] == len(d["vertices"])
        assert d["given"] == [0]
        assert d["verified"] is True


class TestEllDominatingSet:
    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_corpus_within_radius_and_size(self, graph_corpus, ell):
        for name, g in graph_corpus:
            result = ell_dominating_set(g, ell)
            assert result.verified, (name, ell)
            assert len(result.vertices) <= g.order / (ell + 1), (name, ell)

    def test_disconnected_components_covered_separately(self):
        g = ExplicitGraph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        result = ell_dominating_set(g, 1)
        assert result.verified
        assert len(result.vertices) <= 3

    def test_component_too_small(self):
        g = ExplicitGraph(3, [(0, 1)])  # isolated vertex 2
        with pytest.raises(ComponentTooSmall):
            ell_dominating_set(g, 1)

    def test_radius_domain(self):
        with pytest.raises(ValueError):
            ell_dominating_set(path_graph(4), 0)

    def test_star_single_pick(self):
        g = ExplicitGraph(5, [(0, i) for i in range(1, 5)])
        result = ell_dominating_set(g, 1)
        assert result.verified
        assert len(result.vertices) == 1
