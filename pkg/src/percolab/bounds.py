"""Structural verifiers: isoperimetric profiles, the five growth conditions
on a graph sequence, the power-isoperimetry constant, and constructive
dominating sets.

Everything here is brute force or randomized-with-verification on small
instances; nothing is asymptotic.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from percolab.errors import (
    AttemptsCapReached,
    BudgetExceeded,
    ComponentTooSmall,
    InvalidSet,
)
from percolab.graph_core import BaseGraph
from percolab.power_graph import GraphView, PowerGraph

ENUMERATION_BUDGET = 5_000_000  # subsets per min_boundary call
BNB_NODE_BUDGET = 50_000_000
DOMINATION_ATTEMPT_CAP = 50


def boundary_of_set(g: GraphView, S) -> int:
    """Number of edges with exactly one endpoint in S."""
    S = set(S)
    if not S or len(S) >= g.order:
        raise InvalidSet("S must be a nonempty proper subset of the vertices")
    for v in S:
        if not 0 <= v < g.order:
            raise InvalidSet(f"vertex {v} out of range")
    return sum(1 for v in S for w in g.neighbors(v) if w not in S)


def min_boundary(
    g: GraphView,
    s: int,
    *,
    enumeration_budget: int = ENUMERATION_BUDGET,
    node_budget: int = BNB_NODE_BUDGET,
) -> int:
    """Exact minimum boundary over all vertex sets of cardinality s.

    Exhaustive enumeration when C(order, s) fits the budget, otherwise
    branch-and-bound over include/exclude decisions with the admissible
    bound  boundary >= sum(deg over S) - 2 * (max internal edges).
    Raises BudgetExceeded (carrying the best upper bound found) if the
    node budget runs out.
    """
    n = g.order
    if not 1 <= s <= n // 2:
        raise InvalidSet(f"s must be in [1, order/2], got s={s} for order {n}")
    if s == 1:
        return min(g.degree(v) for v in range(n))
    if math.comb(n, s) <= enumeration_budget:
        adj = [g.neighbors(v) for v in range(n)]
        best = None
        for S in combinations(range(n), s):
            b = _boundary_fast_sets(adj, S)
            if best is None or b < best:
                best = b
        return best
    return _min_boundary_bnb(g, s, node_budget)


def _min_boundary_bnb(g: GraphView, s: int, node_budget: int) -> int:
    n = g.order
    degrees = [g.degree(v) for v in range(n)]
    adj = [set(g.neighbors(v)) for v in range(n)]
    # greedy seed for an incumbent: BFS ball from a min-degree vertex
    seed = _bfs_ball(g, min(range(n), key=lambda v: degrees[v]), s)
    incumbent = _boundary_fast_sets(adj, seed)
    max_internal = 2 * min(g.num_edges, s * (s - 1) // 2)

    nodes = 0
    chosen: list[int] = []

    def rec(next_v: int, sum_deg: int):
        nonlocal incumbent, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(
                f"branch-and-bound exceeded {node_budget} nodes",
                best_upper_bound=incumbent,
            )
        if len(chosen) == s:
            b = _boundary_fast_sets(adj, chosen)
            if b < incumbent:
                incumbent = b
            return
        remaining = s - len(chosen)
        if n - next_v < remaining:
            return
        # admissible completion bound: every final member contributes its
        # degree, internal edges are double-counted at most max_internal times
        min_future = sum(sorted(degrees[next_v:])[:remaining])
        if sum_deg + min_future - max_internal >= incumbent:
            return
        chosen.append(next_v)
        rec(next_v + 1, sum_deg + degrees[next_v])
        chosen.pop()
        rec(next_v + 1, sum_deg)

    rec(0, 0)
    return incumbent


def _boundary_fast_sets(adj, S) -> int:
    inside = set(S)
    return sum(1 for v in S for w in adj[v] if w not in inside)


def _bfs_ball(g: GraphView, start: int, s: int) -> list[int]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue and len(order) < s:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
                if len(order) == s:
                    break
    return order[:s]


def isoperimetric_profile(g: GraphView, s_max: int | None = None) -> list[int]:
    """b(s) for s = 1..s_max (default order // 2)."""
    s_max = g.order // 2 if s_max is None else s_max
    return [min_boundary(g, s) for s in range(1, s_max + 1)]


# ---------------------------------------------------------------------------
# growth conditions on a graph sequence


@dataclass(frozen=True)
class BasicConditionsParams:
    epsilon_prime: float
    c: int
    epsilon: float

    def __post_init__(self):
        if self.epsilon_prime <= 0 or self.epsilon <= 0 or self.c <= 0:
            raise ValueError("all parameters must be strictly positive")


@dataclass
class ConditionCheck:
    index: int
    passed: bool
    witness: dict = field(default_factory=dict)


@dataclass
class ConditionsReport:
    n: int
    k: int
    checks: list[ConditionCheck]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "all_passed": self.all_passed,
            "checks": [
                {"condition": c.index, "passed": c.passed, "witness": c.witness}
                for c in self.checks
            ],
        }


def check_basic_conditions(
    graphs, k: int, params: BasicConditionsParams, n_range
) -> list[ConditionsReport]:
    """Verify the five structural conditions at each finite n.

    graphs: mapping n -> GraphView (or callable n -> GraphView).
    Condition 5 spans s from ceil(n^(1 - eps')) to floor(order / 2);
    each b(s) is brute-forced, so this is only feasible for small n.
    """
    getter = graphs if callable(graphs) else graphs.__getitem__
    reports = []
    for n in n_range:
        g = getter(n)
        degs = [g.degree(v) for v in range(g.order)]
        dmin, dmax = min(degs), max(degs)
        checks = []

        ok1 = g.order == k**n
        checks.append(ConditionCheck(1, ok1, {} if ok1 else {"order": g.order, "k^n": k**n}))

        ok2 = dmin >= n
        w2 = {} if ok2 else {"vertex": int(degs.index(dmin)), "degree": dmin, "n": n}
        checks.append(ConditionCheck(2, ok2, w2))

        ratio_cap = n ** (1.0 - params.epsilon_prime)
        ok3 = dmax / dmin <= ratio_cap
        w3 = {} if ok3 else {"max_degree": dmax, "min_degree": dmin, "cap": ratio_cap}
        checks.append(ConditionCheck(3, ok3, w3))

        ok4 = dmax <= n**params.c
        w4 = {} if ok4 else {"max_degree": dmax, "cap": n**params.c}
        checks.append(ConditionCheck(4, ok4, w4))

        s_lo = max(1, math.ceil(n ** (1.0 - params.epsilon_prime)))
        s_hi = g.order // 2
        ok5 = True
        w5: dict = {"s_range": [s_lo, s_hi]}
        for s in range(s_lo, s_hi + 1):
            b = min_boundary(g, s)
            need = params.epsilon * dmax * s * (1.0 - math.log(s, k) / n)
            if b < need:
                ok5 = False
                w5.update({"s": s, "b": b, "required": need})
                break
        checks.append(ConditionCheck(5, ok5, w5))
        reports.append(ConditionsReport(n=n, k=k, checks=checks))
    return reports


def tillich_constant_estimate(base: BaseGraph, n_values) -> float:
    """Largest c with b(s) >= c * s * (n - log_k s) over the tested powers.

    s ranges over 1..k^n - 1; s = k^n is excluded (the bound is vacuous
    there). b(s) for s above half the order uses b(s) = b(order - s).
    """
    k = base.k
    best = math.inf
    for n in n_values:
        g = PowerGraph(base, n)
        order = g.order
        half_profile = isoperimetric_profile(g)
        for s in range(1, order):
            b = half_profile[min(s, order - s) - 1]
            denom = s * (n - math.log(s, k))
            if denom <= 0:
                continue
            best = min(best, b / denom)
    if not math.isfinite(best):
        raise InvalidSet("no usable (n, s) pair in the requested range")
    return best


# ---------------------------------------------------------------------------
# dominating sets


@dataclass
class DominatingSetResult:
    vertices: frozenset[int]
    given: frozenset[int]
    bound: float
    verified: bool
    attempts: int = 1

    def to_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "given": sorted(self.given),
            "size": len(self.vertices),
            "bound": self.bound,
            "verified": self.verified,
            "attempts": self.attempts,
        }


def _dominates(g: GraphView, S) -> bool:
    covered = set(S)
    for v in S:
        covered.update(g.neighbors(v))
    return len(covered) == g.order


def randomized_dominating_set(
    g: GraphView, W, delta: int, *, seed: int | None = None
) -> DominatingSetResult:
    """Random set U with U + W dominating and |U| within the first-moment bound.

    Samples U0 from V - W with per-vertex probability ln(d+1)/(d+1), adds
    the vertices left undominated, and retries with fresh randomness until
    |U| <= (1 + ln(d+1))/(d+1) * (order - |W|).
    """
    W = frozenset(W)
    rest = [v for v in range(g.order) if v not in W]
    for v in rest:
        if g.degree(v) < delta:
            raise InvalidSet(f"vertex {v} outside W has degree {g.degree(v)} < {delta}")
    bound = (1.0 + math.log(delta + 1)) / (delta + 1) * (g.order - len(W))
    if not rest:
        return DominatingSetResult(frozenset(), W, bound, True, attempts=0)
    p = math.log(delta + 1) / (delta + 1)
    rng = np.random.default_rng(seed)
    for attempt in range(1, DOMINATION_ATTEMPT_CAP + 1):
        draws = rng.random(len(rest))
        u0 = {v for v, x in zip(rest, draws) if x < p}
        anchored = u0 | W
        u1 = {
            v
            for v in rest
            if v not in u0 and not any(w in anchored for w in g.neighbors(v))
        }
        U = u0 | u1
        if len(U) <= bound and _dominates(g, U | W):
            return DominatingSetResult(frozenset(U), W, bound, True, attempts=attempt)
    raise AttemptsCapReached(
        f"no set within bound {bound:.3f} in {DOMINATION_ATTEMPT_CAP} attempts"
    )


def _components(g: GraphView) -> list[list[int]]:
    seen = [False] * g.order
    comps = []
    for start in range(g.order):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def ell_dominating_set(g: GraphView, ell: int) -> DominatingSetResult:
    """Set of size <= order/(ell+1) with every vertex within distance ell.

    Constructive: per component, peel a rooted spanning (BFS) tree from the
    bottom. Pick the ell-th ancestor u of a deepest remaining vertex and
    delete the subtree under u; that subtree has height <= ell, contains at
    least ell+1 vertices, and lies within distance ell of u. Whenever the
    remainder has height <= ell its root covers it; whenever it has at most
    ell vertices it already sits within ell of the last pick. Coverage is
    re-verified by multi-source BFS before returning.
    """
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    picks: set[int] = set()
    for comp in _components(g):
        if len(comp) < ell + 1:
            raise ComponentTooSmall(
                f"component of order {len(comp)} < ell + 1 = {ell + 1}"
            )
        picks.update(_peel_component(g, comp, ell))
    bound = g.order / (ell + 1)
    verified = _within_distance(g, picks, ell) and len(picks) <= bound
    return DominatingSetResult(frozenset(picks), frozenset(), bound, verified)


def _peel_component(g: GraphView, comp: list[int], ell: int) -> set[int]:
    root = min(comp)
    parent = {root: root}
    depth = {root: 0}
    children: dict[int, list[int]] = {root: []}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in parent:
                parent[w] = v
                depth[w] = depth[v] + 1
                children[w] = []
                children[v].append(w)
                queue.append(w)
    alive = set(comp)
    by_depth = sorted(comp, key=depth.__getitem__, reverse=True)
    picks: set[int] = set()
    idx = 0
    while alive:
        while by_depth[idx] not in alive:
            idx += 1
        deepest = by_depth[idx]
        if depth[deepest] <= ell:
            picks.add(root)  # everything left is within ell of the root
            break
        u = deepest
        for _ in range(ell):
            u = parent[u]
        picks.add(u)
        # remove the subtree under u; its height is <= ell because deepest
        # is a deepest surviving vertex
        stack = [u]
        while stack:
            v = stack.pop()
            if v in alive:
                alive.discard(v)
                stack.extend(children[v])
        if len(alive) <= ell:
            break  # within ell of u through u's parent chain
    return picks


def _within_distance(g: GraphView, sources, ell: int) -> bool:
    if not sources:
        return g.order == 0
    dist = {v: 0 for v in sources}
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        if dist[v] == ell:
            continue
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return len(dist) == g.order
