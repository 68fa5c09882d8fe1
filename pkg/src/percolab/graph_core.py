"""Base graphs, degree polynomials and the retention-threshold solver.

A base graph H is a small simple connected graph given as an edge list.
Its degree polynomial P(x) = sum_i a_i x^i (a_i = number of vertices of
degree i) determines the edge-deletion probability q at which the expected
number of isolated vertices in the n-th Cartesian power equals a target.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from percolab.errors import (
    Disconnected,
    InvalidGraph,
    NonConvergence,
    ParseError,
    TargetOutOfRange,
)

SOLVER_TOL = 1e-12
SOLVER_MAX_ITER = 200


@dataclass(frozen=True)
class BaseGraph:
    """Simple connected graph on vertices 0..k-1. Immutable."""

    k: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, k: int, edges) -> "BaseGraph":
        if k < 2:
            raise InvalidGraph(f"need at least 2 vertices, got k={k}")
        seen = set()
        normalized = []
        for u, v in edges:
            if not (0 <= u < k and 0 <= v < k):
                raise InvalidGraph(f"edge ({u}, {v}) out of range for k={k}")
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InvalidGraph(f"duplicate edge {e}")
            seen.add(e)
            normalized.append(e)
        normalized.sort()
        adj: list[list[int]] = [[] for _ in range(k)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        g = cls(
            k=k,
            edges=tuple(normalized),
            adjacency=tuple(tuple(sorted(ns)) for ns in adj),
        )
        if not is_connected(g):
            raise Disconnected(f"graph on {k} vertices is not connected")
        return g

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(ns) for ns in self.adjacency)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)


def parse_graph(text: str) -> BaseGraph:
    """Parse the edge-list format: "k m" header then m lines "u v".

    Lines may end in LF or CRLF; anything after '#' on a line is a comment.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise ParseError("empty edge-list document")
    header = rows[0].split()
    if len(header) != 2:
        raise ParseError(f"header must be 'k m', got {rows[0]!r}")
    try:
        k, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParseError(f"non-integer header {rows[0]!r}") from exc
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header promises {m} edges, found {len(body)} lines")
    edges = []
    for line in body:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"edge line must be 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"non-integer endpoints in {line!r}") from exc
    return BaseGraph.from_edges(k, edges)


def load_graph(path) -> BaseGraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph(fh.read())


def is_connected(g: BaseGraph) -> bool:
    """Breadth-first reachability of all k vertices from vertex 0."""
    seen = [False] * g.k
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.k


@dataclass(frozen=True)
class DegreePolynomial:
    """P(x) = sum_i coefficients[i] * x^i, coefficients[i] = #vertices of degree i."""

    coefficients: tuple[tuple[int, int], ...]  # (degree, count), sorted by degree

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> "DegreePolynomial":
        items = tuple(sorted((d, c) for d, c in counts.items() if c))
        for d, c in items:
            if d < 1 or c < 1:
                raise InvalidGraph(f"invalid degree-polynomial term {c}*x^{d}")
        return cls(items)

    @property
    def vertex_count(self) -> int:
        return sum(c for _, c in self.coefficients)

    def evaluate(self, x: float) -> float:
        if x < 0:
            raise ValueError("degree polynomial is only evaluated at x >= 0")
        return sum(c * x**d for d, c in self.coefficients)

    def derivative(self, x: float) -> float:
        return sum(c * d * x ** (d - 1) for d, c in self.coefficients)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)


def degree_polynomial(g: BaseGraph) -> DegreePolynomial:
    counts: dict[int, int] = {}
    for d in g.degrees:
        counts[d] = counts.get(d, 0) + 1
    return DegreePolynomial.from_counts(counts)


def eval_polynomial(poly: DegreePolynomial, x: float) -> float:
    return poly.evaluate(x)


@dataclass(frozen=True)
class ThresholdSolution:
    """Root q of P(q) = target, with p = 1 - q the edge-retention probability."""

    q: float
    p: float
    target: float
    residual: float


def solve_threshold(
    poly: DegreePolynomial, lambda_n: float, n: int
) -> ThresholdSolution:
    """Solve P(q) = lambda_n^(1/n) for q in (0, 1).

    P is strictly increasing on [0, inf) with P(0) = 0 and P(1) = k, so a
    root in (0, 1) exists iff the target is below k, and it is unique.
    Newton steps are taken inside a maintained bisection bracket; any step
    that leaves the bracket falls back to the midpoint.
    """
    if lambda_n <= 0:
        raise TargetOutOfRange(f"lambda_n must be positive, got {lambda_n}")
    if n < 1:
        raise ValueError(f"exponent n must be >= 1, got {n}")
    target = lambda_n ** (1.0 / n)
    k = poly.vertex_count
    if target >= k:
        raise TargetOutOfRange(
            f"target {target} >= P(1) = {k}; no root in (0, 1)"
        )
    lo, hi = 0.0, 1.0
    q = 0.5
    for _ in range(SOLVER_MAX_ITER):
        f = poly.evaluate(q) - target
        if abs(f) <= SOLVER_TOL:
            return ThresholdSolution(q=q, p=1.0 - q, target=target, residual=abs(f))
        if f > 0:
            hi = q
        else:
            lo = q
        d = poly.derivative(q)
        step = q - f / d if d > 0 else None
        q = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
    raise NonConvergence(
        f"no root to tolerance {SOLVER_TOL} within {SOLVER_MAX_ITER} iterations"
    )
