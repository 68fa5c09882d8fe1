"""Implicit Cartesian powers H^n and explicit sparse graphs behind one view.

A vertex of H^n is encoded as an integer in base k with the least
significant digit holding coordinate 1. Adjacency, degrees and the edge
stream are computed on demand; no adjacency structure is ever materialized
for power graphs. Explicit graphs adapt user-supplied edge lists to the
same read interface so the percolation and statistics layers do not care
where a graph came from.
"""
from __future__ import annotations

from typing import Iterator, Protocol

import numpy as np

from percolab.errors import InvalidGraph, OutOfRange, ParseError
from percolab.graph_core import BaseGraph, DegreePolynomial, degree_polynomial

MAX_ORDER = 2**40  # desk-scale guardrail on k^n


class GraphView(Protocol):
    """Uniform read interface consumed by percolation, stats and bounds."""

    order: int
    num_edges: int

    def degree(self, v: int) -> int: ...

    def neighbors(self, v: int) -> list[int]: ...

    def edge_stream(self) -> Iterator[tuple[int, int]]: ...

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]: ...

    def expected_isolated(self, q: float) -> float: ...


class PowerGraph:
    """The n-th Cartesian power of a connected base graph.

    Edge-stream order (part of the reproducibility contract): coordinates
    j = 0..n-1 outermost, then base edges {a, b} with a < b in sorted
    order, then the k^(n-1) assignments of the remaining digits in
    ascending code order.
    """

    def __init__(self, base: BaseGraph, n: int):
        if n < 1:
            raise InvalidGraph(f"exponent must be >= 1, got n={n}")
        order = base.k**n
        if order > MAX_ORDER:
            raise InvalidGraph(f"order k^n = {order} exceeds cap {MAX_ORDER}")
        self.base = base
        self.n = n
        self.k = base.k
        self.order = order
        self.num_edges = n * base.num_edges * base.k ** (n - 1)
        self._places = tuple(base.k**j for j in range(n))
        self._edge_cache: tuple[np.ndarray, np.ndarray] | None = None

    # -- vertex codec ------------------------------------------------------

    def encode(self, digits) -> int:
        if len(digits) != self.n:
            raise OutOfRange(f"expected {self.n} digits, got {len(digits)}")
        code = 0
        for place, d in zip(self._places, digits):
            if not 0 <= d < self.k:
                raise OutOfRange(f"digit {d} not in [0, {self.k})")
            code += d * place
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        if not 0 <= code < self.order:
            raise OutOfRange(f"code {code} not in [0, {self.order})")
        digits = []
        for _ in range(self.n):
            digits.append(code % self.k)
            code //= self.k
        return tuple(digits)

    # -- adjacency ---------------------------------------------------------

    def degree(self, v: int) -> int:
        return sum(self.base.degree(d) for d in self.decode(v))

    def neighbors(self, v: int) -> list[int]:
        digits = self.decode(v)
        out = []
        for j, place in enumerate(self._places):
            d = digits[j]
            for w in self.base.adjacency[d]:
                out.append(v + (w - d) * place)
        return out

    def edge_stream(self) -> Iterator[tuple[int, int]]:
        rest = self.k ** (self.n - 1)
        for j, place in enumerate(self._places):
            for a, b in self.base.edges:
                span = (b - a) * place
                for rem in range(rest):
                    low = rem % place
                    high = rem // place
                    u = low + a * place + high * place * self.k
                    yield (u, u + span)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._edge_cache is None:
            if self.order > np.iinfo(np.int32).max:
                raise InvalidGraph(
                    f"edge arrays require order < 2^31, got {self.order}"
                )
            rest = self.k ** (self.n - 1)
            rem = np.arange(rest, dtype=np.int32)
            us, vs = [], []
            for place in self._places:
                low = rem % place
                base_codes = low + (rem - low) * self.k
                for a, b in self.base.edges:
                    u = (base_codes + a * place).astype(np.int32, copy=False)
                    us.append(u)
                    vs.append(u + np.int32((b - a) * place))
            self._edge_cache = (np.concatenate(us), np.concatenate(vs))
        return self._edge_cache

    # -- analytics ---------------------------------------------------------

    def degree_polynomial(self) -> DegreePolynomial:
        return degree_polynomial(self.base)

    def expected_isolated(self, q: float) -> float:
        """E[#isolated] = (sum_i a_i q^i)^n, closed form via the base polynomial."""
        if not 0 < q < 1:
            raise ValueError(f"q must be in (0, 1), got {q}")
        return self.degree_polynomial().evaluate(q) ** self.n

    @property
    def min_degree(self) -> int:
        return self.n * self.base.min_degree

    @property
    def max_degree(self) -> int:
        return self.n * self.base.max_degree

    def describe(self) -> str:
        return f"power(k={self.k}, n={self.n})"

    # edge cache is cheap to rebuild and heavy to pickle
    def __getstate__(self):
        state = self.__dict__.copy()
        state["_edge_cache"] = None
        return state


class ExplicitGraph:
    """User-supplied sparse graph adapted to the GraphView interface.

    Simple and loop-free; connectivity is not required. Edge-stream order
    is the sorted order of normalized (min, max) pairs.
    """

    def __init__(self, order: int, edges):
        if order < 1:
            raise InvalidGraph(f"order must be >= 1, got {order}")
        seen = set()
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise InvalidGraph(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InvalidGraph(f"duplicate edge {e}")
            seen.add(e)
        self.order = order
        self.edges = tuple(sorted(seen))
        self.num_edges = len(self.edges)
        adj: list[list[int]] = [[] for _ in range(order)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency = tuple(tuple(sorted(ns)) for ns in adj)
        self._edge_cache: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def parse(cls, text: str) -> "ExplicitGraph":
        # Same wire format as the base-graph edge list.
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
            order, m = int(header[0]), int(header[1])
        except ValueError as exc:
            raise ParseError(f"non-integer header {rows[0]!r}") from exc
        if len(rows) - 1 != m:
            raise ParseError(f"header promises {m} edges, found {len(rows) - 1}")
        edges = []
        for line in rows[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"edge line must be 'u v', got {line!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise ParseError(f"non-integer endpoints in {line!r}") from exc
        return cls(order, edges)

    @classmethod
    def load(cls, path) -> "ExplicitGraph":
        with open(path, "r", encoding="ascii") as fh:
            return cls.parse(fh.read())

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> list[int]:
        return list(self.adjacency[v])

    def edge_stream(self) -> Iterator[tuple[int, int]]:
        return iter(self.edges)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._edge_cache is None:
            u = np.array([e[0] for e in self.edges], dtype=np.int32)
            v = np.array([e[1] for e in self.edges], dtype=np.int32)
            self._edge_cache = (u, v)
        return self._edge_cache

    def expected_isolated(self, q: float) -> float:
        if not 0 < q < 1:
            raise ValueError(f"q must be in (0, 1), got {q}")
        return sum(q ** self.degree(v) for v in range(self.order))

    @property
    def min_degree(self) -> int:
        return min(len(ns) for ns in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(len(ns) for ns in self.adjacency)

    def describe(self) -> str:
        return f"explicit(order={self.order}, edges={self.num_edges})"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_edge_cache"] = None
        return state
