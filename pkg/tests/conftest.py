"""Shared fixtures: canonical base graphs, a small-graph corpus, and the
acceptance-criteria summary printed after the run."""
from __future__ import annotations

import random

import pytest

from percolab import parse_graph
from percolab.power_graph import ExplicitGraph

K2_TEXT = "2 1\n0 1\n"
K3_TEXT = "3 3\n0 1\n0 2\n1 2\n"
P3_TEXT = "3 2\n0 1\n1 2\n"

_ACCEPTANCE_RESULTS: list[tuple[int, bool, str]] = []


def record_criterion(index: int, passed: bool, detail: str) -> None:
    _ACCEPTANCE_RESULTS.append((index, passed, detail))
    assert passed, f"criterion {index}: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for index, passed, detail in sorted(_ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"  criterion {index:2d}: {status} - {detail}")


@pytest.fixture(scope="session")
def k2():
    return parse_graph(K2_TEXT)


@pytest.fixture(scope="session")
def k3():
    return parse_graph(K3_TEXT)


@pytest.fixture(scope="session")
def p3():
    return parse_graph(P3_TEXT)


def path_graph(n: int) -> ExplicitGraph:
    return ExplicitGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> ExplicitGraph:
    return ExplicitGraph(n, [(i, (i + 1) % n) for i in range(n)])


def grid_graph(rows: int, cols: int) -> ExplicitGraph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return ExplicitGraph(rows * cols, edges)


def random_connected_graph(n: int, extra_edges: int, seed: int) -> ExplicitGraph:
    rng = random.Random(seed)
    edges = set()
    # random spanning tree, then extra chords
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        edges.add(tuple(sorted((order[i], rng.choice(order[:i])))))
    while len(edges) < n - 1 + extra_edges:
        u, v = rng.sample(range(n), 2)
        edges.add(tuple(sorted((u, v))))
    return ExplicitGraph(n, sorted(edges))


@pytest.fixture(scope="session")
def graph_corpus():
    """>= 20 small connected graphs: paths, cycles, grids, random."""
    corpus = []
    for n in (5, 6, 7, 8, 9, 10):
        corpus.append((f"path_{n}", path_graph(n)))
    for n in (5, 6, 7, 8, 9, 10):
        corpus.append((f"cycle_{n}", cycle_graph(n)))
    for rows, cols in ((2, 3), (2, 4), (3, 3), (3, 4), (4, 4)):
        corpus.append((f"grid_{rows}x{cols}", grid_graph(rows, cols)))
    for i, (n, extra) in enumerate(((12, 6), (20, 10), (30, 15), (40, 20))):
        corpus.append((f"random_{n}", random_connected_graph(n, extra, seed=100 + i)))
    assert len(corpus) >= 20
    return corpus


@pytest.fixture()
def base_file(tmp_path):
    """Write an edge-list document to disk and return its path."""

    def write(text: str, name: str = "base.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="ascii")
        return str(path)

    return write
