import random
import sys
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from spygame.graph import Graph, complement, disjoint_union, join  # noqa: E402


def atlas_graphs(max_n: int, connected: bool | None = None) -> list[Graph]:
    """All graphs up to isomorphism with 1..max_n vertices (max_n <= 7)."""
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            break
        if connected is not None and nx.is_connected(G) != connected:
            continue
        out.append(Graph(G.number_of_nodes(), G.edges()))
    return out


def random_cograph(rng: random.Random, n: int) -> Graph:
    """Random cograph on ``n`` vertices built from K1 by unions and joins."""
    if n == 1:
        return Graph(1)
    left = rng.randint(1, n - 1)
    a, b = random_cograph(rng, left), random_cograph(rng, n - left)
    g = disjoint_union(a, b) if rng.random() < 0.5 else join(a, b)
    if rng.random() < 0.3:
        g = complement(g)
    return g


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 5, connected: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        edges += [(i, i + 1) for i in range(n - 1) if (i, i + 1) not in edges]
    return Graph(n, edges)


@pytest.fixture(scope="session")
def small_connected() -> list[Graph]:
    return atlas_graphs(5, connected=True)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = mod.summary_lines() if mod is not None else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
