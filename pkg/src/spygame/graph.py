"""Simple undirected graphs, standard constructors, products and BFS distances.

Vertices are dense integers ``0..n-1``.  Product graphs encode the pair
``(i, j)`` as ``i * n2 + j`` so fixtures stay bit-exact.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from itertools import combinations

import numpy as np

#: Distance sentinel for unreachable pairs (distances are stored as uint16).
INF = np.iinfo(np.uint16).max


class GraphError(ValueError):
    """Raised for malformed graph input."""


class Graph:
    """Immutable simple undirected graph.

    ``labels`` optionally maps vertices to role strings (``"C"``, ``"S_2"``, ...).
    Equality and hashing consider vertex count and edge set only.
    """

    __slots__ = ("n", "_nbrs", "labels", "_edges", "_hash", "_dist")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Mapping[int, str] | None = None,
        *,
        strict: bool = False,
    ) -> None:
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if strict and v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self._nbrs = tuple(frozenset(s) for s in nbrs)
        self.labels: dict[int, str] = dict(labels) if labels else {}
        self._edges: tuple[tuple[int, int], ...] | None = None
        self._hash: int | None = None
        self._dist: np.ndarray | None = None

    # -- basic queries -----------------------------------------------------

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Sorted edge list with ``u < v``."""
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self.n) for v in sorted(self._nbrs[u]) if u < v
            )
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges())

    def vertices(self) -> range:
        return range(self.n)

    def degree_sequence(self) -> list[int]:
        return sorted(len(s) for s in self._nbrs)

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        """Subgraph on ``vertices``, renumbered ``0..len-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[w])
            for u in vertices
            for w in self._nbrs[u]
            if w in index and index[u] < index[w]
        ]
        labels = {index[v]: self.labels[v] for v in vertices if v in self.labels}
        return Graph(len(vertices), edges, labels)

    def with_labels(self, labels: Mapping[int, str]) -> Graph:
        return Graph(self.n, self.edges(), labels)

    def distances(self) -> np.ndarray:
        """Cached all-pairs distance matrix (read-only)."""
        if self._dist is None:
            dist = all_pairs_distances(self)
            dist.setflags(write=False)
            self._dist = dist
        return self._dist

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges() == other.edges()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.edges()))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- constructors --------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def spider_graph(head: Graph | None, p: int, kind: str = "thin") -> Graph:
    """Spider with head ``R`` (vertices first), clique ``C`` then stable set ``S``.

    ``s_i ~ c_j`` iff ``i == j`` (thin) or ``i != j`` (thick).
    """
    if p < 2:
        raise GraphError(f"spider needs p >= 2, got {p}")
    if kind not in ("thin", "thick"):
        raise GraphError(f"spider kind must be 'thin' or 'thick', got {kind!r}")
    r = head.n if head is not None else 0
    c0, s0 = r, r + p
    edges: list[tuple[int, int]] = list(head.edges()) if head is not None else []
    edges += [(c0 + i, c0 + j) for i, j in combinations(range(p), 2)]
    for i in range(p):
        for j in range(p):
            if (i == j) == (kind == "thin"):
                edges.append((s0 + i, c0 + j))
    edges += [(x, c0 + j) for x in range(r) for j in range(p)]
    labels = {x: "R" for x in range(r)}
    labels.update({c0 + i: "C" for i in range(p)})
    labels.update({s0 + i: "S" for i in range(p)})
    return Graph(r + 2 * p, edges, labels)


# -- operators -----------------------------------------------------------------


def complement(g: Graph) -> Graph:
    return Graph(g.n, ((u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    edges = list(g1.edges()) + [(u + off, v + off) for u, v in g2.edges()]
    return Graph(g1.n + g2.n, edges)


def join(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    edges = list(g1.edges()) + [(u + off, v + off) for u, v in g2.edges()]
    edges += [(u, v + off) for u in range(g1.n) for v in range(g2.n)]
    return Graph(g1.n + g2.n, edges)


def _product(g1: Graph, g2: Graph, adjacent) -> Graph:
    n2 = g2.n
    verts = [(i, j) for i in range(g1.n) for j in range(n2)]
    edges = [
        (a[0] * n2 + a[1], b[0] * n2 + b[1])
        for a, b in combinations(verts, 2)
        if adjacent(a, b)
    ]
    return Graph(g1.n * n2, edges)


def strong_product(g1: Graph, g2: Graph) -> Graph:
    def adjacent(a, b):
        e1 = g1.has_edge(a[0], b[0])
        e2 = g2.has_edge(a[1], b[1])
        return (a[0] == b[0] and e2) or (a[1] == b[1] and e1) or (e1 and e2)

    return _product(g1, g2, adjacent)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    def adjacent(a, b):
        return (a[0] == b[0] and g2.has_edge(a[1], b[1])) or (
            a[1] == b[1] and g1.has_edge(a[0], b[0])
        )

    return _product(g1, g2, adjacent)


def lexicographic_product(g1: Graph, g2: Graph) -> Graph:
    def adjacent(a, b):
        return (a[0] == b[0] and g2.has_edge(a[1], b[1])) or g1.has_edge(a[0], b[0])

    return _product(g1, g2, adjacent)


# -- structure -----------------------------------------------------------------


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def isolated_vertices(g: Graph) -> set[int]:
    return {v for v in range(g.n) if g.degree(v) == 0}


def all_pairs_distances(g: Graph) -> np.ndarray:
    """BFS hop counts as ``uint16``; unreachable pairs hold :data:`INF`."""
    dist = np.full((g.n, g.n), INF, dtype=np.uint16)
    cap = INF - 1
    for src in range(g.n):
        row = dist[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            du = min(int(row[u]) + 1, cap)
            for w in g.neighbors(u):
                if row[w] == INF:
                    row[w] = du
                    queue.append(w)
    return dist


def eccentricity(g: Graph, v: int) -> int:
    return int(g.distances()[v].max())
