"""Primeval decomposition of graphs with few P4's and the guard number computed from it.

Case detection is brute force over small vertex subsets (bounded by ``q``),
which is fine at the scale where the answers can also be cross-checked
against the exact solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from spygame.formulas import SpiderShape, gn_join, gn_spider, gn_union
from spygame.graph import Graph, complement, connected_components, is_complete
from spygame.solver import guard_number


class NotDecomposable(ValueError):
    """No case of the decomposition applies; the input is not a (q, q-4)-graph."""


class GraphTooLarge(ValueError):
    pass


MAX_SUBSETS = 500_000


# -- P4 machinery ------------------------------------------------------------------


def induced_p4s(g: Graph, vertices=None) -> list[tuple[int, int, int, int]]:
    """Induced P4's as ``(end, mid, mid, end)`` paths, endpoints adjacent to the next entry."""
    verts = sorted(range(g.n) if vertices is None else vertices)
    out = []
    for quad in combinations(verts, 4):
        deg = {v: sum(g.has_edge(v, w) for w in quad if w != v) for v in quad}
        if sum(deg.values()) != 6 or sorted(deg.values()) != [1, 1, 2, 2]:
            continue
        ends = [v for v in quad if deg[v] == 1]
        mids = [v for v in quad if deg[v] == 2]
        a = ends[0]
        b = mids[0] if g.has_edge(a, mids[0]) else mids[1]
        c = mids[1] if b == mids[0] else mids[0]
        out.append((a, b, c, ends[1]))
    return out


def is_qq4(g: Graph, q: int, max_subsets: int = MAX_SUBSETS) -> bool:
    """Every set of at most ``q`` vertices induces at most ``q - 4`` P4's."""
    if q < 4:
        raise ValueError(f"q must be >= 4, got {q}")
    p4s = induced_p4s(g)
    if len(p4s) <= q - 4:
        return True
    size = min(q, g.n)
    # P4 counts only grow with the vertex set, so sets of exactly ``size`` suffice.
    if comb(g.n, size) > max_subsets:
        raise GraphTooLarge(f"{comb(g.n, size)} subsets of size {size} exceed the budget")
    masks = [sum(1 << v for v in p) for p in p4s]
    for sub in combinations(range(g.n), size):
        sm = sum(1 << v for v in sub)
        if sum(1 for pm in masks if pm & sm == pm) > q - 4:
            return False
    return True


def p4_fewness(g: Graph, max_subsets: int = MAX_SUBSETS) -> int:
    """Least ``q >= 4`` such that ``g`` is a (q, q-4)-graph."""
    bound = max(4, g.n, len(induced_p4s(g)) + 4)
    for q in range(4, bound + 1):
        if is_qq4(g, q, max_subsets):
            return q
    return bound


def p_components(g: Graph) -> list[list[int]]:
    """Maximal p-connected vertex sets (classes of overlapping induced P4's), singletons included."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in induced_p4s(g):
        root = find(p[0])
        for v in p[1:]:
            parent[find(v)] = root
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_p_connected(g: Graph, vertices) -> bool:
    """Brute force: every nontrivial bipartition of ``vertices`` has a crossing induced P4."""
    verts = sorted(vertices)
    if len(verts) == 1:
        return True
    p4s = induced_p4s(g, verts)
    first, rest = verts[0], verts[1:]
    for r in range(len(rest)):
        for extra in combinations(rest, r):
            side = {first, *extra}
            if not any(0 < len(side.intersection(p)) < 4 for p in p4s):
                return False
    return True


def is_separable(g: Graph, h1, h2) -> bool:
    """Every P4 of ``G[H1 u H2]`` meeting both sides has its midpoints in H1, endpoints in H2."""
    h1, h2 = set(h1), set(h2)
    for a, b, c, d in induced_p4s(g, h1 | h2):
        quad = {a, b, c, d}
        if quad <= h1 or quad <= h2:
            continue
        if not ({b, c} <= h1 and {a, d} <= h2):
            return False
    return True


# -- spiders -------------------------------------------------------------------------


def verify_spider(g: Graph, R, C, S) -> str:
    """Classify ``(R, C, S)`` as ``"thin"``, ``"thick"`` or ``"invalid"``.

    The pairing ``c_i <-> s_i`` is derived from the adjacencies; for ``p = 2``
    thin and thick coincide and ``"thin"`` is reported.
    """
    R, C, S = list(R), list(C), list(S)
    parts = set(R) | set(C) | set(S)
    if len(parts) != g.n or len(R) + len(C) + len(S) != g.n or parts != set(range(g.n)):
        return "invalid"
    p = len(C)
    if p < 2 or len(S) != p:
        return "invalid"
    if any(not g.has_edge(a, b) for a, b in combinations(C, 2)):
        return "invalid"
    if any(g.has_edge(a, b) for a, b in combinations(S, 2)):
        return "invalid"
    for r in R:
        if any(not g.has_edge(r, c) for c in C) or any(g.has_edge(r, x) for x in S):
            return "invalid"
    cset = set(C)
    thin = [g.neighbors(x) & cset for x in S]
    if all(len(nb) == 1 for nb in thin) and len(set().union(*thin)) == p:
        return "thin"
    missing = [cset - g.neighbors(x) for x in S]
    if all(len(mb) == 1 for mb in missing) and len(set().union(*missing)) == p:
        return "thick"
    return "invalid"


def find_spider(g: Graph):
    """``(kind, R, C, S)`` with ``S`` ordered to pair with ``C``, or ``None``."""
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    if len(leaves) >= 2:
        C = [next(iter(g.neighbors(x))) for x in leaves]
        if len(set(C)) == len(C):
            R = sorted(set(range(g.n)) - set(C) - set(leaves))
            if verify_spider(g, R, C, leaves) == "thin":
                return "thin", R, C, leaves
    # a thick spider is a thin spider with C and S swapped in the complement
    gc = complement(g)
    cands = [v for v in range(g.n) if gc.degree(v) == 1]
    if len(cands) >= 3:
        S = [next(iter(gc.neighbors(c))) for c in cands]
        if len(set(S)) == len(S):
            R = sorted(set(range(g.n)) - set(cands) - set(S))
            if verify_spider(g, R, cands, S) == "thick":
                return "thick", R, cands, S
    return None


# -- separable p-components ----------------------------------------------------------


def reduce_separable(g: Graph, H, H1, H2) -> Graph:
    """``G[H]`` plus two vertices standing in for ``G - H``.

    Both new vertices are adjacent to all of ``H1`` and none of ``H2``; they are
    adjacent to each other iff ``G - H`` is complete.  ``H`` keeps its sorted order,
    the substitutes are the last two vertices.
    """
    H = sorted(H)
    h1, h2 = set(H1), set(H2)
    if h1 & h2 or h1 | h2 != set(H):
        raise ValueError("H1 and H2 must partition H")
    outside = [v for v in range(g.n) if v not in h1 | h2]
    if not outside:
        raise ValueError("G - H is empty")
    for x in outside:
        if any(not g.has_edge(x, y) for y in h1) or any(g.has_edge(x, y) for y in h2):
            raise ValueError(f"vertex {x} of G - H violates the H1/H2 adjacency condition")
    index = {v: i for i, v in enumerate(H)}
    v1, v2 = len(H), len(H) + 1
    edges = [(index[a], index[b]) for a, b in g.edges() if a in index and b in index]
    edges += [(v, index[y]) for v in (v1, v2) for y in sorted(h1)]
    if is_complete(g.induced_subgraph(outside)):
        edges.append((v1, v2))
    labels = {index[y]: ("H1" if y in h1 else "H2") for y in H}
    labels.update({v1: "v1", v2: "v2"})
    return Graph(len(H) + 2, edges, labels)


def find_separable_component(g: Graph, q: int):
    """``(H, H1, H2)`` for a separable p-component with ``|H| < q`` satisfying the
    outside-adjacency condition, or ``None``."""
    for H in p_components(g):
        if len(H) < 4 or len(H) >= q or len(H) == g.n:
            continue
        hset = set(H)
        outside = [v for v in range(g.n) if v not in hset]
        h1 = sorted(g.neighbors(outside[0]) & hset)
        if any(sorted(g.neighbors(x) & hset) != h1 for x in outside[1:]):
            continue
        h2 = sorted(hset - set(h1))
        if not h1 or not h2:
            continue
        if is_separable(g, h1, h2):
            return H, h1, h2
    return None


# -- decomposition tree ----------------------------------------------------------------


@dataclass
class PrimevalNode:
    """Decomposition tree node.  ``vertices`` are ids in the decomposed root graph."""

    kind: str  # leaf | union | join | spider | separable
    vertices: tuple[int, ...]
    graph: Graph = field(repr=False)
    children: list[PrimevalNode] = field(default_factory=list)
    complete: tuple[bool, ...] = ()
    shape: SpiderShape | None = None
    R: tuple[int, ...] = ()
    C: tuple[int, ...] = ()
    S: tuple[int, ...] = ()
    H: tuple[int, ...] = ()
    H1: tuple[int, ...] = ()
    H2: tuple[int, ...] = ()
    reduced: Graph | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "vertices": list(self.vertices)}
        if self.kind == "join":
            out["complete"] = list(self.complete)
        if self.kind == "spider":
            out.update(
                spider=self.shape.kind,
                p=self.shape.clique_size,
                R=list(self.R),
                C=list(self.C),
                S=list(self.S),
            )
        if self.kind == "separable":
            out.update(
                H=list(self.H),
                H1=list(self.H1),
                H2=list(self.H2),
                reduced={"n": self.reduced.n, "edges": [list(e) for e in self.reduced.edges()]},
            )
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out

    def to_text(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = f"{pad}{self.kind} {list(self.vertices)}"
        if self.kind == "join":
            head += f" complete={list(self.complete)}"
        elif self.kind == "spider":
            head += (
                f" {self.shape.kind} p={self.shape.clique_size}"
                f" R={list(self.R)} C={list(self.C)} S={list(self.S)}"
            )
        elif self.kind == "separable":
            head += f" H1={list(self.H1)} H2={list(self.H2)} reduced_n={self.reduced.n}"
        lines = [head] + [c.to_text(indent + 1) for c in self.children]
        return "\n".join(lines)


def decompose(g: Graph, q: int) -> PrimevalNode:
    """Primeval decomposition tree.

    Subtrees try leaf, union/join, spider, separable in that order.  The root
    tries the structural cases first and is a leaf only when none applies, so
    a small graph still shows its top-level structure.
    """
    if q < 4:
        raise ValueError(f"q must be >= 4, got {q}")
    return _decompose(g, tuple(range(g.n)), q, is_root=True)


def _decompose(root: Graph, verts: tuple[int, ...], q: int, is_root: bool = False) -> PrimevalNode:
    g = root.induced_subgraph(verts)

    def sub(local) -> PrimevalNode:
        return _decompose(root, tuple(verts[i] for i in local), q)

    def orig(local) -> tuple[int, ...]:
        return tuple(verts[i] for i in local)

    if g.n <= q and not (is_root and g.n > 1):
        return PrimevalNode("leaf", verts, g)
    comps = connected_components(g)
    if len(comps) > 1:
        return PrimevalNode("union", verts, g, [sub(c) for c in comps])
    cocomps = connected_components(complement(g))
    if len(cocomps) > 1:
        children = [sub(c) for c in cocomps]
        flags = tuple(is_complete(ch.graph) for ch in children)
        return PrimevalNode("join", verts, g, children, complete=flags)
    spider = find_spider(g)
    if spider is not None:
        kind, R, C, S = spider
        shape = SpiderShape(kind, len(C), not R)
        children = [sub(R)] if R else []
        return PrimevalNode(
            "spider", verts, g, children, shape=shape, R=orig(R), C=orig(C), S=orig(S)
        )
    sep = find_separable_component(g, q)
    if sep is not None:
        H, h1, h2 = sep
        rest = [v for v in range(g.n) if v not in set(H)]
        return PrimevalNode(
            "separable",
            verts,
            g,
            [sub(rest)],
            H=orig(H),
            H1=orig(h1),
            H2=orig(h2),
            reduced=reduce_separable(g, H, h1, h2),
        )
    if g.n <= q:
        return PrimevalNode("leaf", verts, g)
    raise NotDecomposable(f"no decomposition case applies to the subgraph on {list(verts)}")


def tree_guard_number(node: PrimevalNode, s: int, d: int, budget: int | None = None) -> int:
    if node.kind == "leaf":
        return guard_number(node.graph, s, d, budget=budget)
    if node.kind == "union":
        vals = [tree_guard_number(c, s, d, budget) for c in node.children]
        out = vals[0]
        for v in vals[1:]:
            out = gn_union(out, v)
        return out
    if node.kind == "join":
        first = node.children[0].graph
        rest_verts = [i for i, v in enumerate(node.vertices) if v not in set(node.children[0].vertices)]
        return gn_join(first, node.graph.induced_subgraph(rest_verts), d)
    if node.kind == "spider":
        return gn_spider(node.shape, d)
    if node.kind == "separable":
        return guard_number(node.reduced, s, d, budget=budget)
    raise ValueError(f"unknown node kind {node.kind!r}")


def fpt_guard_number(g: Graph, s: int, d: int, q: int, budget: int | None = None) -> int:
    """Guard number via the primeval decomposition of a (q, q-4)-graph (``s >= 2``)."""
    if s < 2:
        raise ValueError("the decomposition rules need s >= 2")
    return tree_guard_number(decompose(g, q), s, d, budget)
