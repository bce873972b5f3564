"""Graph text format.

::

    # optional comments
    n 5
    0 1
    1 2

Edges are 0-based, one per line; duplicate edges and self-loops are rejected.
"""

from __future__ import annotations

from pathlib import Path

from spygame.graph import Graph, GraphError


def parse_graph(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphError(f"line {lineno}: expected 'n <count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 1:
                raise GraphError(f"line {lineno}: vertex count must be >= 1")
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
        edges.append((u, v))
    if n is None:
        raise GraphError("missing 'n <count>' header")
    seen = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate edge {u} {v}")
        seen.add(key)
    return Graph(n, edges, strict=True)


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))
