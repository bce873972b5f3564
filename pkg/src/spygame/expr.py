"""Graph expressions such as ``(P2 cart P2) u K1`` or ``P5 box file:g.txt``.

Grammar (all binary operators left-associative)::

    expr   := term (("+" | "u") term)*
    term   := factor (("box" | "cart" | "lex") factor)*
    factor := atom | "(" expr ")"
    atom   := P<n> | C<n> | K<n> | file:<path>

``box`` is the strong product, ``cart`` the cartesian product, ``lex`` the
lexicographic product, ``+`` the join and ``u`` the disjoint union.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from spygame.graph import (
    Graph,
    cartesian_product,
    complete_graph,
    cycle_graph,
    disjoint_union,
    join,
    lexicographic_product,
    path_graph,
    strong_product,
)

PRODUCT_OPS = ("box", "cart", "lex")
SUM_OPS = ("+", "u")
_PRECEDENCE = {op: 2 for op in PRODUCT_OPS} | {op: 1 for op in SUM_OPS}


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Atom:
    kind: str  # "P" | "C" | "K"
    n: int


@dataclass(frozen=True)
class FileAtom:
    path: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: GraphExpr
    right: GraphExpr


GraphExpr = Union[Atom, FileAtom, BinOp]

_TOKEN = re.compile(r"\s*(?:(?P<file>file:[^\s()]*)|(?P<word>[A-Za-z0-9_]+)|(?P<sym>[()+])|(?P<bad>\S))")
_ATOM = re.compile(r"([PCK])(\d+)")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        kind = m.lastgroup
        start = m.start(kind)
        offset = len(text[:start].encode())
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", offset)
        out.append((kind, m.group(kind), offset))
        pos = m.end()
    out.append(("end", "", len(text.encode())))
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expr(self) -> GraphExpr:
        node = self.term()
        while self.peek()[1] in SUM_OPS and self.peek()[0] in ("sym", "word"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> GraphExpr:
        node = self.factor()
        while self.peek()[0] == "word" and self.peek()[1] in PRODUCT_OPS:
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> GraphExpr:
        kind, value, offset = self.take()
        if kind == "sym" and value == "(":
            node = self.expr()
            kind, value, off2 = self.take()
            if value != ")":
                raise ParseError("expected ')'", off2)
            return node
        if kind == "file":
            if value == "file:":
                raise ParseError("empty file path", offset)
            return FileAtom(value[len("file:") :])
        if kind == "word":
            m = _ATOM.fullmatch(value)
            if m is None:
                raise ParseError(f"unknown atom {value!r}", offset)
            n = int(m.group(2))
            if n < 1:
                raise ParseError(f"{m.group(1)}{n}: vertex count must be >= 1", offset)
            if m.group(1) == "C" and n < 3:
                raise ParseError(f"C{n}: a cycle needs at least 3 vertices", offset)
            return Atom(m.group(1), n)
        if kind == "end":
            raise ParseError("unexpected end of expression", offset)
        raise ParseError(f"unexpected {value!r}", offset)


def parse_graph_expr(text: str) -> GraphExpr:
    parser = _Parser(text)
    node = parser.expr()
    kind, value, offset = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", offset)
    return node


def format_expr(node: GraphExpr) -> str:
    """Canonical text with only the parentheses the grammar requires."""
    if isinstance(node, Atom):
        return f"{node.kind}{node.n}"
    if isinstance(node, FileAtom):
        return f"file:{node.path}"
    prec = _PRECEDENCE[node.op]
    left = format_expr(node.left)
    right = format_expr(node.right)
    if isinstance(node.left, BinOp) and _PRECEDENCE[node.left.op] < prec:
        left = f"({left})"
    if isinstance(node.right, BinOp) and _PRECEDENCE[node.right.op] <= prec:
        right = f"({right})"
    return f"{left} {node.op} {right}"


_ATOMS = {"P": path_graph, "C": cycle_graph, "K": complete_graph}
_OPS = {
    "box": strong_product,
    "cart": cartesian_product,
    "lex": lexicographic_product,
    "+": join,
    "u": disjoint_union,
}


def eval_expr(node: GraphExpr) -> Graph:
    if isinstance(node, Atom):
        return _ATOMS[node.kind](node.n)
    if isinstance(node, FileAtom):
        from spygame.io import read_graph

        return read_graph(node.path)
    return _OPS[node.op](eval_expr(node.left), eval_expr(node.right))


def graph_from_expr(text: str) -> Graph:
    return eval_expr(parse_graph_expr(text))
