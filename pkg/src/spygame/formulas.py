"""Closed-form and compositional guard numbers.

Compositional rules take the children's guard numbers, not the graphs, so the
recursion stays explicit in :mod:`spygame.primeval`.
"""

from __future__ import annotations

from dataclasses import dataclass

from spygame.graph import Graph, is_complete


@dataclass(frozen=True)
class SpiderShape:
    kind: str  # "thin" | "thick"
    clique_size: int
    head_empty: bool

    def __post_init__(self) -> None:
        if self.kind not in ("thin", "thick"):
            raise ValueError(f"spider kind must be 'thin' or 'thick', got {self.kind!r}")
        if self.clique_size < 2:
            raise ValueError(f"spider clique size must be >= 2, got {self.clique_size}")


def gn_path(n: int, s: int, d: int) -> int:
    """Guard number of the path on ``n`` vertices (speed ``s >= 2``)."""
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    if s < 2:
        raise ValueError("the path formula needs s >= 2; use the solver for s = 1")
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    span = 2 * d + 2 + (2 * d) // (s - 1)
    return -(-n // span)


def gn_union(gn1: int, gn2: int) -> int:
    if gn1 < 1 or gn2 < 1:
        raise ValueError("guard numbers are >= 1")
    return max(gn1, gn2)


def gn_join(g1: Graph, g2: Graph, d: int) -> int:
    return 1 if d >= 1 or (is_complete(g1) and is_complete(g2)) else 2


def gn_spider(shape: SpiderShape, d: int) -> int:
    if d >= 1:
        return 1
    base = shape.clique_size if shape.kind == "thin" else 2
    return base if shape.head_empty else base + 1


def gn_lex(gn1: int, gn2: int, g1_has_isolated: bool, d: int) -> int:
    """Guard number of the lexicographic product ``G1 . G2`` for ``d >= 2``."""
    if d < 2:
        raise ValueError(f"the lexicographic-product rule needs d >= 2, got {d}")
    return max(gn1, gn2) if g1_has_isolated else gn1


def strong_upper(gn1: int, gn2: int) -> int:
    """Upper bound on the strong product's guard number; exact when a factor needs one guard."""
    if gn1 < 1 or gn2 < 1:
        raise ValueError("guard numbers are >= 1")
    return gn1 * gn2


class CombinedGuardStrategy:
    """Guard policy on ``G1 x G2`` (strong product) built from factor policies.

    One product guard per pair of factor guards.  Each factor policy sees the
    projection of the spy onto its factor; product guard ``(a, b)`` follows
    factor guard ``a`` in the first coordinate and ``b`` in the second.
    """

    def __init__(self, g1: Graph, g2: Graph, policy1, policy2) -> None:
        self.g1 = g1
        self.g2 = g2
        self.policy1 = policy1
        self.policy2 = policy2
        self.factor_guards: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def project(self, v: int) -> tuple[int, int]:
        return divmod(v, self.g2.n)

    def _product(self) -> tuple[int, ...]:
        a_side, b_side = self.factor_guards
        n2 = self.g2.n
        return tuple(sorted(a * n2 + b for a in a_side for b in b_side))

    def place(self, spy: int) -> tuple[int, ...]:
        u1, u2 = self.project(spy)
        self.factor_guards = (
            tuple(sorted(self.policy1.place(u1))),
            tuple(sorted(self.policy2.place(u2))),
        )
        return self._product()

    def move(self, spy: int, guards) -> tuple[int, ...]:
        if self.factor_guards is None:
            raise RuntimeError("place() must be called before move()")
        v1, v2 = self.project(spy)
        a_side, b_side = self.factor_guards
        self.factor_guards = (
            tuple(sorted(self.policy1.move(v1, a_side))),
            tuple(sorted(self.policy2.move(v2, b_side))),
        )
        return self._product()


def combine_strong_strategies(g1: Graph, g2: Graph, policy1, policy2) -> CombinedGuardStrategy:
    return CombinedGuardStrategy(g1, g2, policy1, policy2)
