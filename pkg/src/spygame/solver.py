"""Exact solution of the (s,d)-spy game by backward induction over configurations.

A configuration is ``(turn, spy, guards)`` where ``guards`` is a sorted tuple.
Spy-to-move configurations in which every guard is farther than ``d`` from the
spy are won by the spy.  The spy's attractor of those configurations is
computed layer by layer; everything outside it is won by the guards (an
infinite play means the spy never escaped).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import lru_cache
from itertools import product

import numpy as np

from spygame import kernels
from spygame.graph import Graph
from spygame.statespace import MultisetIndex, config_count

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 50_000_000
BUDGET_ENV = "SPYGAME_STATE_BUDGET"


def state_budget() -> int:
    """Configuration budget, overridable through ``SPYGAME_STATE_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int) -> None:
        super().__init__(f"state space needs {required} configurations, budget is {budget}")
        self.required = required
        self.budget = budget


class Turn(IntEnum):
    SPY = 0
    GUARDS = 1


class Winner(str, Enum):
    SPY = "Spy"
    GUARDS = "Guards"

    @property
    def verdict(self) -> str:
        return "Spy wins" if self is Winner.SPY else "Guards win"


class Order(str, Enum):
    SPY_FIRST = "spy-first"
    GUARDS_FIRST = "guards-first"


@dataclass(frozen=True)
class GameParams:
    s: int
    d: int
    k: int

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"spy speed must be >= 1, got {self.s}")
        if self.d < 0:
            raise ValueError(f"surveillance distance must be >= 0, got {self.d}")
        if self.k < 1:
            raise ValueError(f"guard count must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Configuration:
    turn: Turn
    spy: int
    guards: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "turn", Turn(self.turn))
        object.__setattr__(self, "guards", tuple(sorted(int(x) for x in self.guards)))

    def to_json(self) -> list:
        return [int(self.turn), self.spy, list(self.guards)]


# -- move rules ----------------------------------------------------------------


def spy_moves(g: Graph, s: int, v: int) -> frozenset[int]:
    """Closed ball of radius ``s`` around ``v``; the spy may stay put."""
    row = g.distances()[v]
    return frozenset(int(u) for u in np.flatnonzero(row <= s))


def guard_moves(g: Graph, guards) -> set[tuple[int, ...]]:
    """All canonical guard tuples reachable by moving each guard at most one edge."""
    options = [sorted(g.closed_neighbors(x)) for x in guards]
    return {tuple(sorted(choice)) for choice in product(*options)}


def is_spy_winning(g: Graph, d: int, cfg: Configuration) -> bool:
    if cfg.turn is not Turn.SPY:
        raise ValueError("spy-winning status is only defined for spy-to-move configurations")
    row = g.distances()[cfg.spy]
    return all(int(row[x]) > d for x in cfg.guards)


# -- arena ---------------------------------------------------------------------


def _csr(rows: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(len(rows) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(r) for r in rows])
    idx = np.fromiter((x for r in rows for x in r), dtype=np.int32, count=int(ptr[-1]))
    return ptr, idx


class Arena:
    """Move structure of the game on ``g`` with speed ``s`` and ``k`` guards.

    Independent of ``d``; shared between solves that differ only in distance.
    """

    def __init__(self, g: Graph, s: int, k: int) -> None:
        self.graph = g
        self.s = s
        self.k = k
        self.index = MultisetIndex(g.n, k)
        dist = g.distances()
        self.ball_ptr, self.ball_idx = _csr(
            [np.flatnonzero(dist[v] <= s).tolist() for v in range(g.n)]
        )
        self.nbr_ptr, self.nbr_idx = _csr([sorted(g.closed_neighbors(v)) for v in range(g.n)])
        self.gm_ptr, self.gm_idx = kernels.guard_move_table(
            np.ascontiguousarray(self.index.tuples), self.nbr_ptr, self.nbr_idx, self.index.table
        )

    def spy_winning_mask(self, d: int) -> np.ndarray:
        """Flat ``(n * M)`` mask of spy-winning spy-to-move configurations."""
        dist = self.graph.distances()
        tuples = self.index.tuples
        mask = np.empty((self.graph.n, self.index.size), dtype=np.uint8)
        for v in range(self.graph.n):
            mask[v] = dist[v][tuples].min(axis=1) > d
        return mask.reshape(-1)


@lru_cache(maxsize=8)
def _arena(g: Graph, s: int, k: int) -> Arena:
    return Arena(g, s, k)


# -- results -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Marked set and rank function of a solved game.

    ``spy_rank`` / ``guard_rank`` are flat arrays indexed by ``spy * M + P``;
    ``-1`` means unmarked (guards win from there), otherwise the attractor level.
    """

    graph: Graph
    params: GameParams
    arena: Arena = field(repr=False)
    spy_rank: np.ndarray = field(repr=False)
    guard_rank: np.ndarray = field(repr=False)

    @property
    def index(self) -> MultisetIndex:
        return self.arena.index

    @property
    def n_multisets(self) -> int:
        return self.arena.index.size

    @property
    def config_count(self) -> int:
        return 2 * self.graph.n * self.n_multisets

    @property
    def marked_count(self) -> int:
        return int((self.spy_rank >= 0).sum() + (self.guard_rank >= 0).sum())

    # ids ------------------------------------------------------------------

    def config_id(self, cfg: Configuration) -> int:
        n, m = self.graph.n, self.n_multisets
        if not 0 <= cfg.spy < n:
            raise ValueError(f"spy vertex {cfg.spy} out of range")
        return int(cfg.turn) * n * m + cfg.spy * m + self.index.rank(cfg.guards)

    def configuration(self, cid: int) -> Configuration:
        n, m = self.graph.n, self.n_multisets
        turn, rest = divmod(cid, n * m)
        spy, p = divmod(rest, m)
        return Configuration(Turn(turn), spy, self.index.unrank(p))

    def marked(self) -> np.ndarray:
        """Sorted ids of all marked (spy-winning region) configurations."""
        half = self.graph.n * self.n_multisets
        return np.concatenate(
            [np.flatnonzero(self.spy_rank >= 0), half + np.flatnonzero(self.guard_rank >= 0)]
        )

    def _rank_at(self, turn: Turn, spy: int, p: int) -> int:
        arr = self.spy_rank if turn is Turn.SPY else self.guard_rank
        return int(arr[spy * self.n_multisets + p])

    def rank(self, cfg: Configuration) -> int | None:
        r = self._rank_at(cfg.turn, cfg.spy, self.index.rank(cfg.guards))
        return None if r < 0 else r

    def is_marked(self, cfg: Configuration) -> bool:
        return self.rank(cfg) is not None

    def successors(self, cfg: Configuration) -> list[Configuration]:
        """Distinct successor configurations in lexicographic order."""
        if cfg.turn is Turn.SPY:
            a = self.arena
            vs = a.ball_idx[a.ball_ptr[cfg.spy] : a.ball_ptr[cfg.spy + 1]]
            return [Configuration(Turn.GUARDS, int(v), cfg.guards) for v in vs]
        a = self.arena
        p = self.index.rank(cfg.guards)
        ps = a.gm_idx[a.gm_ptr[p] : a.gm_ptr[p + 1]]
        return [Configuration(Turn.SPY, cfg.spy, self.index.unrank(int(q))) for q in ps]

    # outcomes ---------------------------------------------------------------

    def _spy_block(self) -> np.ndarray:
        return self.spy_rank.reshape(self.graph.n, self.n_multisets) >= 0

    @property
    def spy_witness(self) -> int | None:
        """Least start vertex from which the spy wins against every placement."""
        hits = np.flatnonzero(self._spy_block().all(axis=1))
        return int(hits[0]) if hits.size else None

    @property
    def guard_witness(self) -> tuple[int, ...] | None:
        """Least placement that wins for the guards when they are placed first.

        The spy is placed afterwards and moves before any check, so she may
        effectively enter at any vertex: the placement must leave every
        guards-to-move configuration ``(v, P)`` unmarked.
        """
        block = self.guard_rank.reshape(self.graph.n, self.n_multisets) >= 0
        hits = np.flatnonzero(~block.any(axis=0))
        return self.index.unrank(int(hits[0])) if hits.size else None

    @property
    def winner(self) -> Winner:
        return Winner.SPY if self.spy_witness is not None else Winner.GUARDS

    def winner_for(self, order: Order) -> Winner:
        if Order(order) is Order.SPY_FIRST:
            return self.winner
        return Winner.GUARDS if self.guard_witness is not None else Winner.SPY

    def guard_response(self, spy: int) -> tuple[int, ...] | None:
        """Least placement answering a spy start at ``spy``, or None if none wins."""
        free = np.flatnonzero(self._spy_block()[spy] == 0)
        return self.index.unrank(int(free[0])) if free.size else None

    def to_json(self) -> dict:
        winner = self.winner
        if winner is Winner.SPY:
            witness = {"spy_start": self.spy_witness}
        else:
            witness = {
                "responses": [[u, list(self.guard_response(u))] for u in range(self.graph.n)]
            }
            gw = self.guard_witness
            if gw is not None:
                witness["guards_first_placement"] = list(gw)
        return {
            "winner": winner.value,
            "k": self.params.k,
            "s": self.params.s,
            "d": self.params.d,
            "n": self.graph.n,
            "config_count": self.config_count,
            "marked_count": self.marked_count,
            "witness": witness,
        }


# -- entry points ----------------------------------------------------------------


@lru_cache(maxsize=16)
def _solve(g: Graph, s: int, d: int, k: int) -> SolveResult:
    arena = _arena(g, s, k)
    spy_rank, guard_rank = kernels.attractor(
        g.n,
        arena.index.size,
        arena.ball_ptr,
        arena.ball_idx,
        arena.gm_ptr,
        arena.gm_idx,
        arena.spy_winning_mask(d),
    )
    spy_rank.setflags(write=False)
    guard_rank.setflags(write=False)
    return SolveResult(g, GameParams(s, d, k), arena, spy_rank, guard_rank)


def solve_attractor(g: Graph, params: GameParams, budget: int | None = None) -> SolveResult:
    """Solve the game; raises :class:`BudgetExceeded` above the configuration budget."""
    if g.n < 1:
        raise ValueError("the game needs a graph with at least one vertex")
    budget = state_budget() if budget is None else budget
    required = config_count(g.n, params.k)
    if required > budget:
        raise BudgetExceeded(required, budget)
    logger.debug("solving n=%d %s (%d configurations)", g.n, params, required)
    return _solve(g, params.s, params.d, params.k)


def decide(
    g: Graph, params: GameParams, order: Order = Order.SPY_FIRST, budget: int | None = None
) -> Winner:
    return solve_attractor(g, params, budget).winner_for(order)


def decide_from(
    g: Graph, params: GameParams, cfg: Configuration, budget: int | None = None
) -> Winner:
    if len(cfg.guards) != params.k:
        raise ValueError(f"configuration has {len(cfg.guards)} guards, params say {params.k}")
    res = solve_attractor(g, params, budget)
    return Winner.SPY if res.is_marked(cfg) else Winner.GUARDS


def guard_number(
    g: Graph, s: int, d: int, k_max: int | None = None, budget: int | None = None
) -> int | None:
    """Least ``k <= k_max`` for which the guards win; ``None`` if there is none."""
    k_max = g.n if k_max is None else k_max
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    for k in range(1, k_max + 1):
        if decide(g, GameParams(s, d, k), budget=budget) is Winner.GUARDS:
            return k
    return None
