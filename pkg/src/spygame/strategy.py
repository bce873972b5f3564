"""Strategies read off a :class:`~spygame.solver.SolveResult`, and game simulation.

A spy policy exposes ``start() -> vertex`` and ``move(spy, guards) -> vertex``;
a guard policy exposes ``place(spy) -> tuple`` and ``move(spy, guards) -> tuple``
(called after the spy has moved).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from spygame.graph import Graph
from spygame.solver import (
    Configuration,
    GameParams,
    SolveResult,
    Turn,
    Winner,
    guard_moves,
    is_spy_winning,
    spy_moves,
)


class StrategyError(RuntimeError):
    """A strategy was queried from a configuration its player does not win."""


class IllegalMove(RuntimeError):
    def __init__(self, message: str, configuration: Configuration, move) -> None:
        super().__init__(f"{message}: {configuration} -> {move}")
        self.configuration = configuration
        self.move = move


def is_guard_move(g: Graph, old, new) -> bool:
    """True iff each guard of ``old`` can be matched to a position of ``new`` in its closed neighbourhood."""
    if len(old) != len(new) or any(not 0 <= x < g.n for x in new):
        return False
    try:
        guard_assignment(g, old, new)
    except ValueError:
        return False
    return True


def guard_assignment(g: Graph, old, new) -> list[int]:
    """Indices into ``new`` giving a legal destination for each guard of ``old``."""
    old = list(old)
    new = list(new)
    match_of_new: list[int | None] = [None] * len(new)

    def augment(i: int, seen: set[int]) -> bool:
        for j, y in enumerate(new):
            if j in seen or not (y == old[i] or g.has_edge(old[i], y)):
                continue
            seen.add(j)
            if match_of_new[j] is None or augment(match_of_new[j], seen):
                match_of_new[j] = i
                return True
        return False

    for i in range(len(old)):
        if not augment(i, set()):
            raise ValueError(f"{tuple(new)} is not a guard move from {tuple(old)}")
    dest = [0] * len(old)
    for j, i in enumerate(match_of_new):
        dest[i] = j
    return dest


# -- extracted strategies --------------------------------------------------------


class GuardStrategy:
    """Winning guard policy: stay inside the unmarked region, least successor first."""

    def __init__(self, result: SolveResult) -> None:
        self.result = result

    def place(self, spy: int | None) -> tuple[int, ...]:
        """Placement answering ``spy``; ``None`` asks for a guards-first placement."""
        if spy is None:
            placement = self.result.guard_witness
            if placement is None:
                raise StrategyError("no guards-first placement wins")
            return placement
        placement = self.result.guard_response(spy)
        if placement is None:
            raise StrategyError(f"no winning guard placement against spy start {spy}")
        return placement

    def move(self, spy: int, guards) -> tuple[int, ...]:
        res = self.result
        cfg = Configuration(Turn.GUARDS, spy, guards)
        if res.is_marked(cfg):
            raise StrategyError(f"guards lose from {cfg}")
        for nxt in res.successors(cfg):
            if not res.is_marked(nxt):
                return nxt.guards
        raise AssertionError("fixpoint violated: unmarked guard configuration without safe move")


class SpyStrategy:
    """Winning spy policy: move to the least successor of strictly smaller rank."""

    def __init__(self, result: SolveResult) -> None:
        self.result = result

    def start(self) -> int:
        u = self.result.spy_witness
        if u is None:
            raise StrategyError("the spy has no winning start vertex")
        return u

    def move(self, spy: int, guards) -> int:
        res = self.result
        cfg = Configuration(Turn.SPY, spy, guards)
        r = res.rank(cfg)
        if r is None:
            raise StrategyError(f"spy loses from {cfg}")
        for nxt in res.successors(cfg):
            rn = res.rank(nxt)
            if rn is not None and rn < r:
                return nxt.spy
        if r == 0:
            return spy
        raise AssertionError("rank function violated: marked spy configuration without descent")


def extract_guard_strategy(result: SolveResult) -> GuardStrategy:
    return GuardStrategy(result)


def extract_spy_strategy(result: SolveResult) -> SpyStrategy:
    return SpyStrategy(result)


class AdaptiveSpy(SpyStrategy):
    """Optimal when winning; otherwise keeps the largest distance to the nearest guard."""

    def start(self) -> int:
        u = self.result.spy_witness
        if u is not None:
            return u
        block = self.result.spy_rank.reshape(self.result.graph.n, -1) >= 0
        return int(np.argmax(block.sum(axis=1)))

    def move(self, spy: int, guards) -> int:
        if self.result.is_marked(Configuration(Turn.SPY, spy, guards)):
            return super().move(spy, guards)
        dist = self.result.graph.distances()
        best = max(
            sorted(spy_moves(self.result.graph, self.result.params.s, spy)),
            key=lambda v: min(int(dist[v][x]) for x in guards),
        )
        return best


class AdaptiveGuards(GuardStrategy):
    """Optimal when winning; otherwise delays the loss (largest spy rank)."""

    def place(self, spy: int) -> tuple[int, ...]:
        placement = self.result.guard_response(spy)
        if placement is not None:
            return placement
        res = self.result
        ranks = res.spy_rank.reshape(res.graph.n, -1)[spy]
        return res.index.unrank(int(np.argmax(ranks)))

    def move(self, spy: int, guards) -> tuple[int, ...]:
        res = self.result
        cfg = Configuration(Turn.GUARDS, spy, guards)
        if not res.is_marked(cfg):
            return super().move(spy, guards)
        return max(res.successors(cfg), key=lambda c: res.rank(c)).guards


def strategy_table(result: SolveResult, side: Winner | str) -> list[list]:
    """``[configuration, move]`` pairs over every configuration the side wins from."""
    side = Winner(side)
    m = result.n_multisets
    rows = []
    if side is Winner.GUARDS:
        strat = GuardStrategy(result)
        for cid in np.flatnonzero(result.guard_rank < 0):
            spy, p = divmod(int(cid), m)
            guards = result.index.unrank(p)
            rows.append([[int(Turn.GUARDS), spy, list(guards)], list(strat.move(spy, guards))])
    else:
        strat = SpyStrategy(result)
        for cid in np.flatnonzero(result.spy_rank > 0):
            spy, p = divmod(int(cid), m)
            guards = result.index.unrank(p)
            rows.append([[int(Turn.SPY), spy, list(guards)], strat.move(spy, guards)])
    return rows


# -- simple opponents --------------------------------------------------------------


class RandomSpy:
    def __init__(self, g: Graph, s: int, rng: random.Random | None = None) -> None:
        self.g = g
        self.s = s
        self.rng = rng or random.Random(0)

    def start(self) -> int:
        return self.rng.randrange(self.g.n)

    def move(self, spy: int, guards) -> int:
        return self.rng.choice(sorted(spy_moves(self.g, self.s, spy)))


class RandomGuards:
    def __init__(self, g: Graph, k: int, rng: random.Random | None = None) -> None:
        self.g = g
        self.k = k
        self.rng = rng or random.Random(0)

    def place(self, spy: int) -> tuple[int, ...]:
        return tuple(sorted(self.rng.randrange(self.g.n) for _ in range(self.k)))

    def move(self, spy: int, guards) -> tuple[int, ...]:
        return tuple(sorted(self.rng.choice(sorted(self.g.closed_neighbors(x))) for x in guards))


class ScriptedSpy:
    """Plays a fixed start and move list, then stays put."""

    def __init__(self, start: int, moves=()) -> None:
        self._start = start
        self._moves = list(moves)

    def start(self) -> int:
        return self._start

    def move(self, spy: int, guards) -> int:
        return self._moves.pop(0) if self._moves else spy


class StayPutSpy:
    def __init__(self, start: int = 0) -> None:
        self._start = start

    def start(self) -> int:
        return self._start

    def move(self, spy: int, guards) -> int:
        return spy


class StayPutGuards:
    def __init__(self, placement) -> None:
        self.placement = tuple(sorted(placement))

    def place(self, spy: int) -> tuple[int, ...]:
        return self.placement

    def move(self, spy: int, guards) -> tuple[int, ...]:
        return tuple(guards)


# -- simulation ---------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    configuration: Configuration
    move: object

    def to_json(self) -> list:
        mv = list(self.move) if isinstance(self.move, tuple) else self.move
        return [self.configuration.to_json(), mv]


@dataclass
class Trace:
    steps: list[Step] = field(default_factory=list)
    final: Configuration | None = None
    winner: Winner | None = None
    reason: str = "max_turns"

    @property
    def spy_moves(self) -> int:
        return sum(1 for st in self.steps if st.configuration.turn is Turn.SPY)

    def spy_configurations(self) -> list[Configuration]:
        out = [st.configuration for st in self.steps if st.configuration.turn is Turn.SPY]
        if self.final is not None:
            out.append(self.final)
        return out

    def to_json(self) -> dict:
        return {
            "steps": [st.to_json() for st in self.steps],
            "final": self.final.to_json() if self.final else None,
            "winner": self.winner.value if self.winner else None,
            "reason": self.reason,
        }


def simulate(
    g: Graph,
    params: GameParams,
    spy_policy,
    guard_policy,
    max_turns: int,
    start: Configuration | None = None,
    stop_on_repeat: bool = True,
    guards_first: bool = False,
) -> Trace:
    """Play alternating turns until the spy escapes, a spy-turn configuration repeats,
    or ``max_turns`` spy moves have been made.

    With ``guards_first`` the guards are placed (``place(None)``) before the spy
    and the starting position is not checked for an escape: the spy only wins
    after a guards' move.  Every move is checked for legality; an illegal one
    raises :class:`IllegalMove`.
    """
    if start is None and guards_first:
        guards = tuple(sorted(guard_policy.place(None)))
        spy = spy_policy.start()
    elif start is None:
        spy = spy_policy.start()
        guards = tuple(sorted(guard_policy.place(spy)))
    else:
        spy, guards = start.spy, start.guards
    if not 0 <= spy < g.n or len(guards) != params.k or any(not 0 <= x < g.n for x in guards):
        raise IllegalMove("illegal initial placement", Configuration(Turn.SPY, spy, guards), None)

    trace = Trace()
    seen: set[Configuration] = set()
    cfg = Configuration(Turn.SPY, spy, guards)
    turns = 0
    while True:
        if (turns or not guards_first) and is_spy_winning(g, params.d, cfg):
            trace.winner, trace.reason = Winner.SPY, "escape"
            break
        if stop_on_repeat:
            if cfg in seen:
                trace.winner, trace.reason = Winner.GUARDS, "repetition"
                break
            seen.add(cfg)
        if turns >= max_turns:
            break
        new_spy = spy_policy.move(cfg.spy, cfg.guards)
        if new_spy not in spy_moves(g, params.s, cfg.spy):
            raise IllegalMove("spy moved too far", cfg, new_spy)
        trace.steps.append(Step(cfg, new_spy))
        gcfg = Configuration(Turn.GUARDS, new_spy, cfg.guards)
        new_guards = tuple(sorted(guard_policy.move(new_spy, cfg.guards)))
        if not is_guard_move(g, cfg.guards, new_guards):
            raise IllegalMove("guards moved illegally", gcfg, new_guards)
        trace.steps.append(Step(gcfg, new_guards))
        cfg = Configuration(Turn.SPY, new_spy, new_guards)
        turns += 1
    trace.final = cfg
    return trace


__all__ = [
    "AdaptiveGuards",
    "AdaptiveSpy",
    "GuardStrategy",
    "IllegalMove",
    "RandomGuards",
    "RandomSpy",
    "ScriptedSpy",
    "SpyStrategy",
    "StayPutGuards",
    "StayPutSpy",
    "Step",
    "StrategyError",
    "Trace",
    "extract_guard_strategy",
    "extract_spy_strategy",
    "guard_assignment",
    "guard_moves",
    "is_guard_move",
    "simulate",
    "strategy_table",
]
