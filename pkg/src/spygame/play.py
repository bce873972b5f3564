"""Line-oriented game against the solver.

The human types vertex ids: one for the spy, ``k`` space-separated for the
guards.  ``pass`` keeps the current position and ``quit`` ends the game.
Illegal input is reported and asked again.
"""

from __future__ import annotations

from spygame.solver import Configuration, SolveResult, Turn, Winner, is_spy_winning, spy_moves
from spygame.strategy import AdaptiveGuards, AdaptiveSpy, Step, Trace, is_guard_move


class Quit(Exception):
    pass


def _ask(prompt: str, inp, out) -> str:
    print(prompt, end="", file=out, flush=True)
    line = inp.readline()
    if not line:
        raise Quit
    line = line.strip()
    if line == "quit":
        raise Quit
    return line


def _read_spy(res: SolveResult, inp, out, current: int | None) -> int:
    g, s = res.graph, res.params.s
    while True:
        line = _ask("spy> ", inp, out)
        if line == "pass" and current is not None:
            return current
        try:
            v = int(line)
        except ValueError:
            print("enter a vertex id, 'pass' or 'quit'", file=out)
            continue
        if current is None and 0 <= v < g.n:
            return v
        if current is not None and v in spy_moves(g, s, current):
            return v
        print(f"illegal: {v} is not within {s} of {current}" if current is not None
              else f"illegal: no vertex {v}", file=out)


def _read_guards(res: SolveResult, inp, out, current: tuple[int, ...] | None) -> tuple[int, ...]:
    g, k = res.graph, res.params.k
    while True:
        line = _ask("guards> ", inp, out)
        if line == "pass" and current is not None:
            return current
        try:
            new = tuple(sorted(int(x) for x in line.split()))
        except ValueError:
            print(f"enter {k} vertex ids, 'pass' or 'quit'", file=out)
            continue
        if len(new) != k or any(not 0 <= x < g.n for x in new):
            print(f"illegal: need {k} vertex ids in 0..{g.n - 1}", file=out)
            continue
        if current is not None and not is_guard_move(g, current, new):
            print(f"illegal: guards cannot reach {list(new)} from {list(current)}", file=out)
            continue
        return new


def play_session(res: SolveResult, human: str, inp, out, max_turns: int = 100) -> Trace:
    """Run one spy-first game; the machine plays the side the human does not."""
    if human not in ("spy", "guards"):
        raise ValueError(f"human side must be 'spy' or 'guards', got {human!r}")
    g, d = res.graph, res.params.d
    machine_spy = AdaptiveSpy(res)
    machine_guards = AdaptiveGuards(res)
    print(f"{g.n} vertices, s={res.params.s} d={d} k={res.params.k}; solver: {res.winner.verdict}",
          file=out)
    trace = Trace()
    seen: set[Configuration] = set()
    try:
        if human == "spy":
            spy = _read_spy(res, inp, out, None)
            guards = tuple(sorted(machine_guards.place(spy)))
        else:
            spy = machine_spy.start()
            print(f"spy starts at {spy}", file=out)
            guards = _read_guards(res, inp, out, None)
        cfg = Configuration(Turn.SPY, spy, guards)
        turns = 0
        while True:
            print(f"spy {cfg.spy}, guards {list(cfg.guards)}", file=out)
            if is_spy_winning(g, d, cfg):
                trace.winner, trace.reason = Winner.SPY, "escape"
                break
            if cfg in seen:
                trace.winner, trace.reason = Winner.GUARDS, "repetition"
                break
            seen.add(cfg)
            if turns >= max_turns:
                trace.reason = "max_turns"
                break
            if human == "spy":
                new_spy = _read_spy(res, inp, out, cfg.spy)
            else:
                new_spy = machine_spy.move(cfg.spy, cfg.guards)
                print(f"spy moves to {new_spy}", file=out)
            trace.steps.append(Step(cfg, new_spy))
            gcfg = Configuration(Turn.GUARDS, new_spy, cfg.guards)
            if human == "guards":
                new_guards = _read_guards(res, inp, out, cfg.guards)
            else:
                new_guards = tuple(sorted(machine_guards.move(new_spy, cfg.guards)))
            trace.steps.append(Step(gcfg, new_guards))
            cfg = Configuration(Turn.SPY, new_spy, new_guards)
            turns += 1
    except Quit:
        trace.reason = "quit"
    else:
        trace.final = cfg
    if trace.winner is not None:
        print(f"{trace.winner.verdict} ({trace.reason})", file=out)
    else:
        print(f"game ended ({trace.reason})", file=out)
    return trace
