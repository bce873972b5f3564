"""``spygame`` command line.

Exit codes: 0 computed, 2 input error, 3 state budget exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from spygame.expr import ParseError, graph_from_expr
from spygame.formulas import SpiderShape, gn_join, gn_lex, gn_path, gn_spider
from spygame.graph import Graph, GraphError
from spygame.io import read_graph
from spygame.primeval import GraphTooLarge, NotDecomposable, decompose, tree_guard_number
from spygame.reduction import SetCoverInstance, build_reduction, verify_reduction, write_reduction
from spygame.solver import BudgetExceeded, GameParams, Order, Winner, solve_attractor
from spygame.strategy import strategy_table

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_graph(args) -> Graph:
    if args.graph is not None:
        return graph_from_expr(args.graph)
    return read_graph(args.file)


def _graph_options(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="EXPR", help='graph expression, e.g. "P5 box P5"')
    src.add_argument("--file", metavar="PATH", help="graph in text format")


def _game_options(p: argparse.ArgumentParser, with_k: bool = True) -> None:
    p.add_argument("-s", type=int, required=True, help="spy speed")
    p.add_argument("-d", type=int, required=True, help="surveillance distance")
    if with_k:
        p.add_argument("-k", type=int, required=True, help="number of guards")


# -- commands --------------------------------------------------------------------


def cmd_solve(args, out, err, inp) -> int:
    g = _load_graph(args)
    params = GameParams(args.s, args.d, args.k)
    res = solve_attractor(g, params)
    order = Order.GUARDS_FIRST if args.guards_first else Order.SPY_FIRST
    winner = res.winner_for(order)
    data = res.to_json()
    data["order"] = order.value
    if order is Order.GUARDS_FIRST:
        data["winner"] = winner.value
        gw = res.guard_witness
        data["witness"] = {"guards_first_placement": list(gw) if gw is not None else None}
    if args.strategy_out:
        Path(args.strategy_out).write_text(_dump(strategy_table(res, winner)) + "\n")
    if args.json:
        print(_dump(data), file=out)
        return EXIT_OK
    print(winner.verdict, file=out)
    w = data["witness"]
    if "spy_start" in w:
        print(f"spy start: {w['spy_start']}", file=out)
    elif w.get("guards_first_placement") is not None:
        print(f"guards-first placement: {w['guards_first_placement']}", file=out)
    print(f"configurations: {data['config_count']} (marked {data['marked_count']})", file=out)
    return EXIT_OK


def cmd_guard_number(args, out, err, inp) -> int:
    g = _load_graph(args)
    max_k = g.n if args.max_k is None else args.max_k
    if max_k < 1:
        raise InputError("--max-k must be >= 1")
    found = None
    solved = 0
    budget_hit = False
    for k in range(1, max_k + 1):
        try:
            res = solve_attractor(g, GameParams(args.s, args.d, k))
        except BudgetExceeded as exc:
            print(f"warning: {exc}; largest solved k = {solved}", file=err)
            budget_hit = True
            break
        solved = k
        if res.winner is Winner.GUARDS:
            found = k
            break
    data = {
        "n": g.n,
        "s": args.s,
        "d": args.d,
        "max_k": max_k,
        "guard_number": found,
        "largest_solved_k": solved,
        "lower_bound": found if found is not None else solved + 1,
    }
    if args.json:
        print(_dump(data), file=out)
    elif found is not None:
        print(found, file=out)
    else:
        print(f"unknown ≥ {solved + 1}", file=out)
    return EXIT_BUDGET if budget_hit else EXIT_OK


def cmd_formula(args, out, err, inp) -> int:
    if args.which == "path":
        value = gn_path(args.n, args.s, args.d)
        inputs = {"n": args.n, "s": args.s, "d": args.d}
    elif args.which == "spider":
        shape = SpiderShape(args.kind, args.p, args.head == 0)
        value = gn_spider(shape, args.d)
        inputs = {"kind": args.kind, "p": args.p, "head": args.head, "d": args.d}
    elif args.which == "join":
        value = gn_join(graph_from_expr(args.left), graph_from_expr(args.right), args.d)
        inputs = {"left": args.left, "right": args.right, "d": args.d}
    else:
        value = gn_lex(args.gn1, args.gn2, args.isolated, args.d)
        inputs = {"gn1": args.gn1, "gn2": args.gn2, "isolated": args.isolated, "d": args.d}
    if args.json:
        print(_dump({"formula": args.which, "inputs": inputs, "value": value}), file=out)
    else:
        print(value, file=out)
    return EXIT_OK


def cmd_decompose(args, out, err, inp) -> int:
    tree = decompose(_load_graph(args), args.q)
    if args.json:
        print(_dump({"q": args.q, "tree": tree.to_dict()}), file=out)
    else:
        print(tree.to_text(), file=out)
    return EXIT_OK


def cmd_fpt_gn(args, out, err, inp) -> int:
    g = _load_graph(args)
    if args.s < 2:
        raise InputError("fpt-gn needs s >= 2")
    tree = decompose(g, args.q)
    value = tree_guard_number(tree, args.s, args.d)
    if args.json:
        data = {"n": g.n, "s": args.s, "d": args.d, "q": args.q, "root": tree.kind}
        data["guard_number"] = value
        print(_dump(data), file=out)
    else:
        print(value, file=out)
    return EXIT_OK


def cmd_reduce(args, out, err, inp) -> int:
    try:
        inst = SetCoverInstance.from_json(json.loads(Path(args.instance).read_text()))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad instance file: {exc}") from None
    red = build_reduction(inst, args.s, args.d)
    data = {"instance": inst.to_json(), "s": args.s, "d": args.d, "n_vertices": red.graph.n}
    data["params"] = {k: v for k, v in red.sidecar().items() if k != "roles"}
    if args.out:
        data["files"] = list(write_reduction(red, args.out))
    if args.verify:
        data["verification"] = verify_reduction(inst, args.s, args.d).to_json()
    if args.json:
        print(_dump(data), file=out)
        return EXIT_OK
    p = data["params"]
    print(
        f"case {p['case']}: p={p['p']} q={p['q']} q'={p['qprime']} K={p['K']} r={p['r']}, "
        f"{red.graph.n} vertices, {red.graph.m} edges",
        file=out,
    )
    for path in data.get("files", []):
        print(f"wrote {path}", file=out)
    if args.verify:
        v = data["verification"]
        verdict = "holds" if v["biconditional"] else "FAILS"
        print(
            f"min cover {v['min_cover']} (c={inst.c}), spy-first winner {v['spy_first']}: "
            f"equivalence {verdict}",
            file=out,
        )
        if v["guards_first"] is not None:
            print(f"guards-first winner with K guards: {v['guards_first']}", file=out)
    return EXIT_OK


def cmd_play(args, out, err, inp) -> int:
    from spygame.play import play_session

    g = _load_graph(args)
    res = solve_attractor(g, GameParams(args.s, args.d, args.k))
    # with --json the dialogue goes to stderr so stdout stays machine-readable
    trace = play_session(res, args.as_, inp, err if args.json else out, max_turns=args.max_turns)
    record = {"human": args.as_, "seed": args.seed, "trace": trace.to_json()}
    if args.transcript:
        with open(args.transcript, "a") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    if args.json:
        print(_dump(record), file=out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spygame", description="Exact analysis of the (s,d)-spy game.")
    parser.add_argument("--json", action="store_true", help="emit JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
        p.set_defaults(func=func)
        return p

    p = add("solve", cmd_solve, "decide the game for k guards")
    _graph_options(p)
    _game_options(p)
    p.add_argument("--guards-first", action="store_true", help="guards are placed before the spy")
    p.add_argument("--strategy-out", metavar="PATH", help="write the winner's strategy table as JSON")

    p = add("guard-number", cmd_guard_number, "least number of guards that win")
    _graph_options(p)
    _game_options(p, with_k=False)
    p.add_argument("--max-k", type=int, help="largest k to try (default: n)")

    p = add("formula", cmd_formula, "closed-form guard numbers")
    fsub = p.add_subparsers(dest="which", required=True)
    fp = fsub.add_parser("path")
    fp.add_argument("-n", type=int, required=True, help="path order")
    _game_options(fp, with_k=False)
    fp = fsub.add_parser("spider")
    fp.add_argument("--kind", choices=("thin", "thick"), required=True)
    fp.add_argument("-p", type=int, required=True, help="clique size")
    fp.add_argument("--head", type=int, default=0, help="head size (0 = empty)")
    fp.add_argument("-d", type=int, required=True)
    fp = fsub.add_parser("join")
    fp.add_argument("--left", required=True, metavar="EXPR")
    fp.add_argument("--right", required=True, metavar="EXPR")
    fp.add_argument("-d", type=int, required=True)
    fp = fsub.add_parser("lex")
    fp.add_argument("--gn1", type=int, required=True, help="guard number of the first factor")
    fp.add_argument("--gn2", type=int, required=True, help="guard number of the second factor")
    fp.add_argument("--isolated", action="store_true", help="the first factor has an isolated vertex")
    fp.add_argument("-d", type=int, required=True)
    for fp in fsub.choices.values():
        fp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")

    p = add("decompose", cmd_decompose, "primeval decomposition tree")
    _graph_options(p)
    p.add_argument("-q", type=int, required=True, help="largest leaf order (>= 4)")

    p = add("fpt-gn", cmd_fpt_gn, "guard number through the decomposition")
    _graph_options(p)
    _game_options(p, with_k=False)
    p.add_argument("-q", type=int, required=True, help="largest leaf order (>= 4)")

    p = add("reduce", cmd_reduce, "Set Cover reduction graph")
    p.add_argument("--instance", required=True, metavar="PATH", help="Set Cover instance as JSON")
    _game_options(p, with_k=False)
    p.add_argument("--verify", action="store_true", help="check the equivalence with the solver")
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.graph and PREFIX.json")

    p = add("play", cmd_play, "play against the solver")
    _graph_options(p)
    _game_options(p)
    p.add_argument("--as", dest="as_", choices=("spy", "guards"), required=True, help="side played by the human")
    p.add_argument("--seed", type=int, default=0, help="recorded in the transcript")
    p.add_argument("--max-turns", type=int, default=100, help="stop after this many rounds")
    p.add_argument("--transcript", metavar="PATH", help="append the game as a JSON line")
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    inp = stdin or sys.stdin
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out, err, inp)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BUDGET
    except GraphTooLarge as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BUDGET
    except (InputError, ParseError, GraphError, NotDecomposable, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
