import io
import json
from importlib import resources

import jsonschema
import pytest

from spygame.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, main
from spygame.graph import cycle_graph, path_graph, strong_product
from spygame.io import read_graph, write_graph
from spygame.solver import GameParams, solve_attractor, spy_moves
from spygame.strategy import is_guard_move


def run(*argv, stdin: str = ""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def schema(name: str) -> dict:
    return json.loads(resources.files("spygame").joinpath(f"schemas/{name}.json").read_text())


def run_json(name: str, *argv, stdin: str = "") -> dict:
    code, out, err = run("--json", *argv, stdin=stdin)
    assert code == EXIT_OK, err
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return data


class TestSolve:
    def test_lex_product_spy_wins(self):
        code, out, _ = run("solve", "--graph", "P5 lex P5", "-s", "2", "-d", "1", "-k", "1")
        assert code == EXIT_OK and out.splitlines()[0] == "Spy wins"

    def test_guards_win(self):
        code, out, _ = run("solve", "--graph", "C4", "-s", "2", "-d", "0", "-k", "2")
        assert code == EXIT_OK and out.splitlines()[0] == "Guards win"

    def test_json(self):
        data = run_json("solve", "solve", "--graph", "C4", "-s", "2", "-d", "0", "-k", "1")
        assert data["winner"] == "Spy" and data["config_count"] == 32 and data["order"] == "spy-first"

    def test_json_flag_after_subcommand(self):
        code, out, _ = run("solve", "--json", "--graph", "C4", "-s", "2", "-d", "0", "-k", "1")
        assert json.loads(out)["winner"] == "Spy"

    def test_guards_first(self):
        data = run_json("solve", "solve", "--graph", "P3", "-s", "2", "-d", "1", "-k", "1", "--guards-first")
        assert data["winner"] == "Guards" and data["witness"]["guards_first_placement"] == [0]

    def test_file_and_strategy_out(self, tmp_path):
        gpath = tmp_path / "c4.txt"
        write_graph(cycle_graph(4), gpath)
        table = tmp_path / "table.json"
        code, out, _ = run("solve", "--file", str(gpath), "-s", "2", "-d", "0", "-k", "2", "--strategy-out", str(table))
        assert code == EXIT_OK
        rows = json.loads(table.read_text())
        res = solve_attractor(cycle_graph(4), GameParams(2, 0, 2))
        assert len(rows) == int((res.guard_rank < 0).sum())

    def test_deterministic(self):
        argv = ("--json", "solve", "--graph", "P3 box P3", "-s", "2", "-d", "0", "-k", "2")
        assert run(*argv)[1] == run(*argv)[1]


class TestGuardNumber:
    def test_king3(self):
        code, out, _ = run("guard-number", "--graph", "P3 box P3", "-s", "2", "-d", "0")
        assert code == EXIT_OK and out.strip() == "2"

    def test_unknown_within_max_k(self):
        code, out, _ = run("guard-number", "--graph", "C4", "-s", "2", "-d", "0", "--max-k", "1")
        assert code == EXIT_OK and out.strip() == "unknown ≥ 2"

    def test_budget(self, monkeypatch):
        monkeypatch.setenv("SPYGAME_STATE_BUDGET", "600")
        code, out, err = run("guard-number", "--graph", "P4 box P4", "-s", "2", "-d", "0")
        assert code == EXIT_BUDGET
        assert "largest solved k = 1" in err and out.strip() == "unknown ≥ 2"
        data = json.loads(run("--json", "guard-number", "--graph", "P4 box P4", "-s", "2", "-d", "0")[1])
        jsonschema.validate(data, schema("guard_number"))
        assert data["guard_number"] is None and data["lower_bound"] == 2

    def test_json(self):
        data = run_json("guard_number", "guard-number", "--graph", "P5", "-s", "4", "-d", "1")
        assert data["guard_number"] == 2 and data["max_k"] == 5


class TestFormula:
    def test_path(self):
        assert run("formula", "path", "-n", "10", "-s", "5", "-d", "1")[1].strip() == "3"

    @pytest.mark.parametrize(
        "argv, value",
        [
            (["spider", "--kind", "thin", "-p", "3", "-d", "0"], 3),
            (["spider", "--kind", "thick", "-p", "3", "--head", "1", "-d", "0"], 3),
            (["join", "--left", "P3", "--right", "P3", "-d", "0"], 2),
            (["lex", "--gn1", "1", "--gn2", "3", "--isolated", "-d", "2"], 3),
        ],
    )
    def test_json(self, argv, value):
        data = run_json("formula", "formula", *argv)
        assert data["value"] == value and data["formula"] == argv[0]

    def test_formula_json_after_name(self):
        code, out, _ = run("formula", "path", "--json", "-n", "5", "-s", "2", "-d", "1")
        assert json.loads(out)["value"] == 1

    def test_domain_error(self):
        code, _, err = run("formula", "path", "-n", "5", "-s", "1", "-d", "0")
        assert code == EXIT_INPUT and err


class TestDecompose:
    def test_text(self):
        code, out, _ = run("decompose", "--graph", "C4", "-q", "4")
        assert code == EXIT_OK and out.startswith("join")

    def test_json(self):
        data = run_json("decompose", "decompose", "--graph", "P4", "-q", "5")
        assert data["tree"]["kind"] == "spider"

    def test_not_decomposable(self):
        code, _, err = run("decompose", "--graph", "C7", "-q", "4")
        assert code == EXIT_INPUT and err

    def test_fpt(self):
        assert run("fpt-gn", "--graph", "P3 + P3", "-s", "2", "-d", "0", "-q", "4")[1].strip() == "2"
        data = run_json("fpt_gn", "fpt-gn", "--graph", "C4", "-s", "2", "-d", "0", "-q", "4")
        assert data["guard_number"] == 2 and data["root"] == "join"


class TestReduce:
    def test_verify_and_files(self, tmp_path):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({"universe": 3, "sets": [[1, 2], [2, 3], [1, 3]], "c": 2}))
        prefix = tmp_path / "red"
        data = run_json("reduce", "reduce", "--instance", str(inst), "-s", "3", "-d", "0", "--verify", "--out", str(prefix))
        assert data["n_vertices"] == 9 and data["params"]["K"] == 4
        assert data["verification"]["biconditional"] is True
        assert read_graph(f"{prefix}.graph").n == 9
        assert json.loads(open(f"{prefix}.json").read())["case"] == 1

    def test_text(self, tmp_path):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({"universe": 1, "sets": [[1]], "c": 1}))
        code, out, _ = run("reduce", "--instance", str(inst), "-s", "2", "-d", "0", "--verify")
        assert code == EXIT_OK and "case 2" in out and "equivalence holds" in out

    def test_bad_instance(self, tmp_path):
        inst = tmp_path / "inst.json"
        inst.write_text('{"universe": 2, "sets": [[1]], "c": 1}')
        assert run("reduce", "--instance", str(inst), "-s", "2", "-d", "0")[0] == EXIT_INPUT
        inst.write_text("not json")
        assert run("reduce", "--instance", str(inst), "-s", "2", "-d", "0")[0] == EXIT_INPUT
        assert run("reduce", "--instance", str(tmp_path / "none.json"), "-s", "2", "-d", "0")[0] == EXIT_INPUT


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["solve", "--graph", "P0", "-s", "2", "-d", "0", "-k", "1"],
            ["solve", "--graph", "P3 box", "-s", "2", "-d", "0", "-k", "1"],
            ["solve", "--graph", "P3", "-s", "0", "-d", "0", "-k", "1"],
            ["solve", "--file", "/nonexistent/graph.txt", "-s", "2", "-d", "0", "-k", "1"],
            ["solve", "--graph", "P3", "-s", "2", "-d", "0"],
            ["solve", "-s", "2", "-d", "0", "-k", "1"],
            ["nonsense"],
        ],
    )
    def test_input_errors(self, argv):
        code, _, err = run(*argv)
        assert code == EXIT_INPUT and err

    def test_parse_error_reports_offset(self):
        _, _, err = run("solve", "--graph", "P3 box Q2", "-s", "2", "-d", "0", "-k", "1")
        assert "byte 7" in err

    def test_budget_exit(self, monkeypatch):
        monkeypatch.setenv("SPYGAME_STATE_BUDGET", "10")
        assert run("solve", "--graph", "P5", "-s", "2", "-d", "0", "-k", "1")[0] == EXIT_BUDGET


class TestPlay:
    def test_human_spy_wins_on_c4(self, tmp_path):
        transcript = tmp_path / "t.jsonl"
        # the spy starts on 0, the guard answers on 0 or a neighbour; 2 is two steps away
        script = "0\n7\n2\n"
        code, out, _ = run(
            "play", "--graph", "C4", "-s", "2", "-d", "0", "-k", "1", "--as", "spy",
            "--transcript", str(transcript), stdin=script,
        )
        assert code == EXIT_OK
        assert "illegal" in out and "Spy wins" in out
        record = json.loads(transcript.read_text().splitlines()[0])
        jsonschema.validate(record, schema("play"))
        assert record["trace"]["winner"] == "Spy"

    def test_human_guards_lose_with_one_guard(self):
        data = run_json(
            "play", "play", "--graph", "C4", "-s", "2", "-d", "0", "-k", "1", "--as", "guards",
            stdin="0\npass\npass\npass\n",
        )
        assert data["trace"]["winner"] == "Spy" and data["human"] == "guards"

    def test_quit_and_eof(self):
        data = run_json("play", "play", "--graph", "P3", "-s", "2", "-d", "1", "-k", "1", "--as", "spy", stdin="1\nquit\n")
        assert data["trace"]["reason"] == "quit" and data["trace"]["final"] is None
        data = run_json("play", "play", "--graph", "P3", "-s", "2", "-d", "1", "-k", "1", "--as", "spy", stdin="")
        assert data["trace"]["reason"] == "quit"

    def test_spy_validation_matches_rules(self):
        g = strong_product(path_graph(3), path_graph(2))
        for v in range(g.n):
            for w in range(g.n):
                _, out, _ = run(
                    "play", "--graph", "P3 box P2", "-s", "1", "-d", "2", "-k", "1", "--as", "spy",
                    stdin=f"{v}\n{w}\nquit\n",
                )
                assert ("illegal" in out) == (w not in spy_moves(g, 1, v))

    def test_guard_validation_matches_rules(self):
        g = path_graph(4)
        for old in [(0, 0), (0, 3), (1, 2)]:
            for a in range(4):
                for b in range(a, 4):
                    _, out, _ = run(
                        "play", "--graph", "P4", "-s", "1", "-d", "3", "-k", "2", "--as", "guards",
                        stdin=f"{old[0]} {old[1]}\n{a} {b}\nquit\n",
                    )
                    assert ("illegal" in out) == (not is_guard_move(g, old, (a, b)))
