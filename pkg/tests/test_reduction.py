import json
import random

import networkx as nx
import pytest

from spygame.io import read_graph
from spygame.reduction import (
    CASE3_UNIT_DISTANCE_REPAIR,
    SetCoverInstance,
    brute_min_cover,
    build_reduction,
    classify_case,
    enumerate_instances,
    reduction_params,
    verify_reduction,
    write_reduction,
)
from spygame.solver import Winner

TRIANGLE = SetCoverInstance(3, [{0, 1}, {1, 2}, {0, 2}], 2)
SINGLETONS = SetCoverInstance(3, [{0}, {1}, {2}], 2)
WHOLE = SetCoverInstance(3, [{0, 1, 2}], 1)
REPRESENTATIVES = {1: (3, 0), 2: (2, 0), 3: (3, 1), 4: (3, 3), 5: (2, 1), 6: (4, 3)}


def random_instance(rng: random.Random) -> SetCoverInstance:
    n = rng.randint(1, 5)
    m = rng.randint(1, 5)
    sets = [{x for x in range(n) if rng.random() < 0.5} or {rng.randrange(n)} for _ in range(m)]
    for x in range(n):
        if not any(x in s for s in sets):
            sets[rng.randrange(m)].add(x)
    return SetCoverInstance(n, sets, rng.randint(1, m))


class TestInstance:
    def test_validation(self):
        with pytest.raises(ValueError):
            SetCoverInstance(3, [{0, 1}], 1)
        with pytest.raises(ValueError):
            SetCoverInstance(2, [{0, 1}, set()], 1)
        with pytest.raises(ValueError):
            SetCoverInstance(2, [{0, 1}], 2)

    def test_json_is_one_based(self):
        data = TRIANGLE.to_json()
        assert data == {"universe": 3, "sets": [[1, 2], [2, 3], [1, 3]], "c": 2}
        assert SetCoverInstance.from_json(data) == TRIANGLE

    def test_brute_min_cover(self):
        assert brute_min_cover(TRIANGLE) == 2
        assert brute_min_cover(WHOLE) == 1
        assert brute_min_cover(SINGLETONS) == 3

    def test_enumeration_counts(self):
        insts = list(enumerate_instances(3, 3, 2))
        assert len(insts) == len(set(insts)) == 99
        assert all(i.universe <= 3 and i.m <= 3 and i.c <= 2 for i in insts)


class TestParams:
    @pytest.mark.parametrize("s, d, case", [(3, 1, 3), (2, 1, 5), (4, 3, 6), (3, 0, 1), (2, 0, 2), (3, 3, 4)])
    def test_classify(self, s, d, case):
        assert classify_case(s, d) == case

    def test_classify_partition(self):
        seen = set()
        for s in range(2, 9):
            for d in range(9):
                case = classify_case(s, d)
                seen.add(case)
                if case >= 4:
                    assert d >= 1
        assert seen == set(range(1, 7))

    def test_classify_rejects(self):
        with pytest.raises(ValueError):
            classify_case(1, 0)

    @pytest.mark.parametrize(
        "s, d, c, expected",
        [(3, 1, 3, (2, 0, 0, 3)), (3, 0, 3, (1, 1, 1, 5)), (2, 0, 3, (1, 0, 2, 5))],
    )
    def test_tabulated_values(self, s, d, c, expected):
        p = reduction_params(s, d, c)
        assert (p.p, p.q, p.qprime, p.K) == expected

    def test_remainder(self):
        p = reduction_params(4, 3, 1)
        assert (p.p, p.r, p.case) == (5, 0, 6)

    def test_overrides(self):
        p = reduction_params(2, 1, 2, {"q": 9, "K": 1})
        assert (p.q, p.K) == (9, 1)
        p = reduction_params(3, 1, 2, CASE3_UNIT_DISTANCE_REPAIR)
        assert (p.q, p.K) == (2, 3)


class TestBuild:
    def test_nine_element_instance_size(self):
        sets = [{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}, {0, 3, 8}]
        red = build_reduction(SetCoverInstance(9, sets, 3), 3, 1)
        assert red.graph.n == 24

    def test_small_case1(self):
        red = build_reduction(TRIANGLE, 3, 0)
        assert red.graph.n == 9 and red.params.K == 4
        assert red.roles[:3] == ("z0", "z_1", "z'_1")

    def test_roots_degree(self):
        for s, d in REPRESENTATIVES.values():
            red = build_reduction(TRIANGLE, s, d)
            p = red.params.p
            for i in range(3):
                root = red.roles.index(f"u_{{{i + 1},1}}")
                n_sets = sum(i in x for x in TRIANGLE.sets)
                assert red.graph.degree(root) == n_sets + (1 if p >= 2 else 0)

    def test_structure_random(self):
        rng = random.Random(4)
        for _ in range(50):
            inst = random_instance(rng)
            s, d = rng.choice(list(REPRESENTATIVES.values()) + [(6, 7), (5, 2), (2, 4)])
            red = build_reduction(inst, s, d)
            prm = red.params
            assert red.graph.n == 1 + inst.m + inst.universe * prm.p + prm.q + prm.qprime
            roles = red.roles
            assert sum(r.startswith("S_") for r in roles) == inst.m
            assert sum(r.startswith("u_") for r in roles) == inst.universe * prm.p
            assert sum(r.startswith("z_") for r in roles) == prm.q
            assert sum(r.startswith("z'_") for r in roles) == prm.qprime
            z0 = roles.index("z0")
            for j in range(inst.m):
                assert red.graph.has_edge(z0, roles.index(f"S_{j + 1}"))
            for i in range(inst.universe):
                root = roles.index(f"u_{{{i + 1},1}}")
                for j, members in enumerate(inst.sets):
                    assert red.graph.has_edge(root, roles.index(f"S_{j + 1}")) == (i in members)

    def test_bipartite(self):
        red = build_reduction(TRIANGLE, 2, 1)
        G = nx.Graph(list(red.graph.edges()))
        assert nx.is_bipartite(G)

    def test_deterministic(self):
        a = build_reduction(TRIANGLE, 2, 1)
        b = build_reduction(TRIANGLE, 2, 1)
        assert a.graph.edges() == b.graph.edges() and a.roles == b.roles

    def test_write(self, tmp_path):
        red = build_reduction(TRIANGLE, 3, 0)
        gpath, jpath = write_reduction(red, str(tmp_path / "tri"))
        assert read_graph(gpath) == red.graph
        side = json.loads(open(jpath).read())
        assert side["case"] == 1 and side["K"] == 4 and side["qprime"] == 1
        assert side["roles"] == list(red.roles)


class TestVerify:
    def test_cover_exists_case1(self):
        rep = verify_reduction(TRIANGLE, 3, 0)
        assert rep.cover_exists and rep.spy_first is Winner.GUARDS and rep.ok
        assert rep.guards_first is Winner.GUARDS

    def test_no_cover_case1(self):
        rep = verify_reduction(SINGLETONS, 3, 0)
        assert not rep.cover_exists and rep.spy_first is Winner.SPY and rep.ok
        assert rep.guards_first is None

    def test_case3_single_set(self):
        rep = verify_reduction(WHOLE, 3, 1)
        assert rep.cover_exists and rep.spy_first is Winner.GUARDS and rep.ok

    def test_case3_unit_distance_counterexample(self):
        inst = SetCoverInstance(2, [{0}, {1}, {0, 1}], 1)
        rep = verify_reduction(inst, 3, 1)
        assert rep.cover_exists and rep.spy_first is Winner.SPY and not rep.ok
        assert verify_reduction(inst, 3, 1, CASE3_UNIT_DISTANCE_REPAIR).ok

    @pytest.mark.parametrize("s", [4, 5])
    def test_case3_holds_at_distance_two(self, s):
        for inst in enumerate_instances(3, 3, 2):
            assert verify_reduction(inst, s, 2).ok

    def test_case3_repair_on_sweep(self):
        for inst in enumerate_instances(3, 3, 2):
            assert verify_reduction(inst, 3, 1, CASE3_UNIT_DISTANCE_REPAIR).ok

    @pytest.mark.parametrize("case", [1, 2, 4, 5, 6])
    def test_biconditional_sample(self, case):
        s, d = REPRESENTATIVES[case]
        insts = list(enumerate_instances(2, 3, 2))
        for inst in insts:
            assert verify_reduction(inst, s, d).ok

    def test_guards_first_can_fail(self):
        # the spy may start inside an element path when placed last
        rep = verify_reduction(SetCoverInstance(2, [{0, 1}], 1), 3, 3)
        assert rep.ok and rep.cover_exists
        assert rep.guards_first is Winner.SPY and not rep.guards_first_ok

    def test_report_json(self):
        data = verify_reduction(TRIANGLE, 3, 0).to_json()
        assert data["biconditional"] is True and data["params"]["K"] == 4
