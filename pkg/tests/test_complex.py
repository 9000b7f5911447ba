"""Graph enumeration, witness search, fan collapse, and named suites."""

import json

import pytest

from graftkit import (
    BadConfiguration,
    UnknownSuite,
    build_complex,
    common_grafts,
    cycle_rank,
    standard_configuration,
    standard_fan,
    suite_names,
    verify_suite,
    witness_graph,
)


class TestBuildComplex:
    def test_depth_zero_single_vertex(self):
        graph = build_complex(standard_configuration(), 3, 0)
        assert len(graph.vertices) == 1
        assert len(graph.edges) == 0
        assert cycle_rank(graph) == 0

    def test_depth_one_untwisted_generators(self):
        # twist bound 0 leaves the untwisted graft plus two elementary
        # neighbors
        graph = build_complex(standard_configuration(), 0, 1)
        assert len(graph.vertices) == 4
        assert len(graph.edges) == 3
        kinds = sorted(e.kind for e in graph.edges)
        assert kinds == ["elementary", "elementary", "graft"]

    def test_every_vertex_reachable(self):
        graph = build_complex(standard_configuration(), 2, 2)
        adjacency = {v.key: set() for v in graph.vertices}
        for e in graph.edges:
            adjacency[e.src].add(e.dst)
            adjacency[e.dst].add(e.src)
        seen = {graph.seed_key}
        stack = [graph.seed_key]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert seen == set(adjacency)

    def test_elementary_inverse_edges_deduplicated(self):
        graph = build_complex(standard_configuration(), 1, 2)
        pairs = {}
        for e in graph.edges:
            if e.kind != "elementary":
                continue
            key = (min(e.src, e.dst), max(e.src, e.dst), e.chart)
            pairs[key] = pairs.get(key, 0) + 1
        assert pairs and all(count == 1 for count in pairs.values())

    def test_negative_bounds_rejected(self):
        config = standard_configuration()
        with pytest.raises(BadConfiguration):
            build_complex(config, -1, 2)
        with pytest.raises(BadConfiguration):
            build_complex(config, 2, -1)

    def test_worker_counts_agree_bytewise(self):
        config = standard_configuration()
        blobs = {build_complex(config, 4, 2, workers=w).to_json_bytes()
                 for w in (1, 2, 5)}
        assert len(blobs) == 1

    def test_rank_monotone_in_twist_bound(self):
        config = standard_configuration()
        ranks = [cycle_rank(build_complex(config, m, 2))
                 for m in range(1, 5)]
        assert all(b > a for a, b in zip(ranks, ranks[1:]))

    def test_rank_monotone_in_depth(self):
        config = standard_configuration()
        ranks = [cycle_rank(build_complex(config, 2, d))
                 for d in range(4)]
        assert all(b >= a for a, b in zip(ranks, ranks[1:]))

    def test_rank_by_kind_consistent(self):
        graph = build_complex(standard_configuration(), 3, 2)
        ranks = graph.rank_by_kind()
        assert ranks["all"] == cycle_rank(graph)
        assert 0 <= ranks["graft"] <= ranks["all"]
        assert 0 <= ranks["elementary"] <= ranks["all"]


class TestExports:
    def test_json_export_shape(self):
        graph = build_complex(standard_configuration(), 2, 1)
        data = json.loads(graph.to_json_bytes())
        assert data["schema"] == 1
        assert data["stats"]["vertices"] == len(graph.vertices)
        assert data["stats"]["cycle_rank"] == graph.cycle_rank()
        ids = {v["id"] for v in data["vertices"]}
        assert ids == set(range(len(graph.vertices)))
        for edge in data["edges"]:
            assert edge["src"] in ids and edge["dst"] in ids
            assert edge["kind"] in ("graft", "elementary")

    def test_dot_export_structure(self):
        graph = build_complex(standard_configuration(), 2, 1)
        dot = graph.to_dot()
        lines = dot.strip().splitlines()
        assert lines[0] == "graph complex {"
        assert lines[-1] == "}"
        vertex_lines = [ln for ln in lines if "[label=" in ln
                        and " -- " not in ln]
        edge_lines = [ln for ln in lines if " -- " in ln]
        assert len(vertex_lines) == len(graph.vertices)
        assert len(edge_lines) == len(graph.edges)
        assert dot.count("{") == dot.count("}")

    def test_repeat_builds_identical(self):
        config = standard_configuration()
        first = build_complex(config, 3, 2)
        second = build_complex(config, 3, 2)
        assert first.to_json_bytes() == second.to_json_bytes()
        assert first.to_dot() == second.to_dot()


class TestWitnesses:
    @pytest.mark.parametrize("l0", [0, 1, 2, -3])
    def test_full_range_found(self, l0):
        config = standard_configuration()
        witnesses = common_grafts(config, l0, 5)
        assert len(witnesses) == 11
        assert [w.m for w in witnesses] == list(range(-5, 6))

    def test_twist_budget_relation(self):
        config = standard_configuration()
        for w in common_grafts(config, 3, 4):
            assert w.k + w.l == 2 * w.m

    def test_trivial_instance(self):
        # untwisted pair: both pipelines are the plain graft
        config = standard_configuration()
        (witness,) = common_grafts(config, 0, 0)
        assert witness.m == 0 and witness.k == 0
        from graftkit import graft_along
        assert witness.key == graft_along(config.base_structure(),
                                          config.gamma).key()

    def test_witness_graph_export(self):
        # two base structures, one vertex per witness, two edges each
        config = standard_configuration()
        graph = witness_graph(config, 1, 3)
        assert len(graph.vertices) == 2 + 7
        assert len(graph.edges) == 2 * 7
        assert graph.to_json_bytes() == witness_graph(
            config, 1, 3).to_json_bytes()


class TestFan:
    def test_standard_fan_collapses(self):
        config = standard_configuration()
        report = standard_fan(config, "a", 6, 3)
        assert report.passed
        assert len(report.rows) == 7
        assert report.common_key is not None

    def test_degenerate_single_member(self):
        config = standard_configuration()
        report = standard_fan(config, "a", 0, 0)
        assert report.passed and len(report.rows) == 1


class TestSuites:
    def test_known_names(self):
        assert suite_names() == ("dehn_twist", "flatsharp", "goldman",
                                 "iterated", "oracle", "sharp_flat",
                                 "two_meridian")

    def test_unknown_name_raises(self):
        with pytest.raises(UnknownSuite):
            verify_suite("nonsense")

    @pytest.mark.parametrize("name,params", [
        ("flatsharp", {}),
        ("sharp_flat", {"k_max": 4}),
        ("dehn_twist", {"k_max": 3}),
        ("iterated", {"l0": 1, "twist_bound": 4}),
        ("two_meridian", {"k_max": 3}),
        ("goldman", {"trials": 25, "seed": 7}),
        ("oracle", {"sweep": 2}),
    ])
    def test_suites_pass(self, name, params):
        report = verify_suite(name, **params)
        assert report.passed, [i for i in report.instances if not i.ok]

    def test_goldman_deterministic_under_seed(self):
        one = verify_suite("goldman", trials=10, seed=3)
        two = verify_suite("goldman", trials=10, seed=3)
        assert one.to_json_obj() == two.to_json_obj()

    def test_report_lines_and_json(self):
        report = verify_suite("flatsharp", k_max=3)
        lines = report.lines()
        assert len(lines) == 4
        assert lines[-1].startswith("suite flatsharp: pass")
        data = report.to_json_obj()
        assert data["passed"] is True
        assert len(data["instances"]) == 3
