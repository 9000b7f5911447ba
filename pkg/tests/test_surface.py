"""Charted-surface layer: validation, spiraling, grafting, canonical keys."""

import json

import pytest

from graftkit import (
    BadIntersectionPattern,
    NON_SPIRALING,
    NonSpiralingCurve,
    NotAdmissible,
    OddMultiplicity,
    SurfaceModel,
    SurfaceMulticurve,
    UnknownChart,
    canonical_key,
    check_spiraling_hypotheses,
    component,
    goldman_decompose,
    graft_along,
    graft_disjoint,
    graft_spiraling,
    is_admissible,
    multicurve,
    parse_configuration,
    spiraling_class,
    structure,
    structure_to_json,
    twist_about_curve,
    twist_about_meridian,
    validate_configuration,
)


def hopf_model():
    return SurfaceModel(2, "rho", ("a",))


def standard_pair(model=None):
    model = model or hopf_model()
    lam = component("lambda", {name: (2, 0) for name in model.charts})
    gam = component("gamma", {name: (1, 0) for name in model.charts})
    return model, lam, gam


class TestModel:
    def test_genus_floor(self):
        with pytest.raises(ValueError):
            SurfaceModel(1, "rho", ("a",))

    def test_duplicate_charts_rejected(self):
        with pytest.raises(ValueError):
            SurfaceModel(2, "rho", ("a", "a"))

    def test_unknown_chart(self):
        with pytest.raises(UnknownChart):
            hopf_model().require_chart("z")


class TestValidation:
    def test_standard_pattern_accepted(self):
        model, lam, gam = standard_pair()
        config = validate_configuration(model, lam, gam)
        assert config.meridian("a") == (0, 1)

    def test_real_curve_count_enforced(self):
        model, _, gam = standard_pair()
        bad = component("lambda", {"a": (1, 0)})
        with pytest.raises(BadIntersectionPattern, match="real curve"):
            validate_configuration(model, bad, gam)

    def test_chart_disjointness_enforced(self):
        model, lam, _ = standard_pair()
        bad = component("gamma", {"a": (1, 1)})
        with pytest.raises(BadIntersectionPattern, match="intersect"):
            validate_configuration(model, lam, bad)


class TestSpiralingClass:
    def test_right_label(self):
        assert spiraling_class((1, 2)) == ("right", 2)
        assert spiraling_class((1, 2)).direction == "right"

    def test_left_label(self):
        assert spiraling_class((1, -3)) == ("left", 3)

    def test_sign_normalization(self):
        # a global orientation flip names the same unoriented curve
        assert spiraling_class((-1, 3)) == spiraling_class((1, -3))

    def test_non_spiraling_cases(self):
        assert spiraling_class((1, 0)) is NON_SPIRALING
        assert spiraling_class((2, 1)) is NON_SPIRALING
        assert spiraling_class((0, 1)) is NON_SPIRALING


class TestSpiralingHypotheses:
    def test_triple_twist_accepted(self):
        _, lam, gam = standard_pair()
        twisted = twist_about_meridian(gam, "a", 3)
        assert check_spiraling_hypotheses(twisted, gam, lam)

    def test_untwisted_self_pairing_accepted(self):
        _, lam, gam = standard_pair()
        assert check_spiraling_hypotheses(gam, gam, lam)

    def test_multi_strand_rejected(self):
        _, lam, gam = standard_pair()
        wide = component("gamma", {"a": (2, 1)})
        assert not check_spiraling_hypotheses(wide, gam, lam)


class TestAdmissibility:
    def test_disjoint_route(self):
        model, lam, gam = standard_pair()
        verdict = is_admissible(gam, structure(model, [lam]))
        assert verdict and verdict.route == "disjoint"

    def test_spiraling_route(self):
        model, lam, gam = standard_pair()
        twisted = twist_about_meridian(gam, "a", 2)
        verdict = is_admissible(twisted, structure(model, [lam]))
        assert verdict and verdict.route == "spiraling"

    def test_wide_crossing_rejected(self):
        model = hopf_model()
        lam = component("lambda", {"a": (0, 2)})
        bad = component("gamma", {"a": (1, 0)})
        verdict = is_admissible(bad, structure(model, [lam]))
        assert not verdict
        assert "spiral" in verdict.reason or "strand" in verdict.reason


class TestMeridianTwist:
    def test_chart_action(self):
        gam = component("gamma", {"a": (1, -1)})
        assert twist_about_meridian(gam, "a", 3).chart_class("a") == (1, 2)

    def test_multiplicity_and_content_kept(self):
        gam = component("gamma", {"a": (1, 0)}, 4)
        out = twist_about_meridian(gam, "a", 2)
        assert out.multiplicity == 4 and out.content == gam.content

    def test_other_charts_untouched(self):
        model = SurfaceModel(2, "rho", ("a", "b"))
        lam = component("lambda", {"a": (2, 0), "b": (2, 2)})
        out = twist_about_meridian(structure(model, [lam]), "a", 5)
        comp = out.real_curves.components[0]
        assert comp.chart_class("a") == (2, 10)
        assert comp.chart_class("b") == (2, 2)

    def test_structure_key_changes_iff_twist_nontrivial(self):
        model, lam, _ = standard_pair()
        base = structure(model, [lam])
        assert twist_about_meridian(base, "a", 0).key() == base.key()
        assert twist_about_meridian(base, "a", 1).key() != base.key()


class TestGrafting:
    def test_disjoint_adds_doubled_leaves(self):
        model, lam, gam = standard_pair()
        out = graft_disjoint(structure(model, [lam]), gam)
        assert out.key() == ('{"charts":{"a":[4,0]},'
                             '"content":[["gamma",2],["lambda",1]]}')

    def test_disjoint_rejects_crossing_curve(self):
        model, lam, gam = standard_pair()
        twisted = twist_about_meridian(gam, "a", 1)
        with pytest.raises(NotAdmissible):
            graft_disjoint(structure(model, [lam]), twisted)

    def test_spiraling_rejects_disjoint_curve(self):
        model, lam, gam = standard_pair()
        with pytest.raises(NonSpiralingCurve):
            graft_spiraling(structure(model, [lam]), gam)

    def test_right_spiral_realizes_positive_twist(self):
        model, lam, gam = standard_pair()
        base = structure(model, [lam])
        twisted = twist_about_meridian(gam, "a", 1)
        assert graft_spiraling(base, twisted).key() == \
            twist_about_curve(base, twisted, 1).key()

    def test_left_spiral_realizes_negative_twist(self):
        model, lam, gam = standard_pair()
        base = structure(model, [lam])
        twisted = twist_about_meridian(gam, "a", -1)
        assert graft_spiraling(base, twisted).key() == \
            twist_about_curve(base, twisted, -1).key()

    def test_meridian_chart_spiral_values(self):
        # the real curve runs vertically in this chart; one left and one
        # right spiral land on distinct fused classes
        model = hopf_model()
        lam = component("lambda", {"a": (0, 2)})
        base = structure(model, [lam])
        right = component("gamma", {"a": (1, -1)})
        out = graft_spiraling(base, right)
        comp = out.real_curves.components[0]
        assert comp.chart_class("a") == (2, 0)
        assert dict(comp.content) == {"gamma": 2, "lambda": 1}
        steeper = component("gamma", {"a": (1, -2)})
        out2 = graft_spiraling(base, steeper)
        assert out2.real_curves.components[0].chart_class("a") == (2, -2)

    def test_dispatcher_picks_route(self):
        model, lam, gam = standard_pair()
        base = structure(model, [lam])
        assert graft_along(base, gam).key() == \
            graft_disjoint(base, gam).key()
        twisted = twist_about_meridian(gam, "a", 2)
        assert graft_along(base, twisted).key() == \
            graft_spiraling(base, twisted).key()

    def test_twisting_curve_must_be_single_leaf(self):
        model, lam, gam = standard_pair()
        wide = component("gamma", {"a": (1, 1)}, 2)
        with pytest.raises(ValueError):
            twist_about_curve(structure(model, [lam]), wide, 1)


class TestCanonicalKey:
    def test_component_order_irrelevant(self):
        model = SurfaceModel(2, "rho", ("a", "b"))
        x = component("x", {"a": (1, 0)}, 2)
        y = component("y", {"b": (0, 1)}, 2)
        assert canonical_key(multicurve(x, y), model) == \
            canonical_key(multicurve(y, x), model)

    def test_orientation_flip_irrelevant(self):
        model = hopf_model()
        pos = component("x", {"a": (1, -2)}, 2)
        neg = component("x", {"a": (-1, 2)}, 2)
        assert canonical_key(multicurve(pos), model) == \
            canonical_key(multicurve(neg), model)

    def test_parallel_leaves_merge(self):
        model = hopf_model()
        split = multicurve(component("x", {"a": (1, 0)}, 2),
                           component("x", {"a": (1, 0)}, 2))
        joined = multicurve(component("x", {"a": (1, 0)}, 4))
        assert canonical_key(split, model) == canonical_key(joined, model)

    def test_key_is_canonical_json(self):
        model, lam, _ = standard_pair()
        key = canonical_key(multicurve(lam), model)
        assert json.loads(key) == {"charts": {"a": [2, 0]},
                                   "content": [["lambda", 1]]}


class TestGoldman:
    def test_even_multicurve_splits(self):
        model = SurfaceModel(2, "rho", ("a", "b"))
        lam = multicurve(component("x", {"a": (1, 0)}, 4),
                         component("y", {"b": (1, -1)}, 2))
        sigma = goldman_decompose(lam)
        assert sorted(c.multiplicity for c in sigma.components) == [1, 2]

    def test_decomposition_regrafts_to_original(self):
        model = SurfaceModel(2, "rho", ("a", "b"))
        lam = multicurve(component("x", {"a": (1, 0)}, 4),
                         component("y", {"b": (1, -1)}, 2))
        current = structure(model, [])
        for comp in goldman_decompose(lam).components:
            current = graft_disjoint(current, comp)
        assert current.key() == canonical_key(lam, model)

    def test_odd_multiplicity_named(self):
        lam = multicurve(component("x", {"a": (1, 0)}, 2),
                         component("bad", {"a": (0, 1)}, 3))
        with pytest.raises(OddMultiplicity) as info:
            goldman_decompose(lam)
        assert info.value.label == "bad"


class TestJsonInterface:
    def test_configuration_round_trip(self):
        data = {
            "schema": 1,
            "genus": 2,
            "charts": ["a", "b"],
            "curves": [
                {"label": "lambda", "charts": {"a": [2, 0], "b": [2, 0]},
                 "multiplicity": 1},
            ],
            "gamma": {"label": "gamma", "charts": {"a": [1, 0]},
                      "multiplicity": 1},
        }
        model, struct, gamma = parse_configuration(data)
        assert model.charts == ("a", "b")
        assert gamma is not None and gamma.chart_class("a") == (1, 0)
        emitted = structure_to_json(struct)
        assert emitted["schema"] == 1
        assert emitted["key"] == struct.key()
        reparsed, restruct, _ = parse_configuration(
            {**emitted, "curves": emitted["curves"]})
        assert restruct.key() == struct.key()

    def test_schema_version_required(self):
        with pytest.raises(ValueError, match="schema"):
            parse_configuration({"genus": 2, "charts": ["a"], "curves": []})

    def test_unknown_chart_rejected(self):
        data = {"schema": 1, "genus": 2, "charts": ["a"],
                "curves": [{"label": "x", "charts": {"z": [1, 0]},
                            "multiplicity": 1}]}
        with pytest.raises(ValueError, match="chart"):
            parse_configuration(data)
