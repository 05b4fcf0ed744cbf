import json

import pytest
from hypothesis import given

from conftest import codes
from vsg import generate as gen
from vsg.code import (
    Edge,
    FormatError,
    Passage,
    ValidationError,
    VsgCode,
    arrow_sets,
    canonical_form,
    canonical_key,
    canonical_serialize,
    from_json,
    parse_code,
    relabel,
    require_valid,
    shadow,
    to_json,
    validate,
)


def _p(x, role, sign=1):
    return Passage(x, role, sign)


@given(codes())
def test_random_codes_are_valid(code):
    assert validate(code).ok


@given(codes())
def test_serialization_round_trip(code):
    text = canonical_serialize(code)
    assert parse_code(text) == code
    assert canonical_serialize(parse_code(text)) == text


@given(codes())
def test_canonical_form_idempotent_and_label_blind(code):
    once = canonical_form(code)
    assert canonical_form(once) == once
    renamed = relabel(code, {x: f"q{x}" for x in code.labels()})
    assert canonical_key(renamed) == canonical_key(code)


@given(codes())
def test_shadow_idempotent(code):
    assert shadow(shadow(code)) == shadow(code)


@given(codes())
def test_arrow_count_is_crossing_count(code):
    assert sum(len(a) for a in arrow_sets(code).values()) == code.crossing_count()


def test_rotations_compare_up_to_cyclic_shift():
    a = gen.theta()
    rot = a.rotations["u"]
    b = a.with_changes(rotations={"u": rot[1:] + rot[:1]})
    assert a == b
    c = a.with_changes(rotations={"u": tuple(reversed(rot))})
    assert a != c


def test_theta_has_no_arrows():
    assert all(not v for v in arrow_sets(gen.theta()).values())


def test_arrow_direction_runs_under_to_over():
    code = gen.two_loops([_p("c", "u")], [_p("c", "o")])
    sets = arrow_sets(code)
    under_edge, over_edge = code.edges[0].id, code.edges[1].id
    assert [a.label for a in sets[(under_edge, over_edge)]] == ["c"]
    assert not sets[(over_edge, under_edge)]


@pytest.mark.parametrize(
    "mutate, rule",
    [
        (lambda d: d["passages"]["e"].pop(), "unpaired-crossing"),
        (lambda d: d["passages"]["e"][0].update(sign="-"), "sign-mismatch"),
        (lambda d: d["passages"]["e"][0].update(role="u"), "role-mismatch"),
        (lambda d: d["rotations"]["v"].pop(), "rotation-missing-half-edge"),
        (lambda d: d["rotations"]["v"].append(["zz", "tail"]), "rotation-foreign"),
        (lambda d: d["edges"].append({"id": "e", "tail": "v", "head": "v"}), "duplicate-edge"),
        (lambda d: d["edges"][0].update(head="w"), "unknown-vertex"),
        (lambda d: d["passages"].update(f=[]), "foreign-passages"),
    ],
)
def test_validation_rules(mutate, rule):
    doc = to_json(gen.trefoil())
    mutate(doc)
    report = validate(from_json(doc))
    assert not report.ok
    assert rule in report.rules()


def test_require_valid_raises_with_report():
    doc = to_json(gen.trefoil())
    doc["passages"]["e"].pop()
    with pytest.raises(ValidationError) as info:
        require_valid(from_json(doc))
    assert "unpaired-crossing" in info.value.report.rules()


@pytest.mark.parametrize(
    "text",
    ["[]", "{", json.dumps({"version": 99}), json.dumps({"version": 1, "vertices": []})],
)
def test_format_errors(text):
    with pytest.raises(FormatError):
        parse_code(text)


def test_labels_follow_first_occurrence():
    code = gen.knot([_p("b", "o"), _p("a", "o"), _p("b", "u"), _p("a", "u")])
    assert code.labels() == ["b", "a"]
    assert canonical_form(code).labels() == ["c1", "c2"]


def test_degree_counts_loops_twice():
    assert gen.unknot().degree("v") == 2
    assert gen.bouquet(3).degree(gen.bouquet(3).vertices[0]) == 6


def test_fresh_labels_skip_used():
    code = gen.knot([_p("c1", "o"), _p("c1", "u")])
    assert code.fresh_labels(2) == ["c2", "c3"]


def test_code_is_hashable_and_immutable():
    code = gen.theta()
    assert hash(code) == hash(gen.theta())
    with pytest.raises(Exception):
        code.vertices = ()


def test_edges_accept_plain_tuples():
    code = VsgCode(("v",), (("e", "v", "v"),), {"v": (("e", "tail"), ("e", "head"))}, {"e": ()})
    assert code.edges == (Edge("e", "v", "v"),)
