import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import codes
from vsg import generate as gen
from vsg.code import canonical_key
from vsg.links import tg_linking
from vsg.moves import ALL_MOVES, replay
from vsg.normalize import (
    LEVELS,
    NormalFormError,
    check_normal_form,
    normal_form_violations,
    normalize_forbidden,
    normalize_forbidden_with_witness,
)


def test_kink_disappears():
    for sign in "+-":
        out, sites = normalize_forbidden_with_witness(gen.kink(sign))
        assert out.crossing_count() == 0
        assert [s.move for s in sites][-1] == "I"


def test_virtual_trefoil_unknots_without_self_arrows():
    assert normalize_forbidden(gen.virtual_trefoil()).crossing_count() == 0
    assert normalize_forbidden(gen.trefoil()).crossing_count() == 0


def test_opposite_pair_cancels():
    p = gen._p
    code = gen.two_loops([p("c1", "u", "+"), p("c2", "u", "-")], [p("c2", "o", "-"), p("c1", "o", "+")])
    assert normalize_forbidden(code).crossing_count() == 0


def test_hopf_keeps_its_arrows():
    out = normalize_forbidden(gen.hopf())
    assert out.crossing_count() == 2
    assert tg_linking(out) == tg_linking(gen.hopf())


def test_theta_pliable():
    out = normalize_forbidden(gen.theta(), "pliable")
    assert normal_form_violations(out, "pliable") == []
    assert out.crossing_count() == 0


def test_violations_reported():
    assert normal_form_violations(gen.kink()) == ["A[e,e] is not empty"]
    with pytest.raises(NormalFormError):
        check_normal_form(gen.kink())
    with pytest.raises(ValueError):
        normalize_forbidden(gen.kink(), "nonsense")


@given(codes(max_crossings=5), st.sampled_from(LEVELS))
def test_witness_replays_and_form_is_normal(code, level):
    out, sites = normalize_forbidden_with_witness(code, level)
    assert canonical_key(replay(code, sites, ALL_MOVES)) == canonical_key(out)
    assert normal_form_violations(out, level) == []
    assert out.crossing_count() <= code.crossing_count()


@given(codes(max_crossings=4))
def test_idempotent(code):
    for level in LEVELS:
        once = normalize_forbidden(code, level)
        assert normalize_forbidden(once, level) == once


@given(codes(max_crossings=4))
def test_linking_preserved_at_viii(code):
    assert tg_linking(normalize_forbidden(code)) == tg_linking(code)
