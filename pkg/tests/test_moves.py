import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import codes
from vsg import generate as gen
from vsg.code import Passage, canonical_key
from vsg.moves import (
    ALL_MOVES,
    APPLY,
    INVERSE,
    PLIABLE,
    RIGID,
    MoveError,
    MoveSite,
    PolicyError,
    apply_move,
    crossing_increase,
    enumerate_moves,
    insertion_sites,
    inverse_site,
    moveset,
    reduction_sites,
    sites_from_json,
    sites_to_json,
)

EXPECTED_CHANGE = {"I": -1, "II": -2, "III": 0, "VI": -1, "VI*": 0, "VII*": 0, "VIII*": 0}


def _p(x, role, sign=1):
    return Passage(x, role, sign)


@given(codes(max_crossings=3), st.integers(0, 10**6))
def test_insert_then_delete_is_identity(code, seed):
    rng = random.Random(seed)
    sites = insertion_sites(code, PLIABLE)
    site = rng.choice(sites)
    after = apply_move(code, site)
    assert after.crossing_count() == code.crossing_count() + crossing_increase(code, site)
    back = inverse_site(code, site)
    assert back.direction == INVERSE
    assert apply_move(after, back) == code


@given(codes(max_crossings=5), st.integers(0, 10**6))
def test_reductions_are_undone_by_their_inverse(code, seed):
    rng = random.Random(seed)
    code, _ = gen.random_walk(rng, code, PLIABLE, 2, max_crossings=7)
    sites = reduction_sites(code, ALL_MOVES)
    if not sites:
        return
    site = rng.choice(sites)
    after = apply_move(code, site)
    delta = after.crossing_count() - code.crossing_count()
    if site.move in EXPECTED_CHANGE:
        assert delta == EXPECTED_CHANGE[site.move]
    else:
        assert delta < 0
    undo = inverse_site(code, site)
    assert canonical_key(apply_move(after, undo)) == canonical_key(code)


def test_kink_has_reduction_and_removing_it_gives_unknot():
    kink = gen.kink()
    sites = [s for s in enumerate_moves(kink, RIGID) if s.move == "I" and s.direction == INVERSE]
    assert sites
    assert apply_move(kink, sites[0]) == gen.unknot()


def test_theta_has_no_reductions():
    assert reduction_sites(gen.theta(), PLIABLE) == []


def test_ii_insert_exposes_matching_reduction():
    theta = gen.theta()
    site = MoveSite.make("II", APPLY, over_edge="e1", over_gap=0, under_edge="e2", under_gap=0,
                         order="same", sign=1, under_first=0)
    after = apply_move(theta, site)
    assert after.crossing_count() == 2
    assert any(s.move == "II" and s.direction == INVERSE for s in reduction_sites(after))


def test_viii_star_swaps_passages():
    code = gen.two_loops([_p("c1", "o"), _p("c2", "o")], [_p("c1", "u"), _p("c2", "u")])
    e = code.edges[0].id
    after = apply_move(code, MoveSite.make("VIII*", APPLY, edge=e, index=0))
    assert [p.crossing for p in after.passages[e]] == ["c2", "c1"]


def test_vi_star_reverses_rotation():
    theta = gen.theta()
    after = apply_move(theta, MoveSite.make("VI*", APPLY, vertex="u"))
    assert after.rotations["u"] == theta.with_changes(
        rotations={"u": tuple(reversed(theta.rotations["u"]))}).rotations["u"]


def test_forbidden_moves_need_permission():
    site = MoveSite.make("VI*", APPLY, vertex="u")
    with pytest.raises(PolicyError):
        apply_move(gen.theta(), site, allow=())
    apply_move(gen.theta(), site, allow=("VI*",))


def test_inapplicable_site_raises():
    with pytest.raises(MoveError):
        apply_move(gen.unknot(), MoveSite.make("I", INVERSE, edge="e", index=0))
    with pytest.raises(MoveError):
        apply_move(gen.unknot(), MoveSite.make("I", APPLY, edge="e", gap=5, first="o", sign=1))


def test_moveset_names():
    assert moveset("rigid") == RIGID
    assert moveset("pliable", ["vi*"]) == PLIABLE | {"VI*"}
    with pytest.raises(ValueError):
        moveset("rigid", ["I"])


def test_site_json_round_trip():
    sites = enumerate_moves(gen.kink(), PLIABLE)[:20]
    assert sites_from_json(sites_to_json(sites)) == sites


def test_sites_replay_on_relabelled_codes():
    rng = random.Random(2)
    code = gen.trefoil()
    renamed = code.with_changes(passages={
        "e": tuple(Passage("z" + p.crossing, p.role, p.sign) for p in code.passages["e"])})
    for site in rng.sample(enumerate_moves(code, PLIABLE), 25):
        assert canonical_key(apply_move(code, site)) == canonical_key(apply_move(renamed, site))


def test_planted_triangles_admit_move_iii(rng):
    for _ in range(20):
        code = gen.plant_triangle(rng, gen.random_code(rng, max_crossings=2))
        iii = [s for s in reduction_sites(code, {"III"})]
        assert iii
        for s in iii:
            assert apply_move(apply_move(code, s), s) == code


def test_iii_rejects_unrealizable_triangles():
    # Three strands, each pair crossing once, but with inconsistent signs.
    top = [_p("x", "o", 1), _p("y", "o", 1)]
    mid = [_p("x", "u", 1), _p("z", "o", -1)]
    bot = [_p("y", "u", 1), _p("z", "u", -1)]
    code = gen.two_loops(top, mid)
    code = code.with_changes(passages={code.edges[0].id: tuple(top + bot), code.edges[1].id: tuple(mid)})
    assert not reduction_sites(code, {"III"})
