import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import codes
from vsg import generate as gen
from vsg.moves import PLIABLE
from vsg.search import (
    EQUIVALENT,
    EXHAUSTED,
    BudgetConfigError,
    SearchConfig,
    search_equivalent,
    verify_witness,
)


def test_kink_to_unknot_in_one_step():
    v = search_equivalent(gen.kink(), gen.unknot(), SearchConfig(max_crossings=2))
    assert v.outcome == EQUIVALENT
    assert len(v.witness) == 1 and v.witness[0].move == "I"
    assert verify_witness(gen.kink(), gen.unknot(), v.witness)


def test_same_code_has_empty_witness():
    v = search_equivalent(gen.trefoil(), gen.trefoil(), SearchConfig(max_crossings=3))
    assert v.outcome == EQUIVALENT and v.witness == []
    assert v.stats.states == 1


def test_virtual_trefoil_not_reached_in_small_space():
    v = search_equivalent(gen.unknot(), gen.virtual_trefoil(), SearchConfig(max_crossings=2, max_states=10**5))
    assert v.outcome == EXHAUSTED
    assert v.stats.states < 10**5


def test_state_budget_stops_search():
    v = search_equivalent(gen.unknot(), gen.virtual_trefoil(), SearchConfig(max_crossings=4, max_states=50))
    assert v.outcome == EXHAUSTED
    assert v.stats.states <= 50


def test_forbidden_move_allowed():
    # Under VIII* the virtual trefoil unknots; without it the search stays stuck.
    plain = search_equivalent(gen.unknot(), gen.virtual_trefoil(),
                              SearchConfig(max_crossings=4, max_states=2000), allow=("VIII*",))
    assert plain.outcome == EQUIVALENT
    assert verify_witness(gen.unknot(), gen.virtual_trefoil(), plain.witness)


@pytest.mark.parametrize("kwargs", [dict(max_crossings=1), dict(max_states=1)])
def test_budget_config_errors(kwargs):
    cfg = SearchConfig(**{"max_crossings": 6, **kwargs})
    with pytest.raises(BudgetConfigError):
        search_equivalent(gen.trefoil(), gen.unknot(), cfg)


@settings(max_examples=10)
@given(codes(max_vertices=2, max_crossings=2), st.integers(0, 10**6))
def test_finds_short_walks(code, seed):
    walk, _ = gen.random_walk(random.Random(seed), code, sorted(PLIABLE), 2,
                              max_crossings=code.crossing_count() + 2)
    cap = max(code.crossing_count(), walk.crossing_count()) + 1
    v = search_equivalent(code, walk, SearchConfig(max_crossings=cap, max_states=20000))
    assert v.outcome == EQUIVALENT
    assert verify_witness(code, walk, v.witness)


def test_parallel_matches_serial():
    cfg = SearchConfig(max_crossings=3, max_states=3000)
    serial = search_equivalent(gen.unknot(), gen.kink(), cfg)
    par = search_equivalent(gen.unknot(), gen.kink(), SearchConfig(3, 3000, workers=2))
    assert serial.outcome == par.outcome == EQUIVALENT
    assert len(serial.witness) == len(par.witness)


def test_four_crossing_space_is_exhausted():
    v = search_equivalent(gen.unknot(), gen.virtual_trefoil(),
                          SearchConfig(max_crossings=4, max_states=10**5))
    assert v.outcome == EXHAUSTED
    assert v.stats.states < 10**5
    assert v.stats.max_crossings_reached == 4
