import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import codes
from oracles import knot_quandle_colorings
from vsg import generate as gen
from vsg.moves import CLASSICAL_MOVES
from vsg.quandle import (
    BudgetError,
    FiniteVQS,
    StructureError,
    brute_force_colorings,
    count_colorings,
    dihedral_structure,
    gcd_valence,
    shipped_structures,
    trivial_structure,
    validate_vqs,
)

D3 = dihedral_structure()
SHIPPED = shipped_structures()


def test_gcd_valence_examples():
    assert gcd_valence(gen.theta()) == 3
    assert gcd_valence(gen.unknot()) == 2
    assert gcd_valence(gen.bouquet(2)) == 4
    assert gcd_valence(gen.disjoint_union(gen.bouquet(2), gen.bouquet(3))) == 2
    with pytest.raises(ValueError):
        gcd_valence(gen.empty())


def test_shipped_structures_validate():
    assert set(SHIPPED) >= {"trivial", "dihedral3", "twin_f", "twin_bar"}
    for name, s in SHIPPED.items():
        assert validate_vqs(s).ok, name
        assert FiniteVQS.from_json(s.to_json()) == s


def test_validation_catches_bad_f_order():
    s = FiniteVQS(("0", "1", "2"), ((0, 0, 0), (1, 1, 1), (2, 2, 2)), (0, 1, 2), (1, 2, 0), 2)
    assert validate_vqs(s).rules() == {"f-order"}
    assert validate_vqs(s, d=3).ok


def test_validation_catches_non_quandle():
    s = FiniteVQS(("0", "1"), ((1, 0), (1, 1)), (0, 1), (0, 1), 1)
    assert "idempotence" in validate_vqs(s).rules()


@pytest.mark.parametrize("bad", [
    dict(elements=(), op=(), bar=(), f=(), d=1),
    dict(elements=("0",), op=((0,),), bar=(0,), f=(0,), d=0),
    dict(elements=("0", "1"), op=((0, 0), (1, 1)), bar=(0, 1), f=(0, 0), d=1),
    dict(elements=("0", "1"), op=((0, 0), (1, 2)), bar=(0, 1), f=(0, 1), d=1),
])
def test_malformed_tables_rejected(bad):
    with pytest.raises(ValueError):
        FiniteVQS(**bad)


def test_structure_error_on_wrong_period():
    # theta has gcd 3, but dihedral with d=2 is not 3-periodic
    with pytest.raises(StructureError):
        count_colorings(gen.theta(), D3)


def test_known_counts():
    assert count_colorings(gen.unknot(), D3) == 3
    assert count_colorings(gen.trefoil(), D3) == 9
    assert count_colorings(gen.virtual_trefoil(), D3) == 3
    for name in ("unknot", "trefoil", "virtual-trefoil", "hopf", "theta"):
        assert count_colorings(gen.NAMED[name](), trivial_structure()) == 1


def test_twin_f_distinguishes_nothing_on_unknot():
    assert count_colorings(gen.unknot(), SHIPPED["twin_f"]) == 2


@pytest.mark.parametrize("name", ["unknot", "trefoil", "virtual-trefoil", "kink"])
def test_knot_oracle(name):
    code = gen.NAMED[name]()
    (edge,) = code.edge_ids()
    expected = knot_quandle_colorings(code.passages[edge], D3.op)
    assert count_colorings(code, D3) == expected == brute_force_colorings(code, D3)


def _even(code):
    try:
        return gcd_valence(code) % 2 == 0
    except ValueError:
        return False


@given(codes(max_crossings=3))
def test_matches_code_level_oracle(code):
    if not _even(code):
        return
    assert count_colorings(code, D3) == brute_force_colorings(code, D3)
    assert count_colorings(code, SHIPPED["twin_bar"]) == brute_force_colorings(code, SHIPPED["twin_bar"])


@given(codes(max_crossings=3), st.integers(1, 5))
def test_realization_independent(code, variant):
    if not _even(code):
        return
    for s in (D3, SHIPPED["twin_f"]):
        assert count_colorings(code, s, variant=variant) == count_colorings(code, s)


@given(codes(max_crossings=3), st.integers(0, 10**6))
def test_invariant_under_moves(code, seed):
    if not _even(code):
        return
    walk, _ = gen.random_walk(random.Random(seed), code, CLASSICAL_MOVES, 3, max_crossings=6)
    for s in (D3, SHIPPED["twin_f"]):
        assert count_colorings(walk, s) == count_colorings(code, s)


def test_f_nontrivial_rejected_by_oracle():
    with pytest.raises(ValueError):
        brute_force_colorings(gen.unknot(), SHIPPED["twin_f"])


def test_budget():
    with pytest.raises(BudgetError):
        count_colorings(gen.trefoil(), D3, max_arcs=2)
