import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from conftest import codes
from vsg import generate as gen
from vsg.group import (
    FiniteGroupTable,
    GroupPresentation,
    abelianization,
    count_homs,
    cyclic_group,
    cyclic_reduce,
    free_reduce,
    invert,
    smith_diagonal,
    symmetric_group,
    tietze_simplify,
    wirtinger,
)
from vsg.moves import CLASSICAL_MOVES

S3 = symmetric_group(3)


def _brute_homs(p, g):
    inv = [g.inverse(a) for a in range(g.order)]
    total = 0
    for images in itertools.product(range(g.order), repeat=len(p.generators)):
        ok = True
        for r in p.relators:
            acc = g.identity
            for x in r:
                a = images[abs(x) - 1]
                acc = g.table[acc][a if x > 0 else inv[a]]
            ok &= acc == g.identity
        total += ok
    return total


matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=4))


@given(matrices)
def test_smith_diagonal_matches_sympy(m):
    ours = [d for d in smith_diagonal(m) if d]
    theirs = Matrix(m)
    snf = smith_normal_form(theirs, domain=ZZ)
    expected = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert sorted(abs(d) for d in ours) == sorted(expected)


@pytest.mark.parametrize("name, rank, torsion, homs", [
    ("unknot", 1, (), 6),
    ("theta", 2, (), 36),
    ("trefoil", 1, (), 12),
    ("virtual-trefoil", 1, (), 6),
    ("hopf", 2, (), 18),
    ("virtual-hopf", 2, (), 18),
])
def test_known_groups(name, rank, torsion, homs):
    p = wirtinger(gen.NAMED[name]())
    ab = abelianization(p)
    assert (ab.free_rank, ab.torsion) == (rank, torsion)
    assert count_homs(p, S3) == homs == _brute_homs(p, S3)


def test_theta_simplifies_to_free_group():
    p = tietze_simplify(wirtinger(gen.theta()))
    assert len(p.generators) == 2 and p.relators == ()


@given(codes(max_crossings=3))
def test_simplification_preserves_invariants(code):
    p = wirtinger(code)
    q = tietze_simplify(p)
    assert abelianization(p) == abelianization(q)
    assert count_homs(p, cyclic_group(3)) == count_homs(q, cyclic_group(3))
    assert count_homs(q, S3) == _brute_homs(q, S3) if len(q.generators) <= 4 else True


@given(codes(max_crossings=3), st.integers(0, 10**6))
def test_invariance_under_classical_moves(code, seed):
    rng = random.Random(seed)
    walk, _ = gen.random_walk(rng, code, CLASSICAL_MOVES, 4, max_crossings=6)
    before, after = tietze_simplify(wirtinger(code)), tietze_simplify(wirtinger(walk))
    assert abelianization(before) == abelianization(after)
    assert count_homs(before, S3) == count_homs(after, S3)


@given(codes(max_crossings=3))
def test_text_round_trip(code):
    p = wirtinger(code)
    assert GroupPresentation.from_text(p.to_text()) == p


def test_word_helpers():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 1)) == (2,)
    assert invert((1, -2)) == (2, -1)


def test_group_table_validation():
    with pytest.raises(ValueError):
        FiniteGroupTable(("a", "b"), ((0, 0), (0, 1)), 0)
    assert FiniteGroupTable.from_json(S3.to_json()) == S3
    assert S3.order == 6


def test_shipped_s3_file():
    from importlib import resources
    import json
    doc = json.loads(resources.files("vsg.data").joinpath("group_s3.json").read_text())
    assert FiniteGroupTable.from_json(doc) == S3


def test_vertexless_and_crossingless_codes():
    p = wirtinger(gen.empty())
    assert p.generators == () and abelianization(p).free_rank == 0
    assert count_homs(p, S3) == 1
