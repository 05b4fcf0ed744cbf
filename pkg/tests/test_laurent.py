import pytest
from hypothesis import given
from hypothesis import strategies as st

from vsg.laurent import DELTA, ONE, SIGMA, ZERO, A, LaurentPoly

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO
    assert p * ONE == p


@given(polys)
def test_text_round_trip(p):
    assert LaurentPoly.from_text(p.to_text()) == p


@given(polys, st.integers(-4, 4))
def test_shift_is_monomial_multiplication(p, k):
    assert p.shift(k) == p * LaurentPoly.monomial(k)


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({3: 0, 1: 2})
    assert p.terms == {1: 2}
    assert (A - A).is_zero()


def test_negative_powers_of_units():
    assert A ** -2 * A ** 2 == ONE
    assert (-A) ** -3 == -(A ** -3)
    with pytest.raises(ValueError):
        SIGMA ** -1


def test_known_constants():
    assert SIGMA == A + ONE + A ** -1
    assert DELTA == -(A ** 2) - A ** -2
    assert (-SIGMA) ** 2 == SIGMA * SIGMA


def test_text_format_is_descending():
    assert (SIGMA - SIGMA ** 2).to_text() == "-1*A^2-1*A^1-2*A^0-1*A^-1-1*A^-2"
    with pytest.raises(ValueError):
        LaurentPoly.from_text("A^2+1")
