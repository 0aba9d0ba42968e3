from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftalk import DELTA, NO_SIGN_CHANGE, ZERO, DeltaPoly, poly_arith, poly_eval, sign_change
from conftalk.poly import as_delta, decimal_str

fracs = st.fractions(min_value=-10, max_value=10, max_denominator=50)
polys = st.dictionaries(st.integers(0, 6), fracs, max_size=5).map(DeltaPoly)
deltas = st.fractions(min_value=0, max_value=1, max_denominator=1000).filter(lambda x: 0 < x < 1)


def test_zero_coefficients_are_pruned():
    p = DeltaPoly({1: 2, 3: 0})
    assert p.coeffs == {1: Fraction(2)}
    assert p.degree == 1
    assert ZERO.degree == -1 and ZERO.is_zero()
    assert DeltaPoly([0, 0]) == ZERO


def test_arithmetic_examples():
    p = DeltaPoly({1: 1, 2: Fraction(2, 3)})
    q = DeltaPoly({1: 2, 2: Fraction(2, 3)})
    assert q - p == DELTA
    assert poly_arith(p, q, "add") == DeltaPoly({1: 3, 2: Fraction(4, 3)})
    assert poly_arith(p, 3, "scale") == DeltaPoly({1: 3, 2: 2})
    assert DELTA * DELTA == DeltaPoly.monomial(2)
    with pytest.raises(ValueError):
        poly_arith(p, q, "divide")


def test_eval_checks_range():
    p = DeltaPoly({1: 1, 2: 1})
    assert poly_eval(p, Fraction(1, 5)) == Fraction(6, 25)
    assert p("1/5") == Fraction(6, 25)
    with pytest.raises(ValueError):
        poly_eval(p, 1)
    with pytest.raises(ValueError):
        poly_eval(p, 0)
    # evaluate skips the range check, used at the boundary
    assert p.evaluate(1) == 2


def test_decimal_delta_is_exact():
    assert as_delta(Decimal("0.2")) == Fraction(1, 5)
    assert as_delta("0.9949") == Fraction(9949, 10000)


def test_rendering():
    assert str(DeltaPoly({1: 1, 2: Fraction(2, 3)})) == "δ + 2/3·δ^2"
    assert str(ZERO) == "0"
    assert decimal_str(Fraction(2, 3)) == "0.666666666667"


def test_json_round_trip():
    p = DeltaPoly({1: Fraction(4, 3), 3: -2})
    data = p.to_json(Fraction(1, 2))
    assert data["coeffs"] == {"1": "4/3", "3": "-2/1"}
    assert data["value"] == "5/12"
    assert DeltaPoly.from_json(data) == p


def test_sign_change():
    p = DeltaPoly({1: Fraction(4, 3), 2: Fraction(-5, 2)})
    root = sign_change(p, Fraction(1, 10), Fraction(9, 10))
    assert abs(root - Fraction(8, 15)) <= Fraction(1, 10**9)
    assert sign_change(DELTA, Fraction(1, 10), Fraction(9, 10)) is NO_SIGN_CHANGE
    assert not NO_SIGN_CHANGE


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(polys, polys, deltas)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)


@given(polys)
def test_json_round_trip_property(p):
    assert DeltaPoly.from_json(p.to_json()) == p


@given(polys, polys)
def test_equal_polys_hash_equal(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert hash(a + ZERO) == hash(a)
