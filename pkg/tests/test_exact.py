from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eqlines.exact import (
    Polynomial,
    RationalParseError,
    as_rational,
    poly_add,
    poly_eval,
    poly_mul,
    poly_scale,
    rational_from_string,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**6)
polys = st.lists(rationals, max_size=6).map(Polynomial)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1/3", Fraction(1, 3)),
        ("0.2", Fraction(1, 5)),
        ("-6/4", Fraction(-3, 2)),
        ("7", Fraction(7)),
        ("-.125", Fraction(-1, 8)),
        ("1e-3", Fraction(1, 1000)),
        (" 2 / 4 ", Fraction(1, 2)),
    ],
)
def test_rational_from_string(text, expected):
    q = rational_from_string(text)
    assert q == expected
    assert q.denominator > 0


@pytest.mark.parametrize("text", ["1/0", "abc", "1/-3", "", "1//2", "0x10", "nan", "inf"])
def test_rational_from_string_rejects(text):
    with pytest.raises(RationalParseError):
        rational_from_string(text)


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.2)
    assert as_rational("0.2") == Fraction(1, 5)


def test_zero_is_zero_over_one():
    q = rational_from_string("0/5")
    assert (q.numerator, q.denominator) == (0, 1)


def test_poly_eval_examples():
    assert poly_eval(Polynomial((-1, 0, 3)), 1) == 2
    assert poly_eval(Polynomial(), Fraction(7, 2)) == 0
    assert poly_eval(Polynomial((0, 1)), Fraction(-5, 3)) == Fraction(-5, 3)


def test_poly_arith_examples():
    x_plus_1 = Polynomial((1, 1))
    x_minus_1 = Polynomial((-1, 1))
    assert poly_mul(x_plus_1, x_minus_1) == Polynomial((-1, 0, 1))
    p = Polynomial((3, -2, 5))
    assert poly_add(p, -p) == Polynomial()
    assert poly_add(p, -p).coeffs == ()
    assert poly_scale(Polynomial((0, 0, 1)), Fraction(3, 2)) == Polynomial((0, 0, Fraction(3, 2)))


def test_trailing_zeros_are_stripped():
    p = Polynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Polynomial((0, 0)).degree == -1


@given(rationals, rationals)
def test_rational_roundtrips(a, b):
    assert (a + b) - b == a
    if b:
        assert (a * b) / b == a
    assert rational_from_string(str(a)) == a


@given(polys, polys, rationals)
def test_product_evaluates_to_product_of_values(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(polys, polys)
def test_results_are_normalized(p, q):
    for r in (p + q, p * q, p - q):
        assert not r.coeffs or r.coeffs[-1] != 0
