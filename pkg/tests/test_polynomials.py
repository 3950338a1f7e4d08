"""Exact polynomial ring and parser tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinecurv.polynomials import (
    Polynomial,
    PolynomialParseError,
    parse_polynomial,
    polynomial_to_string,
    variable_names,
)


def test_constructors():
    z = Polynomial.zero(2)
    assert z.is_zero and z.nvars == 2
    c = Polynomial.constant(Fraction(3, 2), 2)
    assert c.constant_term() == Fraction(3, 2)
    x = Polynomial.variable(0, 2)
    assert x.degree() == 1
    with pytest.raises(ValueError):
        Polynomial.variable(2, 2)


def test_arithmetic_oracle():
    # (x1 + x2)^2 expanded by hand
    x1 = Polynomial.variable(0, 2)
    x2 = Polynomial.variable(1, 2)
    sq = (x1 + x2) ** 2
    assert sq == x1 * x1 + 2 * x1 * x2 + x2 * x2
    assert sq((Fraction(1, 3), Fraction(2, 3))) == Fraction(1)
    assert sq.degree() == 2


def test_diff():
    x1 = Polynomial.variable(0, 2)
    x2 = Polynomial.variable(1, 2)
    p = x1 * x1 * x2 + 3 * x2
    assert p.diff(0) == 2 * x1 * x2
    assert p.diff(1) == x1 * x1 + Polynomial.constant(3, 2)
    assert p.diff(0).diff(1) == 2 * x1


def test_exact_evaluation():
    x1 = Polynomial.variable(0, 1)
    p = x1 ** 3 - x1
    v = p((Fraction(1, 7),))
    assert v == Fraction(1, 343) - Fraction(1, 7)
    assert isinstance(v, Fraction)


def test_embed():
    x1 = Polynomial.variable(0, 1)
    p = (x1 + 1) ** 2
    q = p.embed(3)
    assert q.nvars == 3
    assert q((Fraction(2), Fraction(99), Fraction(-5))) == 9
    with pytest.raises(ValueError):
        p.embed(0)


def test_mixed_number_coefficients():
    x = Polynomial.variable(0, 1)
    p = Fraction(1, 2) * x + 1
    assert p((Fraction(3),)) == Fraction(5, 2)
    assert (p - p).is_zero


def test_variable_names():
    assert variable_names(2) == ("x1", "x2")
    assert variable_names(2, 2) == ("x1", "x2", "y1", "y2")


def test_to_string_formats():
    x1 = Polynomial.variable(0, 2)
    x2 = Polynomial.variable(1, 2)
    assert polynomial_to_string(Polynomial.zero(2)) == "0"
    assert polynomial_to_string(Polynomial.constant(Fraction(-3, 4), 2)) == "-3/4"
    p = Fraction(3, 2) * x1 ** 2 * x2 - x2 + 1
    s = polynomial_to_string(p)
    assert s == "3/2*x1^2*x2 - x2 + 1"


def test_parse_round_trip_handwritten():
    for text in ("x1^2 - 2*x1*x2 + 1", "-x2 + 3/4", "0", "(x1 + 1)*(x1 - 1)"):
        p = parse_polynomial(text, 2)
        assert parse_polynomial(polynomial_to_string(p), 2) == p


def test_parse_errors_with_position():
    with pytest.raises(PolynomialParseError) as err:
        parse_polynomial("x1 + ", 2)
    assert err.value.position == 5
    with pytest.raises(PolynomialParseError):
        parse_polynomial("x3", 2)  # unknown variable at 2 vars
    with pytest.raises(PolynomialParseError):
        parse_polynomial("x1^-2", 2)  # exponents are nonnegative integers
    with pytest.raises(PolynomialParseError):
        parse_polynomial("1/0", 2)
    with pytest.raises(PolynomialParseError):
        parse_polynomial("x1 $ x2", 2)


def test_parse_fiber_variables():
    p = parse_polynomial("y1*x2 - y2^2", 2, fiber_vars=2)
    assert p.nvars == 4
    vals = (Fraction(0), Fraction(3), Fraction(5), Fraction(2))
    assert p(vals) == 15 - 4


# -- ring axioms under random inputs --------------------------------------

coeffs = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
).filter(lambda f: f != 0)


@st.composite
def polys(draw, nvars=2):
    n_terms = draw(st.integers(min_value=0, max_value=4))
    p = Polynomial.zero(nvars)
    for _ in range(n_terms):
        exps = tuple(draw(st.integers(min_value=0, max_value=3)) for _ in range(nvars))
        term = Polynomial.constant(draw(coeffs), nvars)
        for idx, e in enumerate(exps):
            term = term * Polynomial.variable(idx, nvars) ** e
        p = p + term
    return p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero


@settings(max_examples=60, deadline=None)
@given(polys())
def test_string_round_trip(p):
    assert parse_polynomial(polynomial_to_string(p), 2) == p


@settings(max_examples=40, deadline=None)
@given(polys(), st.fractions(min_value=-3, max_value=3, max_denominator=5),
       st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_evaluation_is_ring_map(p, a, b):
    q = p * p + p
    point = (a, b)
    assert q(point) == p(point) * p(point) + p(point)


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_diff_leibniz(p, q):
    assert (p * q).diff(0) == p.diff(0) * q + p * q.diff(0)
