from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartanpauli.errors import DimensionError, ParseError
from cartanpauli.exact_arith import I, ONE, ZERO, GaussianRational, Polynomial, parse_scalar, var_index, var_name
from conftest import P, gaussians, polynomials, small_fractions


# -- Gaussian rationals ------------------------------------------------------------


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a
    if b:
        assert (a / b) * b == a


@given(gaussians, gaussians)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).im == 0


def test_i_squared():
    assert I * I == -ONE


@pytest.mark.parametrize(
    "value, text",
    [
        (GaussianRational(Fraction(1, 2)), "1/2"),
        (GaussianRational(0, 3), "3i"),
        (GaussianRational(0, -1), "-i"),
        (GaussianRational(Fraction(1, 2), 3), "(1/2+3i)"),
    ],
)
def test_gaussian_text(value, text):
    assert str(value) == text
    assert parse_scalar(text) == value


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


# -- variables -------------------------------------------------------------------------


@pytest.mark.parametrize("k, name", [(1, "p1"), (2, "q1"), (3, "p2"), (4, "q2"), (6, "q3")])
def test_variable_order_interleaves_p_and_q(k, name):
    assert var_name(k) == name
    assert var_index(name, 6) == k


def test_bare_names_mean_first_degree_of_freedom():
    assert var_index("p", 2) == 1
    assert var_index("q", 2) == 2


def test_variable_out_of_range():
    with pytest.raises(DimensionError):
        P("q2", 2)


# -- polynomials: ring structure ------------------------------------------------------------


@given(polynomials(), polynomials(), polynomials())
def test_polynomial_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == Polynomial.zero(2)
    assert f * Polynomial.const(2, 1) == f


@given(polynomials(), polynomials())
def test_degree_is_additive_under_products(f, g):
    if f and g:
        assert (f * g).degree() == f.degree() + g.degree()
    else:
        assert (f * g).degree() == -1


# -- calculus -------------------------------------------------------------------------------


@given(polynomials(), polynomials(), st.integers(1, 2))
def test_partial_derivative_leibniz(f, g, k):
    assert (f * g).partial(k) == f.partial(k) * g + f * g.partial(k)


@given(polynomials(), st.integers(1, 2), st.integers(1, 2))
def test_partials_commute(f, a, b):
    assert f.partial(a).partial(b) == f.partial(b).partial(a)


@given(polynomials(max_degree=4))
def test_high_order_partial_matches_iteration(f):
    assert f.partial(1, order=3) == f.partial(1).partial(1).partial(1)
    assert f.derivative((2, 1)) == f.partial(1).partial(1).partial(2)


def test_partial_examples():
    assert P("p^3*q").partial(1) == P("3*p^2*q")
    assert P("p^3*q").partial(2, order=2) == Polynomial.zero(2)


# -- substitution and evaluation -------------------------------------------------------------


@given(polynomials(), polynomials(), polynomials(max_degree=2), polynomials(max_degree=2))
def test_substitution_is_a_ring_homomorphism(f, g, a, b):
    sub = [a, b]
    assert (f * g).substitute(sub) == f.substitute(sub) * g.substitute(sub)
    assert (f + g).substitute(sub) == f.substitute(sub) + g.substitute(sub)


@given(polynomials(), polynomials(), small_fractions, small_fractions)
def test_evaluation_is_a_ring_homomorphism(f, g, x, y):
    pt = [x, y]
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)


@given(polynomials(), small_fractions, small_fractions)
def test_substitute_then_evaluate(f, x, y):
    consts = [Polynomial.const(2, x), Polynomial.const(2, y)]
    assert f.substitute(consts).constant_term() == f.evaluate([x, y])


def test_identity_substitution():
    f = P("q^2*p - 3*p + 1/2")
    assert f.substitute([P("p"), P("q")]) == f


# -- parsing ---------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p^2/2", {(2, 0): Fraction(1, 2)}),
        ("(p+q)/3", {(1, 0): Fraction(1, 3), (0, 1): Fraction(1, 3)}),
        ("2p q", {(1, 1): 2}),
        ("-q**2 + 1", {(0, 2): -1, (0, 0): 1}),
        ("p1*q1 - p1*q1", {}),
    ],
)
def test_parse_examples(text, expected):
    assert P(text) == Polynomial(2, expected)


def test_parse_imaginary_coefficients():
    assert P("3i*q") == Polynomial(2, {(0, 1): GaussianRational(0, 3)})
    assert P("i*p") == Polynomial(2, {(1, 0): I})


@given(polynomials(nvars=4))
def test_str_parse_round_trip(f):
    assert Polynomial.parse(str(f), 4) == f


@pytest.mark.parametrize("bad", ["", "p^", "p^q", "(p+q", "p $ q", "p/q", "p/0", "x1"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroDivisionError)):
        P(bad)


def test_mixed_variable_counts_rejected():
    with pytest.raises(DimensionError):
        P("p", 2) + P("p", 4)
