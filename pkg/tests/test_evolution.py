from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartanpauli.cartan import OperatorMatrix, evolution_operator, exterior_derivative
from cartanpauli.errors import DimensionError
from cartanpauli.evolution import (
    as_time,
    evolve_free,
    evolve_taylor,
    free_hamiltonian,
    kernel_free_check,
    liouville_flow_free,
    terminating_order_free,
)
from cartanpauli.exact_arith import I, Polynomial
from cartanpauli.forms import FormVector
from cartanpauli.sampling import random_form
from conftest import P, polynomials

times = st.fractions(min_value=-3, max_value=3, max_denominator=4)
forms1 = st.lists(polynomials(2, max_degree=3, max_terms=3), min_size=4, max_size=4).map(lambda cs: FormVector(1, cs))
Z = Polynomial.zero(2)


def test_flow_examples():
    assert liouville_flow_free(P("q"), 1) == P("q - p")
    assert liouville_flow_free(P("5"), Fraction(7, 3)) == P("5")
    t = Fraction(-2, 5)
    assert liouville_flow_free(P("q^2"), t) == P("q^2") - P("q*p").scale(2 * t) + P("p^2").scale(t * t)
    with pytest.raises(DimensionError):
        liouville_flow_free(P("q1", 4), 1)


@given(forms1, times)
def test_closed_form_components(psi, t):
    flow = lambda f: liouville_flow_free(f, t)  # noqa: E731
    a0, aq, ap, a2 = psi.components
    expected = FormVector(1, [flow(a0), flow(aq), flow(ap) - flow(aq).scale(t), flow(a2)])
    result = evolve_free(psi, t)
    assert result.psi == expected
    assert result.method == "exact" and result.t == t


@given(forms1)
def test_time_zero_is_identity(psi):
    assert evolve_free(psi, 0).psi == psi
    assert evolve_taylor(free_hamiltonian(), psi, 1, 0).psi == psi


@given(forms1, times, times)
def test_group_property(psi, t1, t2):
    assert evolve_free(evolve_free(psi, t1).psi, t2).psi == evolve_free(psi, t1 + t2).psi


@given(forms1, times)
def test_taylor_terminates_on_free_closed_form(psi, t):
    order = terminating_order_free(psi)
    assert evolve_taylor(free_hamiltonian(), psi, t, order).psi == evolve_free(psi, t).psi


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_terminating_order_is_needed(k):
    psi = FormVector(1, [Z, P(f"q^{k}"), Z, Z])
    order = terminating_order_free(psi)
    assert order == k + 1
    exact = evolve_free(psi, 1).psi
    assert evolve_taylor(free_hamiltonian(), psi, 1, order).psi == exact
    assert evolve_taylor(free_hamiltonian(), psi, 1, order - 1).psi != exact


def test_harmonic_oscillator_partial_sums_match_operator_powers():
    h = P("p^2/2 + q^2/2")
    t = Fraction(1, 3)
    psi = FormVector.basis((), 1, P("q"))
    gen = evolution_operator(h, 1).scale(-I * t)
    # sum of explicit operator powers, applied once at the end
    series, power = OperatorMatrix.identity(1), OperatorMatrix.identity(1)
    for m in range(1, 5):
        power = power.compose(gen)
        series = series + power.scale(Fraction(1, factorial(m)))
    result = evolve_taylor(h, psi, t, 4)
    assert result.psi == series.apply(psi)
    assert result.method == "taylor" and result.order == 4


def test_taylor_rejects_bad_order():
    with pytest.raises(ValueError):
        evolve_taylor(free_hamiltonian(), FormVector.zero(1), 1, -1)


def test_kernel_example_for_cq():
    psi = FormVector.basis((2,), 1)
    t = Fraction(3, 2)
    assert evolve_free(psi, t).psi == FormVector(1, [Z, P("1"), P("1").scale(-t), Z])
    assert kernel_free_check(psi, t).passed


@pytest.mark.parametrize("t", [0, 1, Fraction(3, 2), -2])
def test_kernel_check_on_random_forms(t):
    rng = random.Random(f"kernel:{t}")
    for _ in range(10):
        report = kernel_free_check(random_form(rng, 1), t)
        assert report.passed, report.to_text()


@given(forms1, times)
def test_zero_and_two_form_blocks_evolve_by_substitution_only(psi, t):
    out = evolve_free(psi, t).psi
    assert out[0] == liouville_flow_free(psi[0], t)
    assert out[3] == liouville_flow_free(psi[3], t)


@given(forms1, times)
def test_exterior_derivative_commutes_with_free_evolution(psi, t):
    d = exterior_derivative(1)
    assert d.apply(evolve_free(psi, t).psi) == evolve_free(d.apply(psi), t).psi


def test_wrong_dimension_and_time_types():
    with pytest.raises(DimensionError):
        evolve_free(FormVector.zero(2), 1)
    with pytest.raises(TypeError):
        as_time(0.5)
    assert as_time("3/2") == Fraction(3, 2)


def test_result_json():
    doc = evolve_taylor(free_hamiltonian(), FormVector.basis((2,), 1), 1, 3).to_json()
    assert doc["method"] == "taylor" and doc["order"] == 3 and doc["t"] == "1"
    assert FormVector.from_json(doc) == FormVector(1, [Z, P("1"), P("-1"), Z])
