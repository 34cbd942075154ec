from __future__ import annotations

import json
import random

import pytest

from cartanpauli.controls import negative_control
from cartanpauli.errors import DimensionError, MissingInputError, ParityError
from cartanpauli.forms import FormVector, VectorField
from cartanpauli.sampling import random_form, random_hamiltonian, random_vector_field
from cartanpauli.verify import (
    SUITES,
    commutator_geometry_check,
    exterior_derivative_direct,
    interior_contraction_direct,
    intertwine_check,
    lie_derivative_direct,
    run_all,
    run_suite,
)
from cartanpauli.cartan import exterior_derivative, interior_contraction, lie_derivative
from conftest import P

H1 = P("p^2/2 + q^2/2 + p*q^3")


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("kind", SUITES)
def test_suites_pass(kind, n):
    h = random_hamiltonian(random.Random(f"t:{n}"), n)
    report = run_suite(kind, n, h=h, beta=1, samples=3)
    assert report.passed, report.to_text()
    assert report.checks


@pytest.mark.parametrize("kind", ["grassmann", "charges", "cartan", "hodge"])
def test_suites_pass_at_n3(kind):
    report = run_suite(kind, 3, seed=1)
    assert report.passed, report.to_text()


def test_grassmann_check_counts():
    report = run_suite("grassmann", 2)
    anti = [c for c in report.checks if "]+" in c.label]
    # 16 ordered c-cbar pairs plus 10 unordered cc and 10 unordered cbar-cbar pairs = 2(2n)^2 + 2n
    n = 2
    assert len(anti) == 2 * (2 * n) ** 2 + 2 * n == 36
    assert len({c.label for c in anti}) == len(anti)


def test_charges_suite_lists_every_relation():
    labels = {c.label for c in run_suite("charges", 1).checks}
    for rel in ("[Q,Q]+ = 0", "[Qf,K]- = 2K", "[K,Kbar]- = Qf - 1", "[Kbar,Q]- = Qbar", "[K,Qbar]- = Q"):
        assert rel in labels


def test_reports_are_deterministic():
    a = run_suite("geometry", 1, seed=5, samples=2).dumps()
    b = run_suite("geometry", 1, seed=5, samples=2).dumps()
    assert a == b
    c = run_suite("geometry", 1, seed=6, samples=2).dumps()
    assert a != c
    labels = [ch["label"] for ch in json.loads(a)["checks"]]
    assert labels == sorted(labels)


@pytest.mark.parametrize("mutation", ["sigma_x", "no_string"])
@pytest.mark.parametrize("kind", ["grassmann", "charges", "cartan"])
def test_grading_mutations_are_caught(mutation, kind):
    with negative_control(mutation):
        report = run_suite(kind, 2, seed=0)
    assert not report.passed
    assert all(f.counterexample for f in report.failures())


def test_sigma_x_names_a_pair():
    with negative_control("sigma_x"):
        report = run_suite("grassmann", 1)
    assert any(f.label.startswith("[c^") for f in report.failures())


def test_omega_flip_is_caught():
    with negative_control("omega_flip"):
        report = run_suite("cartan", 1, seed=0)
    assert not report.passed
    assert any("Hamilton" in f.label for f in report.failures())


def test_controls_do_not_leak():
    with negative_control("sigma_x"):
        pass
    assert run_suite("grassmann", 1).passed


def test_susy_requires_hamiltonian_and_n_is_bounded():
    with pytest.raises(MissingInputError):
        run_suite("susy", 1)
    with pytest.raises(DimensionError):
        run_suite("grassmann", 4)
    assert run_suite("grassmann", 4, max_n=4).passed
    with pytest.raises(DimensionError):
        run_suite("cartan", 1, h=P("q1", 4))
    with pytest.raises(ValueError):
        run_suite("everything", 1)


def test_intertwine_examples():
    assert intertwine_check(P("p^2/2 + q^2/2"), P("q^2*p")).passed
    assert intertwine_check(P("p^2*q - q^3"), P("3"), beta=P("1/2").constant_term()).passed
    with pytest.raises(DimensionError):
        intertwine_check(P("p1", 4), P("1", 4), n=2)


def test_intertwine_for_random_hamiltonians():
    rng = random.Random("intertwine")
    for _ in range(5):
        h = random_hamiltonian(rng, 1)
        psi0 = random_form(rng, 1, 0)[0]
        assert intertwine_check(h, psi0).passed


def test_geometry_example_one_form():
    v = VectorField((P("p*q"), P("q^2 - 1")))
    f = FormVector.basis((2,), 1)
    report = commutator_geometry_check(f, v, H1)
    assert report.passed, report.to_text()
    # iota_V c^q is the q-component of V
    assert interior_contraction(v).apply(f) == FormVector.basis((), 1, P("q^2 - 1"))


def test_geometry_example_zero_form():
    f = FormVector.basis((), 1, P("p^3*q"))
    report = commutator_geometry_check(f, VectorField((P("1"), P("0"))), H1)
    assert report.passed
    assert exterior_derivative(1).apply(f) == exterior_derivative_direct(f)


def test_geometry_random_two_form_n2():
    rng = random.Random("geo2")
    f = random_form(rng, 2, 2)
    report = commutator_geometry_check(f, random_vector_field(rng, 2), random_hamiltonian(rng, 2), seed=3)
    assert report.passed, report.to_text()
    assert report.seed == 3


def test_geometry_rejects_mixed_parity():
    mixed = FormVector(1, [P("1"), P("q"), P("0"), P("0")])
    with pytest.raises(ParityError):
        commutator_geometry_check(mixed, VectorField((P("1"), P("1"))), H1)


@pytest.mark.parametrize("n", [1, 2])
def test_direct_oracles_match_matrix_builders(n):
    rng = random.Random(f"direct:{n}")
    h, v = random_hamiltonian(rng, n), random_vector_field(rng, n)
    for _ in range(5):
        psi = random_form(rng, n)
        assert exterior_derivative(n).apply(psi) == exterior_derivative_direct(psi)
        assert interior_contraction(v).apply(psi) == interior_contraction_direct(v, psi)
        assert lie_derivative(h, n).apply(psi) == lie_derivative_direct(h, psi)


def test_run_all_covers_every_suite():
    reports = run_all([1], samples=1)
    names = {r.suite for r in reports}
    assert {"grassmann", "charges", "cartan", "hodge", "geometry", "intertwine", "kernel"} <= names
    assert {"susy(beta=1)", "susy(beta=1/2)", "superalgebra(h=9/4)"} <= names
    assert all(r.passed for r in reports)
