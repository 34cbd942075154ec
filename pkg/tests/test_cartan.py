from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from cartanpauli.cartan import (
    OperatorMatrix,
    build_charge,
    codifferential,
    codifferential_via_hodge,
    evolution_operator,
    exterior_derivative,
    form_as_operator,
    hamiltonian_contraction,
    hodge_star,
    hodge_star_bruteforce,
    interior_contraction,
    laplacian,
    levi_civita,
    lie_derivative,
    liouvillian,
    op_apply,
    op_compose,
    op_graded_commutator,
)
from cartanpauli.errors import DimensionError, MissingInputError, ParityError
from cartanpauli.exact_arith import I, Polynomial
from cartanpauli.forms import FormVector, VectorField
from cartanpauli.grassmann import basis_from_linear, c_hat, cbar_hat
from cartanpauli.pauli_kron import SparseScalarMatrix
from cartanpauli.sampling import random_form, random_hamiltonian, random_vector_field
from cartanpauli.weyl import DiffOp
from conftest import P, polynomials

DP = DiffOp.partial(2, 1)
DQ = DiffOp.partial(2, 2)


def mul(f: Polynomial) -> DiffOp:
    return DiffOp.multiplication(f)


def op1(entries, parity) -> OperatorMatrix:
    # 1-based (row, col) as printed in the 4x4 displays
    return OperatorMatrix(1, {(r - 1, c - 1): v for (r, c), v in entries.items()}, parity)


def hamiltonians(nvars=2):
    return polynomials(nvars, max_degree=3, max_terms=4)


# -- displayed n=1 matrices -------------------------------------------------------


def test_exterior_derivative_on_generic_form():
    psi = FormVector(1, [P("p^2*q"), P("q^3 + p"), P("p*q"), P("7")])
    a0, aq, ap, _ = psi.components
    expected = FormVector(1, [Polynomial.zero(2), a0.partial(2), a0.partial(1), aq.partial(1) - ap.partial(2)])
    assert op_apply(exterior_derivative(1), psi) == expected
    assert exterior_derivative(1).parity == 1


def test_exterior_derivative_n2_on_q1():
    out = exterior_derivative(2).apply(FormVector.basis((), 2, P("q1", 4)))
    assert out == FormVector.basis((2,), 2)


def test_codifferential_display():
    expected = op1({(1, 2): -DQ, (1, 3): -DP, (2, 4): -DP, (3, 4): DQ}, 1)
    assert codifferential(1) == expected


def test_laplacian_display():
    flat = -(DiffOp.partial(2, 1, 2) + DiffOp.partial(2, 2, 2))
    assert laplacian(1) == op1({(i, i): flat for i in range(1, 5)}, 0)
    assert laplacian(1).apply(FormVector.basis((), 1, P("5"))).is_zero()


def test_interior_contraction_display():
    vp, vq = P("p*q + 1"), P("q^2")
    expected = op1({(1, 2): mul(vq), (1, 3): mul(vp), (2, 4): mul(vp), (3, 4): mul(-vq)}, 1)
    assert interior_contraction(VectorField((vp, vq))) == expected


def test_hamiltonian_contraction_display():
    h = P("p^3 + p*q^2 - 2*q")
    hp, hq = h.partial(1), h.partial(2)
    expected = op1({(1, 2): mul(hp), (1, 3): mul(-hq), (2, 4): mul(-hq), (3, 4): mul(-hp)}, 1)
    assert hamiltonian_contraction(h, 1) == expected


def test_lie_derivative_display():
    h = P("p^3*q + q^2 - p*q")
    il = DiffOp.identity(2).compose(liouvillian(h, 1)).scale(I)
    hqp, hqq, hpp = h.partial(2).partial(1), h.partial(2).partial(2), h.partial(1).partial(1)
    expected = op1(
        {
            (1, 1): il,
            (2, 2): il + mul(hqp),
            (2, 3): mul(-hqq),
            (3, 2): mul(hpp),
            (3, 3): il - mul(hqp),
            (4, 4): il,
        },
        0,
    )
    assert lie_derivative(h, 1) == expected


def test_evolution_operator_display():
    h = P("p^3*q + q^2 - p*q")
    lv = liouvillian(h, 1)
    hqp, hqq, hpp = h.partial(2).partial(1), h.partial(2).partial(2), h.partial(1).partial(1)
    expected = op1(
        {
            (1, 1): lv,
            (2, 2): lv - mul(hqp.scale(I)),
            (2, 3): mul(hqq.scale(I)),
            (3, 2): mul(hpp.scale(-I)),
            (3, 3): lv + mul(hqp.scale(I)),
            (4, 4): lv,
        },
        0,
    )
    assert evolution_operator(h, 1) == expected


def test_liouvillian_is_lambda_omega_grad_h():
    # L = lambda_q dH/dp - lambda_p dH/dq with lambda = -i d
    h = P("p^2*q + q^3")
    expected = DQ.left_multiply(h.partial(1)).scale(-I) + DP.left_multiply(h.partial(2)).scale(I)
    assert liouvillian(h, 1) == expected


def test_free_particle_evolution_operator():
    h = P("p^2/2")
    lv = OperatorMatrix(1, {(i, i): liouvillian(h, 1) for i in range(4)}, 0)
    expected = lv + OperatorMatrix.from_scalar((cbar_hat(2, 1) @ c_hat(1, 1)).scale(I), 1)
    assert evolution_operator(h, 1) == expected


def test_lie_derivative_of_q_under_free_flow():
    out = lie_derivative(P("p^2/2"), 1).apply(FormVector.basis((), 1, P("q")))
    assert out == FormVector.basis((), 1, P("p"))


def test_hodge_display():
    expected = SparseScalarMatrix.from_dense([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
    assert hodge_star(1) == expected


def test_hodge_n2_vacuum_is_plus_top_monomial():
    assert hodge_star(2).entries[(15, 0)] == 1
    assert levi_civita((2, 1, 4, 3), 2) == 1
    assert levi_civita((1, 2, 3, 4), 2) == 1
    assert levi_civita((1, 2, 4, 3), 2) == -1
    assert levi_civita((1, 1, 4, 3), 2) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hodge_matches_permutation_sum(n):
    assert hodge_star(n) == hodge_star_bruteforce(n)


@pytest.mark.parametrize("n", [1, 2])
def test_hodge_squares_to_degree_sign(n):
    star = hodge_star(n)
    twice = star @ star
    for linear in range(4 ** n):
        sign = -1 if basis_from_linear(linear, n).degree % 2 else 1
        assert twice.entries.get((linear, linear)) == sign
    assert len(twice.entries) == 4 ** n


def test_charge_displays():
    assert build_charge("Q") == op1({(2, 1): DQ, (3, 1): DP, (4, 2): DP, (4, 3): -DQ}, 1)
    assert build_charge("Qbar") == op1({(1, 2): DP, (1, 3): -DQ, (2, 4): -DQ, (3, 4): -DP}, 1)
    one = DiffOp.identity(2)
    assert build_charge("Qf") == op1({(2, 2): one, (3, 3): one, (4, 4): one.scale(2)}, 0)
    assert build_charge("K") == op1({(4, 1): one}, 0)
    assert build_charge("Kbar") == op1({(1, 4): one}, 0)


def test_susy_charge_displays():
    h, beta = P("p^2*q - q^3/3"), 3
    mq, mp = DQ - mul(h.partial(2).scale(beta)), DP - mul(h.partial(1).scale(beta))
    pq, pp = DQ + mul(h.partial(2).scale(beta)), DP + mul(h.partial(1).scale(beta))
    assert build_charge("QH", h, beta) == op1({(2, 1): mq, (3, 1): mp, (4, 2): mp, (4, 3): -mq}, 1)
    assert build_charge("QHbar", h, beta) == op1({(1, 2): pp, (1, 3): -pq, (2, 4): -pq, (3, 4): -pp}, 1)


def test_charge_actions_on_zero_forms():
    f = P("p^2*q")
    vac = FormVector.basis((), 1, f)
    z = Polynomial.zero(2)
    assert op_apply(build_charge("Q"), vac) == FormVector(1, [z, f.partial(2), f.partial(1), z])
    assert op_apply(build_charge("K"), vac) == FormVector(1, [z, z, z, f])
    assert op_apply(OperatorMatrix.identity(1), vac) == vac


def test_charge_input_errors():
    with pytest.raises(MissingInputError):
        build_charge("N")
    with pytest.raises(MissingInputError):
        build_charge("QH", P("p"))
    with pytest.raises(ValueError):
        build_charge("Z")
    with pytest.raises(DimensionError):
        build_charge("N", P("p"), n=2)


# -- identities ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_nilpotency(n):
    d, delta = exterior_derivative(n), codifferential(n)
    assert op_compose(d, d).is_zero()
    assert op_compose(delta, delta).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_laplacian_is_d_delta_bracket(n):
    assert op_graded_commutator(exterior_derivative(n), codifferential(n)) == laplacian(n)


@pytest.mark.parametrize("n", [1, 2])
def test_codifferential_two_routes(n):
    assert codifferential(n) == codifferential_via_hodge(n)


@pytest.mark.parametrize("n", [1, 2])
def test_lie_derivative_two_routes(n):
    rng = random.Random(f"lie:{n}")
    for _ in range(5):
        h = random_hamiltonian(rng, n)
        assert lie_derivative(h, n) == evolution_operator(h, n).scale(I)


@pytest.mark.parametrize("n", [1, 2])
def test_brst_commutes_with_evolution(n):
    rng = random.Random(f"qh:{n}")
    for _ in range(5):
        h = random_hamiltonian(rng, n)
        assert op_graded_commutator(build_charge("Q", n=n), evolution_operator(h, n)).is_zero()


@settings(max_examples=25)
@given(hamiltonians())
def test_susy_closure(h):
    qh, qhb = build_charge("QH", h, 1), build_charge("QHbar", h, 1)
    ham = evolution_operator(h, 1)
    assert op_graded_commutator(qh, qhb) == ham.scale(2 * I)
    assert op_graded_commutator(qh, ham).is_zero()
    assert op_graded_commutator(qhb, ham).is_zero()


@pytest.mark.parametrize("n", [1, 2])
def test_charge_algebra(n):
    q, qb, qf, k, kb = (build_charge(kind, n=n) for kind in ("Q", "Qbar", "Qf", "K", "Kbar"))
    br = op_graded_commutator
    assert br(q, q).is_zero() and br(qb, qb).is_zero() and br(q, qb).is_zero()
    assert br(qf, k) == k.scale(2)
    assert br(qf, kb) == kb.scale(-2)
    assert br(qf, q) == q and br(qf, qb) == -qb
    assert br(k, q).is_zero() and br(kb, qb).is_zero()
    assert br(k, qb) == q and br(kb, q) == qb
    # the constant shift equals the number of degrees of freedom
    assert br(k, kb) == qf - OperatorMatrix.identity(n).scale(n)


def test_k_kbar_constant_is_not_one_at_n2():
    k, kb, qf = build_charge("K", n=2), build_charge("Kbar", n=2), build_charge("Qf", n=2)
    assert op_graded_commutator(k, kb) != qf - OperatorMatrix.identity(2)


@pytest.mark.parametrize("n", [1, 2])
def test_number_charge_counts_degree(n):
    rng = random.Random(f"qf:{n}")
    qf = build_charge("Qf", n=n)
    for p in range(2 * n + 1):
        psi = random_form(rng, n, p)
        assert op_apply(qf, psi) == psi.scale(p)


@pytest.mark.parametrize("n", [1, 2])
def test_interior_contraction_properties(n):
    rng = random.Random(f"iota:{n}")
    for _ in range(5):
        iv = interior_contraction(random_vector_field(rng, n))
        assert op_compose(iv, iv).is_zero()
        assert iv.apply(random_form(rng, n, 0)).is_zero()


@pytest.mark.parametrize("n", [1, 2])
def test_geometric_brackets_on_vacuum(n):
    rng = random.Random(f"geo:{n}")
    vac = FormVector.basis((), n)
    d = exterior_derivative(n)
    h = random_hamiltonian(rng, n)
    lie = lie_derivative(h, n)
    ham_i = evolution_operator(h, n).scale(I)
    iv = interior_contraction(random_vector_field(rng, n))
    for p in range(2 * n + 1):
        f = random_form(rng, n, p)
        fop = form_as_operator(f)
        assert op_graded_commutator(build_charge("Q", n=n), fop).apply(vac) == d.apply(f)
        assert op_graded_commutator(iv, fop).apply(vac) == iv.apply(f)
        assert op_graded_commutator(ham_i, fop).apply(vac) == lie.apply(f)


# -- structure -----------------------------------------------------------------


def test_parity_validation():
    with pytest.raises(ParityError):
        OperatorMatrix(1, {(1, 0): DiffOp.identity(2)}, 0)
    mixed = OperatorMatrix(1, {(0, 0): DiffOp.identity(2), (1, 0): DiffOp.identity(2)})
    assert mixed.parity is None
    with pytest.raises(ParityError):
        op_graded_commutator(mixed, build_charge("Q"))


def test_graded_commutator_parity_and_sign():
    q, k = build_charge("Q"), build_charge("K")
    assert op_graded_commutator(q, q) == op_compose(q, q).scale(2)
    assert op_graded_commutator(k, q).parity == 1
    assert op_graded_commutator(q, build_charge("Qbar")).parity == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        exterior_derivative(1) + exterior_derivative(2)
    with pytest.raises(DimensionError):
        exterior_derivative(1).apply(FormVector.zero(2))


def test_scalar_charges_reduce_to_number_matrices():
    qf = build_charge("Qf").to_scalar()
    assert qf == SparseScalarMatrix.from_dense([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]])
    with pytest.raises(ValueError):
        build_charge("Q").to_scalar()


@pytest.mark.parametrize("n", [1, 2])
def test_json_round_trip(n):
    rng = random.Random(f"json:{n}")
    for op in (exterior_derivative(n), evolution_operator(random_hamiltonian(rng, n), n), build_charge("K", n=n)):
        doc = op.to_json()
        assert OperatorMatrix.from_json(doc) == op
        assert doc["parity"] in ("even", "odd")
        keys = [(r, c) for r, c, _ in doc["entries"]]
        assert keys == sorted(keys)
