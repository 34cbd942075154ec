from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartanpauli.errors import DimensionError
from cartanpauli.exact_arith import I, Polynomial
from cartanpauli.weyl import DiffOp, lambda_op
from conftest import P, polynomials


def ops(nvars=2, max_order=2, max_terms=3):
    orders = st.lists(st.integers(0, max_order), min_size=nvars, max_size=nvars).map(tuple)
    return st.dictionaries(orders, polynomials(nvars, max_degree=2, max_terms=2), max_size=max_terms).map(
        lambda t: DiffOp(nvars, t)
    )


@given(ops(), ops(), polynomials())
def test_compose_matches_successive_application(a, b, f):
    assert a.compose(b).apply(f) == a.apply(b.apply(f))


@given(ops(), ops(), ops())
def test_composition_is_associative(a, b, c):
    assert a.compose(b).compose(c) == a.compose(b.compose(c))


@given(ops(), ops(), ops())
def test_composition_distributes(a, b, c):
    assert a.compose(b + c) == a.compose(b) + a.compose(c)


@given(ops(), polynomials())
def test_identity_is_neutral(a, f):
    one = DiffOp.identity(2)
    assert one.compose(a) == a == a.compose(one)
    assert one.apply(f) == f


def test_canonical_commutation_relation():
    # [d_q, q] = 1
    dq = DiffOp.partial(2, 2)
    q = DiffOp.multiplication(P("q"))
    assert dq.compose(q) - q.compose(dq) == DiffOp.identity(2)


def test_leibniz_normal_ordering():
    # d_p o (p^2) = p^2 d_p + 2p
    op = DiffOp.partial(2, 1).compose(DiffOp.multiplication(P("p^2")))
    assert op == DiffOp(2, {(1, 0): P("p^2"), (0, 0): P("2*p")})


def test_lambda_is_minus_i_derivative():
    assert lambda_op(1, 2).apply(P("p^2")) == P("-2i*p")
    assert lambda_op(2, 2).scale(I) == DiffOp.partial(2, 2)


@given(ops())
def test_json_round_trip(a):
    assert DiffOp.from_json(a.to_json(), 2) == a


def test_order_and_multiplication_flags():
    assert DiffOp.partial(2, 1, 3).order() == 3
    assert DiffOp.zero(2).order() == -1
    assert DiffOp.multiplication(P("q")).is_multiplication()
    assert not DiffOp.partial(2, 1).is_multiplication()


def test_dimension_errors():
    with pytest.raises(DimensionError):
        DiffOp.partial(2, 3)
    with pytest.raises(DimensionError):
        DiffOp.identity(2).apply(Polynomial.zero(4))
    with pytest.raises(DimensionError):
        DiffOp.identity(2) + DiffOp.identity(4)
