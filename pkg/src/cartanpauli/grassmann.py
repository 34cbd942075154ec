"""Matrix representation of the Grassmann generators and the form basis.

Generators are numbered ``k = 1..2n`` in the order ``p1, q1, p2, q2, ...``.
The basis monomial for a subset ``S`` of generators is the product of the
``c^k`` in ascending ``k``; its position in a ``2^(2n)`` vector has bit
``2n - k`` set for every ``k`` in ``S``.  With this layout,

    c^k     = sigma_z^(k-1) (x) sigma^-/2 (x) 1^(2n-k)
    cbar_k  = sigma_z^(k-1) (x) sigma^+/2 (x) 1^(2n-k)

act on coefficient vectors exactly as left multiplication by ``c^k`` and left
differentiation by ``d/dc^k`` act on Grassmann polynomials.  The brute-force
oracle at the bottom of this module implements the latter directly on
monomials, so the two can be compared state by state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from .errors import DimensionError
from .exact_arith import var_name
from .pauli_kron import SparseScalarMatrix, factor_string, pauli


def _check_n(n: int):
    if not isinstance(n, int) or n < 1:
        raise DimensionError(f"need n >= 1 degrees of freedom, got {n!r}")


def _check_k(k: int, n: int):
    _check_n(n)
    if not 1 <= k <= 2 * n:
        raise DimensionError(f"Grassmann index {k} out of range 1..{2 * n}")


def dimension(n: int) -> int:
    _check_n(n)
    return 1 << (2 * n)


def c_hat(k: int, n: int) -> SparseScalarMatrix:
    """Multiplication by ``c^k``."""
    _check_k(k, n)
    return factor_string(k, pauli("minus_half"), n)


def cbar_hat(j: int, n: int) -> SparseScalarMatrix:
    """Left derivative ``d/dc^j``."""
    _check_k(j, n)
    return factor_string(j, pauli("plus_half"), n)


def number_op(k: int, n: int) -> SparseScalarMatrix:
    """``c^k cbar_k``: projector onto basis states containing ``c^k``."""
    return c_hat(k, n) @ cbar_hat(k, n)


# -- basis ----------------------------------------------------------------


@dataclass(frozen=True)
class BasisIndex:
    n: int
    subset: Tuple[int, ...]
    linear: int

    @property
    def degree(self) -> int:
        return len(self.subset)

    @property
    def label(self) -> str:
        return monomial_label(self.subset)


def basis_index(subset: Iterable[int], n: int) -> BasisIndex:
    subset = tuple(sorted(set(subset)))
    for k in subset:
        _check_k(k, n)
    linear = sum(1 << (2 * n - k) for k in subset)
    return BasisIndex(n, subset, linear)


def basis_from_linear(linear: int, n: int) -> BasisIndex:
    dim = dimension(n)
    if not 0 <= linear < dim:
        raise DimensionError(f"linear index {linear} out of range 0..{dim - 1}")
    subset = tuple(k for k in range(1, 2 * n + 1) if linear >> (2 * n - k) & 1)
    return BasisIndex(n, subset, linear)


def degree_of(linear: int) -> int:
    return bin(linear).count("1")


def monomial_label(subset: Sequence[int]) -> str:
    if not subset:
        return "1"
    return "".join(f"c^{{{var_name(k)}}}" for k in subset)


def basis_vector(subset: Iterable[int], n: int) -> SparseScalarMatrix:
    b = basis_index(subset, n)
    return SparseScalarMatrix(dimension(n), 1, {(b.linear, 0): 1})


# -- monomials ---------------------------------------------------------------


@dataclass(frozen=True)
class GrassmannMonomial:
    indices: Tuple[int, ...]
    sign: int


def canonical_sign(seq: Sequence[int]) -> GrassmannMonomial | None:
    """Sort a product of generators; ``None`` if a generator repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return None
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return GrassmannMonomial(tuple(sorted(seq)), -1 if inversions % 2 else 1)


# -- brute-force oracle ----------------------------------------------------------

OracleState = Dict[Tuple[int, ...], object]


def oracle_apply(kind: str, k: int, state: OracleState, n: int) -> OracleState:
    """Act with ``c^k`` (``kind="c"``) or ``d/dc^k`` (``kind="cbar"``) on monomials.

    ``state`` maps sorted index tuples to coefficients (any ring elements).
    """
    _check_k(k, n)
    out: OracleState = {}
    for subset, coeff in state.items():
        before = sum(1 for x in subset if x < k)
        sign = -1 if before % 2 else 1
        if kind == "c":
            if k in subset:
                continue
            new = tuple(sorted(subset + (k,)))
        elif kind == "cbar":
            if k not in subset:
                continue
            new = tuple(x for x in subset if x != k)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        value = coeff if sign == 1 else -coeff
        if new in out:
            value = out[new] + value
        out[new] = value
    return {s: v for s, v in out.items() if v}


def state_to_vector(state: OracleState, n: int) -> SparseScalarMatrix:
    entries = {(basis_index(s, n).linear, 0): v for s, v in state.items()}
    return SparseScalarMatrix(dimension(n), 1, entries)


def vector_to_state(vec: SparseScalarMatrix, n: int) -> OracleState:
    return {basis_from_linear(r, n).subset: v for (r, _), v in vec.entries.items()}
