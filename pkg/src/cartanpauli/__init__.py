"""Exact matrix representation of Cartan calculus on phase-space differential forms.

Forms on a ``2n``-dimensional phase space are ``2^(2n)``-vectors of polynomial
coefficients; Grassmann generators are Pauli strings; exterior derivative,
interior contraction, Lie derivative, Hodge star and the symmetry charges are
sparse matrices of polynomial differential operators.  All arithmetic is exact.
"""

from __future__ import annotations

from .cartan import (
    OperatorMatrix,
    build_charge,
    codifferential,
    codifferential_via_hodge,
    evolution_operator,
    exterior_derivative,
    form_as_operator,
    hamiltonian_contraction,
    hodge_star,
    interior_contraction,
    laplacian,
    lie_derivative,
    liouvillian,
    op_apply,
    op_compose,
    op_graded_commutator,
)
from .controls import MUTATIONS, negative_control
from .errors import CartanError, DimensionError, MissingInputError, ParityError, ParseError
from .evolution import EvolutionResult, evolve_free, evolve_taylor, kernel_free_check, liouville_flow_free
from .exact_arith import GaussianRational, Polynomial
from .forms import (
    FormVector,
    SymplecticForm,
    VectorField,
    form_degree_decompose,
    form_from_spec,
    form_to_spec,
    inner_product_density,
    symplectic_form,
)
from .grassmann import BasisIndex, basis_index, c_hat, cbar_hat
from .pauli_kron import SparseScalarMatrix, kron, pauli
from .report import Check, VerificationReport
from .superalgebra import ExtScalar, IrrepSet, commutant_dimension, irrep_build, sp2_pauli, superalgebra_verify
from .verify import commutator_geometry_check, intertwine_check, run_suite
from .weyl import DiffOp

__version__ = "0.1.0"

__all__ = [
    "BasisIndex",
    "CartanError",
    "Check",
    "DiffOp",
    "DimensionError",
    "EvolutionResult",
    "ExtScalar",
    "FormVector",
    "GaussianRational",
    "IrrepSet",
    "MUTATIONS",
    "MissingInputError",
    "OperatorMatrix",
    "ParityError",
    "ParseError",
    "Polynomial",
    "SparseScalarMatrix",
    "SymplecticForm",
    "VectorField",
    "VerificationReport",
    "basis_index",
    "build_charge",
    "c_hat",
    "cbar_hat",
    "codifferential",
    "codifferential_via_hodge",
    "commutant_dimension",
    "commutator_geometry_check",
    "evolution_operator",
    "evolve_free",
    "evolve_taylor",
    "exterior_derivative",
    "form_as_operator",
    "form_degree_decompose",
    "form_from_spec",
    "form_to_spec",
    "hamiltonian_contraction",
    "hodge_star",
    "inner_product_density",
    "interior_contraction",
    "intertwine_check",
    "irrep_build",
    "kernel_free_check",
    "kron",
    "laplacian",
    "lie_derivative",
    "liouville_flow_free",
    "liouvillian",
    "negative_control",
    "op_apply",
    "op_compose",
    "op_graded_commutator",
    "pauli",
    "run_suite",
    "sp2_pauli",
    "superalgebra_verify",
    "symplectic_form",
]
