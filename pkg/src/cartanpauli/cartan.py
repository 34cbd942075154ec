"""Cartan-calculus operators and symmetry charges as matrices of differential operators.

Every operator acts on :class:`~cartanpauli.forms.FormVector` objects.  Entries
are :class:`~cartanpauli.weyl.DiffOp` values in normal order, so operator
identities reduce to structural equality of sparse entry maps.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, Mapping, Tuple

from .errors import DimensionError, MissingInputError, ParityError
from .exact_arith import I, GaussianRational, Polynomial
from .forms import FormVector, VectorField, symplectic_form
from .grassmann import (
    basis_from_linear,
    basis_index,
    c_hat,
    cbar_hat,
    degree_of,
    dimension,
)
from .pauli_kron import SparseScalarMatrix
from .weyl import DiffOp, lambda_op

Entry = Tuple[int, int]
MIXED = None

_INFER = object()


class OperatorMatrix:
    """Sparse ``2^(2n) x 2^(2n)`` matrix of differential operators.

    ``parity`` is 0 (even), 1 (odd) or ``None`` for a mixed-parity operator.
    Graded brackets refuse mixed operators.
    """

    __slots__ = ("n", "entries", "parity")

    def __init__(self, n: int, entries: Mapping[Entry, DiffOp] | None = None, parity=_INFER):
        dim = dimension(n)
        nvars = 2 * n
        clean: Dict[Entry, DiffOp] = {}
        for (r, c), op in (entries or {}).items():
            if not (0 <= r < dim and 0 <= c < dim):
                raise DimensionError(f"entry ({r}, {c}) outside a {dim}x{dim} operator")
            if op.nvars != nvars:
                raise DimensionError(f"entry in {op.nvars} variables, expected {nvars}")
            if op:
                clean[(r, c)] = op
        self.n = n
        self.entries = clean
        inferred = _infer_parity(clean)
        if parity is _INFER:
            self.parity = inferred
        else:
            if parity not in (0, 1, None):
                raise ParityError(f"parity must be 0, 1 or None, got {parity!r}")
            if parity is not None and inferred not in (parity, "zero"):
                raise ParityError(f"entries are inconsistent with parity {parity}")
            self.parity = parity
        if self.parity == "zero":
            self.parity = 0

    @classmethod
    def _raw(cls, n, entries, parity):
        obj = cls.__new__(cls)
        obj.n, obj.entries, obj.parity = n, entries, parity
        return obj

    @classmethod
    def zero(cls, n: int, parity: int | None = 0) -> OperatorMatrix:
        dimension(n)
        return cls._raw(n, {}, parity)

    @classmethod
    def identity(cls, n: int) -> OperatorMatrix:
        one = DiffOp.identity(2 * n)
        return cls._raw(n, {(i, i): one for i in range(dimension(n))}, 0)

    @classmethod
    def from_scalar(cls, matrix: SparseScalarMatrix, n: int) -> OperatorMatrix:
        """Promote a constant matrix (e.g. a Grassmann generator) to an operator."""
        return lift(matrix, DiffOp.identity(2 * n), n)

    @classmethod
    def multiplication(cls, coeff: Polynomial, n: int) -> OperatorMatrix:
        """``coeff * identity``."""
        return cls.identity(n).left_multiply(coeff)

    @property
    def dim(self) -> int:
        return dimension(self.n)

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def __getitem__(self, key: Entry) -> DiffOp:
        return self.entries.get(key, DiffOp.zero(self.nvars))

    def items(self):
        for key in sorted(self.entries):
            yield key, self.entries[key]

    def is_zero(self) -> bool:
        return not self.entries

    # -- algebra ---------------------------------------------------------------

    def _check(self, other: OperatorMatrix):
        if not isinstance(other, OperatorMatrix) or other.n != self.n:
            raise DimensionError("operators on different phase spaces cannot be combined")

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        entries = dict(self.entries)
        for key, op in other.entries.items():
            s = entries.get(key)
            s = op if s is None else s + op
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
        return OperatorMatrix._raw(self.n, entries, _combine_sum(self, other, entries))

    def __neg__(self):
        return OperatorMatrix._raw(self.n, {k: -v for k, v in self.entries.items()}, self.parity)

    def __sub__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> OperatorMatrix:
        factor = GaussianRational.coerce(factor)
        if not factor:
            return OperatorMatrix.zero(self.n, self.parity)
        return OperatorMatrix._raw(self.n, {k: v.scale(factor) for k, v in self.entries.items()}, self.parity)

    def left_multiply(self, coeff: Polynomial) -> OperatorMatrix:
        """Multiply every entry on the left by the function ``coeff``."""
        entries = {}
        for k, v in self.entries.items():
            w = v.left_multiply(coeff)
            if w:
                entries[k] = w
        return OperatorMatrix._raw(self.n, entries, self.parity)

    def compose(self, other: OperatorMatrix) -> OperatorMatrix:
        """``self o other`` (apply ``other`` first)."""
        self._check(other)
        by_row: Dict[int, list] = {}
        for (k, c), b in other.entries.items():
            by_row.setdefault(k, []).append((c, b))
        out: Dict[Entry, DiffOp] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                prod = a.compose(b)
                if not prod:
                    continue
                s = out.get((r, c))
                out[(r, c)] = prod if s is None else s + prod
        entries = {k: v for k, v in out.items() if v}
        if self.parity is None or other.parity is None:
            parity = _infer_parity(entries)
            parity = 0 if parity == "zero" else parity
        else:
            parity = (self.parity + other.parity) % 2
        return OperatorMatrix._raw(self.n, entries, parity)

    def __matmul__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.compose(other)

    def __mul__(self, other):
        if isinstance(other, OperatorMatrix):
            return self.compose(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def apply(self, psi: FormVector) -> FormVector:
        if psi.n != self.n:
            raise DimensionError(f"operator for n={self.n} applied to a form with n={psi.n}")
        comps = [Polynomial.zero(self.nvars) for _ in range(self.dim)]
        for (r, c), op in self.entries.items():
            f = psi.components[c]
            if f:
                comps[r] = comps[r] + op.apply(f)
        return FormVector(self.n, comps)

    def graded_commutator(self, other: OperatorMatrix) -> OperatorMatrix:
        """``[A, B] = AB - (-1)^(|A||B|) BA``; both operands need a definite parity."""
        self._check(other)
        if self.parity is None or other.parity is None:
            raise ParityError("graded bracket of a mixed-parity operator is undefined")
        ab = self.compose(other)
        ba = other.compose(self)
        result = ab + ba if self.parity and other.parity else ab - ba
        result.parity = (self.parity + other.parity) % 2
        return result

    def to_scalar(self) -> SparseScalarMatrix:
        """The constant matrix, if every entry is multiplication by a constant."""
        entries = {}
        zero_orders = (0,) * self.nvars
        for key, op in self.entries.items():
            if set(op.terms) != {zero_orders} or not op.terms[zero_orders].is_constant():
                raise ValueError("operator has non-constant entries")
            entries[key] = op.terms[zero_orders].constant_term()
        return SparseScalarMatrix(self.dim, self.dim, entries)

    # -- comparison and serialization ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, frozenset(self.entries.items())))

    def __repr__(self):
        return f"OperatorMatrix(n={self.n}, parity={self.parity}, nnz={len(self.entries)})"

    def __str__(self):
        lines = [f"n={self.n} parity={_parity_name(self.parity)} dim={self.dim}"]
        for (r, c), op in self.items():
            lines.append(f"[{r},{c}] {op}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parity": _parity_name(self.parity),
            "entries": [[r, c, op.to_json()] for (r, c), op in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> OperatorMatrix:
        n = int(data["n"])
        parity = {"even": 0, "odd": 1, "mixed": None}[data.get("parity", "mixed")]
        entries = {(r, c): DiffOp.from_json(op, 2 * n) for r, c, op in data["entries"]}
        return cls(n, entries, parity)


def _parity_name(parity) -> str:
    return {0: "even", 1: "odd", None: "mixed"}[parity]


def _infer_parity(entries: Mapping[Entry, DiffOp]):
    parities = {(degree_of(r) - degree_of(c)) % 2 for r, c in entries}
    if not parities:
        return "zero"
    if len(parities) > 1:
        return None
    return parities.pop()


def _combine_sum(a: OperatorMatrix, b: OperatorMatrix, entries):
    if a.parity is not None and a.parity == b.parity:
        return a.parity
    if not a.entries:
        return b.parity
    if not b.entries:
        return a.parity
    parity = _infer_parity(entries)
    return 0 if parity == "zero" else parity


def op_apply(a: OperatorMatrix, psi: FormVector) -> FormVector:
    return a.apply(psi)


def op_compose(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    return a.compose(b)


def op_graded_commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    return a.graded_commutator(b)


def lift(matrix: SparseScalarMatrix, op: DiffOp, n: int) -> OperatorMatrix:
    """The operator with entries ``matrix[r, c] * op``."""
    if matrix.shape != (dimension(n), dimension(n)):
        raise DimensionError(f"matrix of shape {matrix.shape} does not fit n={n}")
    entries = {key: op.scale(v) for key, v in matrix.entries.items()}
    return OperatorMatrix(n, {k: v for k, v in entries.items() if v})


def _sum(ops: Iterable[OperatorMatrix], n: int) -> OperatorMatrix:
    total = OperatorMatrix.zero(n)
    first = True
    for op in ops:
        total = op if first else total + op
        first = False
    return total


def _grad(h: Polynomial) -> list:
    return [h.partial(k) for k in range(1, h.nvars + 1)]


def _check_hamiltonian(h: Polynomial | None, n: int, what: str) -> Polynomial:
    if h is None:
        raise MissingInputError(f"{what} needs a Hamiltonian")
    if h.nvars != 2 * n:
        raise DimensionError(f"Hamiltonian in {h.nvars} variables, expected {2 * n}")
    return h


# -- Cartan calculus -------------------------------------------------------------


def exterior_derivative(n: int) -> OperatorMatrix:
    """``d = sum_k c^k d_k``."""
    nvars = 2 * n
    return _sum((lift(c_hat(k, n), DiffOp.partial(nvars, k), n) for k in range(1, nvars + 1)), n)


def codifferential(n: int) -> OperatorMatrix:
    """``delta = -sum_k cbar_k d_k``."""
    nvars = 2 * n
    return _sum((lift(cbar_hat(k, n), DiffOp.partial(nvars, k), n) for k in range(1, nvars + 1)), n).scale(-1)


def codifferential_via_hodge(n: int) -> OperatorMatrix:
    """``-* d *``, built from the Hodge matrix rather than from ``cbar``."""
    star = OperatorMatrix.from_scalar(hodge_star(n), n)
    return star.compose(exterior_derivative(n)).compose(star).scale(-1)


def laplacian(n: int) -> OperatorMatrix:
    """``-(sum_k d_k^2)`` times the identity."""
    nvars = 2 * n
    flat = DiffOp.zero(nvars)
    for k in range(1, nvars + 1):
        flat = flat - DiffOp.partial(nvars, k, 2)
    return OperatorMatrix(n, {(i, i): flat for i in range(dimension(n))}, 0)


def interior_contraction(v: VectorField) -> OperatorMatrix:
    """``iota_V = sum_k V^k cbar_k`` with ``V`` listed in generator order (p1, q1, ...)."""
    n = v.n
    nvars = 2 * n
    parts = []
    for k, comp in enumerate(v.components, start=1):
        if comp:
            parts.append(lift(cbar_hat(k, n), DiffOp.multiplication(comp), n))
    return _sum(parts, n) if parts else OperatorMatrix.zero(n, 1)


def hamiltonian_contraction(h: Polynomial, n: int) -> OperatorMatrix:
    """``iota_h`` for the Hamiltonian vector field ``h^j = omega^(jk) d_k H``."""
    h = _check_hamiltonian(h, n, "iota_h")
    return interior_contraction(symplectic_form(n).hamiltonian_vector_field(h))


def lie_derivative(h: Polynomial, n: int) -> OperatorMatrix:
    """``L_h = d iota_h + iota_h d``."""
    h = _check_hamiltonian(h, n, "the Lie derivative")
    d = exterior_derivative(n)
    iota = hamiltonian_contraction(h, n)
    result = d.compose(iota) + iota.compose(d)
    result.parity = 0
    return result


def liouvillian(h: Polynomial, n: int) -> DiffOp:
    """``L = -i omega^(ab) (d_b H) d_a``."""
    h = _check_hamiltonian(h, n, "the Liouvillian")
    omega = symplectic_form(n).upper
    grads = _grad(h)
    nvars = 2 * n
    total = DiffOp.zero(nvars)
    for a in range(nvars):
        for b in range(nvars):
            w = omega[a][b]
            if w and grads[b]:
                total = total + DiffOp.partial(nvars, a + 1).left_multiply(grads[b].scale(w))
    return total.scale(-I)


def evolution_operator(h: Polynomial, n: int) -> OperatorMatrix:
    """``L 1 - i omega^(ac) (d_c d_b H) c^b cbar_a``, assembled term by term."""
    h = _check_hamiltonian(h, n, "the evolution operator")
    nvars = 2 * n
    omega = symplectic_form(n).upper
    hess = [[h.partial(b + 1).partial(c + 1) for c in range(nvars)] for b in range(nvars)]
    result = lift(SparseScalarMatrix.identity(dimension(n)), liouvillian(h, n), n)
    for a in range(nvars):
        for c in range(nvars):
            w = omega[a][c]
            if not w:
                continue
            for b in range(nvars):
                coeff = hess[c][b]
                if not coeff:
                    continue
                pair = c_hat(b + 1, n) @ cbar_hat(a + 1, n)
                result = result + lift(pair, DiffOp.multiplication(coeff.scale(-I * w)), n)
    result.parity = 0
    return result


# -- Hodge star ------------------------------------------------------------------------


def _reference_position(n: int) -> Dict[int, int]:
    # orientation q1 p1 q2 p2 ... is positive
    order = [k for i in range(n) for k in (2 * i + 2, 2 * i + 1)]
    return {k: pos for pos, k in enumerate(order)}


def levi_civita(seq, n: int) -> int:
    """Sign of ``seq`` relative to the positive orientation; 0 on repeats."""
    seq = list(seq)
    if len(seq) != 2 * n or len(set(seq)) != len(seq):
        return 0
    pos = _reference_position(n)
    p = [pos[k] for k in seq]
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def hodge_star(n: int) -> SparseScalarMatrix:
    """Euclidean Hodge star on the form basis."""
    dim = dimension(n)
    full = set(range(1, 2 * n + 1))
    entries = {}
    for linear in range(dim):
        subset = basis_from_linear(linear, n).subset
        rest = tuple(sorted(full - set(subset)))
        entries[(basis_index(rest, n).linear, linear)] = levi_civita(subset + rest, n)
    return SparseScalarMatrix(dim, dim, entries)


def hodge_star_bruteforce(n: int) -> SparseScalarMatrix:
    """Direct transcription of ``*(dx^I) = 1/(N-p)! eps_(I J) dx^J`` summed over all ``J``.

    Every ordering of the complementary indices is visited and re-sorted with its
    own permutation sign; used as an oracle for :func:`hodge_star`.
    """
    from math import factorial

    from .grassmann import canonical_sign

    dim = dimension(n)
    full = range(1, 2 * n + 1)
    out: Dict[Entry, Fraction] = {}
    for linear in range(dim):
        subset = basis_from_linear(linear, n).subset
        rest = [k for k in full if k not in subset]
        weight = Fraction(1, factorial(len(rest)))
        for order in permutations(rest):
            eps = levi_civita(subset + order, n)
            mono = canonical_sign(order)
            key = (basis_index(mono.indices, n).linear, linear)
            out[key] = out.get(key, Fraction(0)) + weight * eps * mono.sign
    return SparseScalarMatrix(dim, dim, out)


# -- charges --------------------------------------------------------------------------

CHARGE_KINDS = ("Q", "Qbar", "Qf", "K", "Kbar", "N", "Nbar", "QH", "QHbar")
CHARGE_PARITY = {"Q": 1, "Qbar": 1, "N": 1, "Nbar": 1, "QH": 1, "QHbar": 1, "Qf": 0, "K": 0, "Kbar": 0}


def _brst(n: int) -> OperatorMatrix:
    # Q = i c^a lambda_a
    nvars = 2 * n
    return _sum((lift(c_hat(a, n), lambda_op(a, nvars).scale(I), n) for a in range(1, nvars + 1)), n)


def _anti_brst(n: int) -> OperatorMatrix:
    # Qbar = i cbar_a omega^(ab) lambda_b
    nvars = 2 * n
    omega = symplectic_form(n).upper
    parts = []
    for a in range(nvars):
        for b in range(nvars):
            if omega[a][b]:
                parts.append(lift(cbar_hat(a + 1, n), lambda_op(b + 1, nvars).scale(I * omega[a][b]), n))
    return _sum(parts, n)


def _scalar_charge(kind: str, n: int) -> SparseScalarMatrix:
    nvars = 2 * n
    dim = dimension(n)
    total = SparseScalarMatrix.zero(dim)
    sym = symplectic_form(n)
    half = Fraction(1, 2)
    for a in range(1, nvars + 1):
        if kind == "Qf":
            total = total + c_hat(a, n) @ cbar_hat(a, n)
            continue
        for b in range(1, nvars + 1):
            if kind == "K" and sym.lower[a - 1][b - 1]:
                total = total + (c_hat(a, n) @ c_hat(b, n)).scale(half * sym.lower[a - 1][b - 1])
            elif kind == "Kbar" and sym.upper[a - 1][b - 1]:
                total = total + (cbar_hat(a, n) @ cbar_hat(b, n)).scale(half * sym.upper[a - 1][b - 1])
    return total


def _n_charge(h: Polynomial, n: int) -> OperatorMatrix:
    # N = c^a d_a H
    parts = [lift(c_hat(a, n), DiffOp.multiplication(g), n) for a, g in enumerate(_grad(h), start=1) if g]
    return _sum(parts, n) if parts else OperatorMatrix.zero(n, 1)


def _nbar_charge(h: Polynomial, n: int) -> OperatorMatrix:
    # Nbar = cbar_a omega^(ab) d_b H
    omega = symplectic_form(n).upper
    grads = _grad(h)
    parts = []
    for a in range(2 * n):
        for b in range(2 * n):
            if omega[a][b] and grads[b]:
                parts.append(lift(cbar_hat(a + 1, n), DiffOp.multiplication(grads[b].scale(omega[a][b])), n))
    return _sum(parts, n) if parts else OperatorMatrix.zero(n, 1)


def build_charge(kind: str, h: Polynomial | None = None, beta=None, n: int = 1) -> OperatorMatrix:
    """One of ``Q, Qbar, Qf, K, Kbar, N, Nbar, QH, QHbar``.

    ``QH = Q - beta N`` and ``QHbar = Qbar + beta Nbar``.
    """
    if kind not in CHARGE_KINDS:
        raise ValueError(f"unknown charge {kind!r}; choose from {', '.join(CHARGE_KINDS)}")
    dimension(n)
    if kind == "Q":
        result = _brst(n)
    elif kind == "Qbar":
        result = _anti_brst(n)
    elif kind in ("Qf", "K", "Kbar"):
        result = OperatorMatrix.from_scalar(_scalar_charge(kind, n), n)
    else:
        h = _check_hamiltonian(h, n, kind)
        if kind == "N":
            result = _n_charge(h, n)
        elif kind == "Nbar":
            result = _nbar_charge(h, n)
        else:
            if beta is None:
                raise MissingInputError(f"{kind} needs beta")
            beta = GaussianRational.coerce(beta)
            if kind == "QH":
                result = _brst(n) - _n_charge(h, n).scale(beta)
            else:
                result = _anti_brst(n) + _nbar_charge(h, n).scale(beta)
    result.parity = CHARGE_PARITY[kind]
    return result


# -- forms as operators ---------------------------------------------------------------


def form_as_operator(psi: FormVector) -> OperatorMatrix:
    """``sum_S psi_S * c^(k1) ... c^(kp)`` with the generators in ascending order."""
    n = psi.n
    total = OperatorMatrix.zero(n, psi.parity())
    for linear, coeff in psi.nonzero():
        mono = SparseScalarMatrix.identity(dimension(n))
        for k in basis_from_linear(linear, n).subset:
            mono = mono @ c_hat(k, n)
        total = total + lift(mono, DiffOp.multiplication(coeff), n)
    total.parity = psi.parity()
    return total
