"""Inhomogeneous differential forms as vectors of polynomial coefficients.

A form on the ``2n``-dimensional phase space is stored as ``2^(2n)``
polynomials, one per canonical basis monomial (see :mod:`cartanpauli.grassmann`).
For ``n = 1`` the layout is ``(psi_0, psi_q, psi_p, psi_2)`` for
``psi_0 + psi_q c^q + psi_p c^p + psi_2 c^p c^q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .controls import active_mutation
from .errors import DimensionError, ParseError
from .exact_arith import GaussianRational, Polynomial
from .grassmann import basis_from_linear, basis_index, canonical_sign, degree_of, dimension

FormSpec = List[Tuple[Tuple[int, ...], Polynomial]]


class FormVector:
    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Sequence[Polynomial]):
        dim = dimension(n)
        if len(components) != dim:
            raise DimensionError(f"a form for n={n} needs {dim} components, got {len(components)}")
        for c in components:
            if c.nvars != 2 * n:
                raise DimensionError(f"component in {c.nvars} variables, expected {2 * n}")
        self.n = n
        self.components = tuple(components)

    @classmethod
    def zero(cls, n: int) -> FormVector:
        z = Polynomial.zero(2 * n)
        return cls(n, [z] * dimension(n))

    @classmethod
    def basis(cls, subset: Sequence[int], n: int, coeff: Polynomial | None = None) -> FormVector:
        comps = list(cls.zero(n).components)
        comps[basis_index(subset, n).linear] = coeff if coeff is not None else Polynomial.const(2 * n, 1)
        return cls(n, comps)

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def __getitem__(self, linear: int) -> Polynomial:
        return self.components[linear]

    def __len__(self):
        return len(self.components)

    def nonzero(self):
        """``(linear index, coefficient)`` for every nonzero component."""
        return [(i, c) for i, c in enumerate(self.components) if c]

    def is_zero(self) -> bool:
        return not any(self.components)

    def degrees(self) -> set:
        return {degree_of(i) for i, c in enumerate(self.components) if c}

    def parity(self) -> int | None:
        """0 or 1 when every nonzero component has the same degree parity, else ``None``."""
        parities = {d % 2 for d in self.degrees()}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def _check(self, other: FormVector):
        if not isinstance(other, FormVector) or other.n != self.n:
            raise DimensionError("forms on different phase spaces cannot be combined")

    def __add__(self, other):
        self._check(other)
        return FormVector(self.n, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._check(other)
        return FormVector(self.n, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return FormVector(self.n, [-a for a in self.components])

    def scale(self, factor) -> FormVector:
        return FormVector(self.n, [a.scale(factor) for a in self.components])

    def map(self, fn) -> FormVector:
        return FormVector(self.n, [fn(a) for a in self.components])

    def __eq__(self, other):
        if not isinstance(other, FormVector):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash((self.n, self.components))

    def __repr__(self):
        return f"FormVector(n={self.n}, {[str(c) for c in self.components]})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"indices": list(s), "coeff": str(c)} for s, c in form_to_spec(self)],
            "vector": [
                {"index": i, "basis": basis_from_linear(i, self.n).label, "coeff": str(c)}
                for i, c in enumerate(self.components)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> FormVector:
        """Read ``terms`` (index lists may be in any order); fall back to a full ``vector`` dump."""
        try:
            return cls._from_json(data)
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError(f"malformed form document: {type(exc).__name__} {exc}") from None

    @classmethod
    def _from_json(cls, data: dict) -> FormVector:
        n = int(data["n"])
        if "terms" not in data and "vector" in data:
            comps = [Polynomial.zero(2 * n) for _ in range(dimension(n))]
            for item in data["vector"]:
                comps[int(item["index"])] = Polynomial.parse(item["coeff"], 2 * n)
            return cls(n, comps)
        spec = [(tuple(t["indices"]), Polynomial.parse(t["coeff"], 2 * n)) for t in data.get("terms", [])]
        return form_from_spec(spec, n)


def form_from_spec(spec: FormSpec, n: int) -> FormVector:
    """Accumulate ``sum coeff * c^(i1) ... c^(ip)`` onto canonical basis monomials."""
    comps: Dict[int, Polynomial] = {}
    for indices, coeff in spec:
        mono = canonical_sign(indices)
        if mono is None:
            basis_index(indices, n)  # still range-check the indices
            continue
        b = basis_index(mono.indices, n)
        term = coeff if mono.sign == 1 else -coeff
        comps[b.linear] = comps[b.linear] + term if b.linear in comps else term
    zero = Polynomial.zero(2 * n)
    return FormVector(n, [comps.get(i, zero) for i in range(dimension(n))])


def form_to_spec(psi: FormVector) -> FormSpec:
    return [(basis_from_linear(i, psi.n).subset, c) for i, c in psi.nonzero()]


def form_degree_decompose(psi: FormVector) -> Dict[int, FormVector]:
    """Split into homogeneous parts keyed by form degree; zero parts are omitted."""
    zero = Polynomial.zero(psi.nvars)
    parts: Dict[int, List[Polynomial]] = {}
    for i, c in psi.nonzero():
        comps = parts.setdefault(degree_of(i), [zero] * len(psi))
        comps[i] = c
    return {d: FormVector(psi.n, comps) for d, comps in sorted(parts.items())}


def inner_product_density(psi: FormVector, phi: FormVector) -> Polynomial:
    """Pointwise integrand ``sum_b conj(psi_b) * phi_b`` of the form scalar product."""
    psi._check(phi)
    total = Polynomial.zero(psi.nvars)
    for a, b in zip(psi.components, phi.components):
        if a and b:
            total = total + a.conjugate() * b
    return total


# -- vector fields and the symplectic structure ----------------------------------


@dataclass(frozen=True)
class VectorField:
    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps or len(comps) % 2:
            raise DimensionError("a phase-space vector field needs 2n components")
        if any(c.nvars != len(comps) for c in comps):
            raise DimensionError("vector field components must live in 2n variables")

    @property
    def n(self) -> int:
        return len(self.components) // 2


@dataclass(frozen=True)
class SymplecticForm:
    """``upper[a][b]`` is the Poisson tensor; ``lower`` is its matrix inverse."""

    n: int
    upper: Tuple[Tuple[Fraction, ...], ...]
    lower: Tuple[Tuple[Fraction, ...], ...]

    def hamiltonian_vector_field(self, hamiltonian: Polynomial) -> VectorField:
        """``h^j = upper[j][k] d_k H``."""
        if hamiltonian.nvars != 2 * self.n:
            raise DimensionError("Hamiltonian and symplectic form disagree on the dimension")
        grads = [hamiltonian.partial(k) for k in range(1, 2 * self.n + 1)]
        comps = []
        for row in self.upper:
            total = Polynomial.zero(2 * self.n)
            for w, g in zip(row, grads):
                if w:
                    total = total + g.scale(w)
            comps.append(total)
        return VectorField(tuple(comps))


def symplectic_form(n: int) -> SymplecticForm:
    """Block-diagonal ``[[0, -1], [1, 0]]`` per degree of freedom in (p, q) order.

    This orientation gives ``dq/dt = dH/dp`` and ``dp/dt = -dH/dq``.
    """
    if not isinstance(n, int) or n < 1:
        raise DimensionError(f"need n >= 1 degrees of freedom, got {n!r}")
    sign = -1 if active_mutation() == "omega_flip" else 1
    size = 2 * n
    upper = [[Fraction(0)] * size for _ in range(size)]
    lower = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        p, q = 2 * i, 2 * i + 1
        upper[p][q] = Fraction(-sign)
        upper[q][p] = Fraction(sign)
        # inverse of [[0, -s], [s, 0]] is [[0, s], [-s, 0]] for s = +-1
        lower[p][q] = Fraction(sign)
        lower[q][p] = Fraction(-sign)
    return SymplecticForm(n, tuple(map(tuple, upper)), tuple(map(tuple, lower)))


def vector_field_from_strings(texts: Sequence[str], n: int) -> VectorField:
    if len(texts) != 2 * n:
        raise DimensionError(f"a vector field for n={n} needs {2 * n} components, got {len(texts)}")
    return VectorField(tuple(Polynomial.parse(t, 2 * n) for t in texts))


def real_scalar(value) -> GaussianRational:
    return GaussianRational.coerce(value)
