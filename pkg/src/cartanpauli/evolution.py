"""Time evolution of forms.

Only the free particle ``H = p^2/2`` (one degree of freedom) has a closed form
here: the Grassmann factor ``1 + t cbar_q c^p`` is nilpotent and the Liouville
flow is the polynomial substitution ``q -> q - p t``.  Other Hamiltonians go
through an explicitly truncated exponential series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cartan import evolution_operator
from .errors import DimensionError
from .exact_arith import I, Polynomial
from .forms import FormVector, form_from_spec, form_to_spec
from .grassmann import c_hat, cbar_hat
from .pauli_kron import SparseScalarMatrix
from .report import VerificationReport

FREE_HAMILTONIAN = "1/2*p^2"


def as_time(t) -> Fraction:
    if isinstance(t, Fraction):
        return t
    if isinstance(t, int):
        return Fraction(t)
    if isinstance(t, str):
        try:
            return Fraction(t.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"time must be an exact rational such as 3/2, got {t!r}") from None
    raise TypeError(f"time must be an exact rational, got {type(t).__name__}")


def free_hamiltonian() -> Polynomial:
    return Polynomial.parse(FREE_HAMILTONIAN, 2)


@dataclass(frozen=True)
class EvolutionResult:
    t: Fraction
    psi: FormVector
    method: str
    order: Optional[int] = None

    def to_json(self) -> dict:
        out = {"t": str(self.t), "method": self.method, "order": self.order}
        out.update(self.psi.to_json())
        return out


def _require_one_dof(n: int):
    if n != 1:
        raise DimensionError(f"the free-particle closed form is for n=1, got n={n}")


def liouville_flow_free(f: Polynomial, t) -> Polynomial:
    """``f(q - p t, p)``."""
    if f.nvars != 2:
        raise DimensionError(f"the free-particle flow is for n=1, got {f.nvars} variables")
    t = as_time(t)
    p, q = Polynomial.var(2, 1), Polynomial.var(2, 2)
    return f.substitute([p, q - p.scale(t)])


def grassmann_propagator_free(t) -> SparseScalarMatrix:
    """``1 + t cbar_q c^p``; the product squares to zero, so the series stops."""
    t = as_time(t)
    return SparseScalarMatrix.identity(4) + (cbar_hat(2, 1) @ c_hat(1, 1)).scale(t)


def evolve_free(psi: FormVector, t) -> EvolutionResult:
    _require_one_dof(psi.n)
    t = as_time(t)
    prop = grassmann_propagator_free(t)
    comps = [Polynomial.zero(2) for _ in range(4)]
    for (r, c), v in prop.entries.items():
        if psi[c]:
            comps[r] = comps[r] + psi[c].scale(v)
    flowed = [liouville_flow_free(f, t) for f in comps]
    return EvolutionResult(t, FormVector(1, flowed), "exact")


def evolve_taylor(h: Polynomial, psi: FormVector, t, order: int) -> EvolutionResult:
    """``sum_{m <= order} (-i t H)^m / m!`` applied to ``psi``; no error bound is claimed."""
    if not isinstance(order, int) or order < 0:
        raise ValueError(f"order must be a non-negative integer, got {order!r}")
    t = as_time(t)
    gen = evolution_operator(h, psi.n)
    term = psi
    total = psi
    for m in range(1, order + 1):
        term = gen.apply(term).scale(-I * t / m)
        if term.is_zero():
            break
        total = total + term
    return EvolutionResult(t, total, "taylor", order)


def terminating_order_free(psi: FormVector) -> int:
    """Order past which every free-particle series term vanishes on ``psi``.

    Each application of ``-i H`` either lowers the ``q`` degree by one or moves
    a ``c^q`` coefficient onto ``c^p`` (at most once per term).
    """
    _require_one_dof(psi.n)
    deg = max((f.degree_in(2) for f in psi.components if f), default=0)
    return deg + 1


def _substitute_grassmann_free(psi: FormVector, t: Fraction) -> FormVector:
    """Replace ``c^q`` by ``c^q - t c^p`` inside every monomial of ``psi``."""
    spec = []
    for indices, coeff in form_to_spec(psi):
        expansions = [((), coeff)]
        for k in indices:
            choices = [((k,), Fraction(1))]
            if k == 2:
                choices.append(((1,), -t))
            expansions = [(seq + pick, c.scale(w)) for seq, c in expansions for pick, w in choices]
        spec.extend(expansions)
    return form_from_spec(spec, 1)


def kernel_free_check(psi: FormVector, t) -> VerificationReport:
    """Compare the propagator route with direct substitution in ``(phi, c)``."""
    _require_one_dof(psi.n)
    t = as_time(t)
    report = VerificationReport("kernel", 1)

    def check():
        via_matrix = evolve_free(psi, t).psi
        substituted = _substitute_grassmann_free(psi, t).map(lambda f: liouville_flow_free(f, t))
        if via_matrix != substituted:
            return False, f"t={t}: propagator gives {via_matrix!r}, substitution gives {substituted!r}"
        return True

    report.run(f"kernel substitution agrees with propagator at t={t}", "free-particle propagation kernel", check)
    return report
