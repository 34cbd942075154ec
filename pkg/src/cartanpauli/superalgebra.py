"""Finite-dimensional representations of the charge superalgebra.

The 4x4 representation labelled by the Casimir value ``h`` has entries
``sqrt(h)``; they live in the quadratic field ``Q(sqrt h)`` so every check stays
exact whether or not ``h`` is a perfect square.  Irreducibility is certified
by computing the commutant (all matrices commuting with every generator) with
an exact nullspace solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Sequence, Tuple

from .errors import DimensionError
from .exact_arith import GaussianRational
from .report import VerificationReport


def _rational_sqrt(h: Fraction) -> Fraction | None:
    num, den = h.numerator, h.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def as_casimir(h) -> Fraction:
    h = Fraction(h) if not isinstance(h, str) else Fraction(h.strip())
    if h < 0:
        raise ValueError(f"Casimir value must be non-negative (sqrt(h) real), got {h}")
    return h


class ExtScalar:
    """``a + b sqrt(h)`` with rational ``a, b``.

    When ``sqrt(h)`` is rational the value is folded into ``a`` so ``b`` stays 0;
    that keeps the ring a field (no zero divisors).
    """

    __slots__ = ("a", "b", "h")

    def __init__(self, a, b=0, h=0):
        h = Fraction(h)
        a, b = Fraction(a), Fraction(b)
        if b:
            root = _rational_sqrt(h)
            if root is not None:
                a, b = a + b * root, Fraction(0)
        self.a, self.b, self.h = a, b, h

    @classmethod
    def sqrt(cls, h) -> ExtScalar:
        return cls(0, 1, h)

    def _coerce(self, other) -> ExtScalar:
        if isinstance(other, ExtScalar):
            if other.h != self.h and other.b and self.b:
                raise ValueError(f"cannot mix Q(sqrt {self.h}) and Q(sqrt {other.h})")
            return other
        if isinstance(other, (int, Fraction)):
            return ExtScalar(other, 0, self.h)
        raise TypeError(f"cannot combine ExtScalar with {type(other).__name__}")

    def _field(self, other: ExtScalar) -> Fraction:
        return self.h if self.b or not other.b else other.h

    def __add__(self, other):
        o = self._coerce(other)
        return ExtScalar(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar(-self.a, -self.b, self.h)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        h = self._field(o)
        return ExtScalar(self.a * o.a + self.b * o.b * h, self.a * o.b + self.b * o.a, h)

    __rmul__ = __mul__

    def inverse(self) -> ExtScalar:
        norm = self.a * self.a - self.b * self.b * self.h
        if not norm:
            raise ZeroDivisionError("ExtScalar division by zero")
        return ExtScalar(self.a / norm, -self.b / norm, self.h)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and (not self.b or self.h == other.h)

    def __hash__(self):
        return hash((self.a, self.b, self.h if self.b else None))

    def __repr__(self):
        return f"ExtScalar({self}, h={self.h})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f"sqrt({self.h})"
        b = "" if self.b == 1 else "-" if self.b == -1 else f"{self.b}*"
        if not self.a:
            return f"{b}{root}"
        sign = "-" if self.b < 0 else "+"
        mag = abs(self.b)
        return f"{self.a} {sign} {'' if mag == 1 else f'{mag}*'}{root}"


# -- small dense exact matrices ----------------------------------------------------------

Matrix = Tuple[Tuple[object, ...], ...]


def mat(rows: Sequence[Sequence[object]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zeros(dim: int, zero=Fraction(0)) -> Matrix:
    return tuple(tuple(zero for _ in range(dim)) for _ in range(dim))


def unit(dim: int, entries: Dict[Tuple[int, int], object], zero=Fraction(0)) -> Matrix:
    """Dense matrix from 1-based ``(row, col) -> value`` entries."""
    rows = [[zero] * dim for _ in range(dim)]
    for (r, c), v in entries.items():
        rows[r - 1][c - 1] = v
    return mat(rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionError("inner dimensions differ")
    return mat([[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))])


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return mat([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return mat([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def mat_scale(a: Matrix, s) -> Matrix:
    return mat([[x * s for x in row] for row in a])


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_zero(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def identity(dim: int) -> Matrix:
    return unit(dim, {(i, i): Fraction(1) for i in range(1, dim + 1)})


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a))


def graded_bracket(a: Matrix, pa: int, b: Matrix, pb: int) -> Matrix:
    return anticommutator(a, b) if pa and pb else commutator(a, b)


def mat_to_strings(a: Matrix) -> List[List[str]]:
    return [[str(x) for x in row] for row in a]


# -- exact linear algebra ---------------------------------------------------------------------


def nullspace(rows: Sequence[Sequence[object]], ncols: int) -> List[List[object]]:
    """Basis of ``{x : rows . x = 0}`` by Gauss-Jordan elimination over an exact field."""
    work = [list(r) for r in rows if any(r)]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec: List[object] = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for r, pcol in enumerate(pivots):
            vec[pcol] = -work[r][fcol]
        basis.append(vec)
    return basis


def commutant_equations(matrices: Sequence[Matrix], dim: int) -> List[List[object]]:
    """Linear equations on the ``dim^2`` entries of ``X`` expressing ``XM = MX``.

    The coefficient of ``X[a][b]`` in ``(XM - MX)[i][j]`` is
    ``[i == a] M[b][j] - M[i][a] [b == j]``.
    """
    rows = []
    for m in matrices:
        if len(m) != dim or any(len(r) != dim for r in m):
            raise DimensionError(f"commutant needs {dim}x{dim} matrices")
        for i in range(dim):
            for j in range(dim):
                row: List[object] = [Fraction(0)] * (dim * dim)
                for a in range(dim):
                    for b in range(dim):
                        coeff = (m[b][j] if i == a else 0) - (m[i][a] if b == j else 0)
                        row[a * dim + b] = coeff
                rows.append(row)
    return rows


def commutant_dimension(matrices: Sequence[Matrix], dim: int | None = None) -> int:
    if dim is None:
        if not matrices:
            raise DimensionError("dimension is required when no matrices are given")
        dim = len(matrices[0])
    return len(nullspace(commutant_equations(matrices, dim), dim * dim))


# -- sp(2) with 2x2 matrices ----------------------------------------------------------------


def sp2_pauli() -> Dict[str, Matrix]:
    """``Qf = sigma_z``, ``K = sigma^+/2``, ``Kbar = sigma^-/2``."""
    one = Fraction(1)
    return {
        "Qf": unit(2, {(1, 1): one, (2, 2): -one}),
        "K": unit(2, {(1, 2): one}),
        "Kbar": unit(2, {(2, 1): one}),
    }


def two_by_two_q_solutions() -> List[List[object]]:
    """All 2x2 ``Q`` with ``[sigma_z, Q] = Q``, as a nullspace basis.

    An empty list certifies that only ``Q = 0`` works.
    """
    qf = sp2_pauli()["Qf"]
    rows = []
    # ([Qf, Q] - Q)[i][j] = sum_k Qf[i][k] Q[k][j] - Q[i][k] Qf[k][j] - Q[i][j]
    for i in range(2):
        for j in range(2):
            row: List[object] = [Fraction(0)] * 4
            for a in range(2):
                for b in range(2):
                    coeff = (qf[i][a] if b == j else 0) - (qf[b][j] if a == i else 0) - (1 if (a, b) == (i, j) else 0)
                    row[a * 2 + b] = Fraction(coeff)
            rows.append(row)
    return nullspace(rows, 4)


# -- the 4x4 representation ---------------------------------------------------------------------

BASIS_LABELS = ("F1", "F2", "F3", "F4")
BASIS_PARITY = (0, 1, 1, 0)
GENERATOR_PARITY = {"Q": 1, "Qbar": 1, "iN": 1, "minus_iNbar": 1, "H": 0, "Qf": 0, "K": 0, "Kbar": 0}
ODD_GENERATORS = ("Q", "Qbar", "iN", "minus_iNbar")


@dataclass(frozen=True)
class IrrepSet:
    h: Fraction
    matrices: Dict[str, Matrix]
    labels: Tuple[str, ...] = BASIS_LABELS
    parities: Tuple[int, ...] = BASIS_PARITY

    def __getitem__(self, name: str) -> Matrix:
        return self.matrices[name]

    def to_json(self) -> dict:
        return {
            "h": str(self.h),
            "basis": [{"label": l, "parity": "even" if p == 0 else "odd"} for l, p in zip(self.labels, self.parities)],
            "matrices": {k: mat_to_strings(v) for k, v in sorted(self.matrices.items())},
        }


def irrep_build(h) -> IrrepSet:
    h = as_casimir(h)
    zero = ExtScalar(0, 0, h)
    s = ExtScalar.sqrt(h)
    one = ExtScalar(1, 0, h)

    def m(entries):
        return unit(4, entries, zero)

    return IrrepSet(
        h,
        {
            "Q": m({(3, 1): s, (4, 2): s}),
            "minus_iNbar": m({(1, 3): s, (2, 4): s}),
            "Qbar": m({(1, 2): s, (3, 4): -s}),
            "iN": m({(2, 1): s, (4, 3): -s}),
            "H": m({(i, i): ExtScalar(h, 0, h) for i in range(1, 5)}),
            "Qf": m({(2, 2): one, (3, 3): one, (4, 4): one * 2}),
            "K": m({(4, 1): one}),
            "Kbar": m({(1, 4): one}),
        },
    )


def charge_algebra_relations(g: Dict[str, Matrix], dim: int, n: int = 1):
    """``(label, lhs, rhs)`` for the ten-relation charge algebra with generator dict ``g``.

    ``[K, Kbar] = Qf - n`` where ``n`` is the number of degrees of freedom.
    """
    ident = identity(dim)
    z = zeros(dim)
    return [
        ("[Q,Q]+ = 0", anticommutator(g["Q"], g["Q"]), z),
        ("[Qbar,Qbar]+ = 0", anticommutator(g["Qbar"], g["Qbar"]), z),
        ("[Q,Qbar]+ = 0", anticommutator(g["Q"], g["Qbar"]), z),
        ("[Qf,K]- = 2K", commutator(g["Qf"], g["K"]), mat_scale(g["K"], 2)),
        ("[Qf,Kbar]- = -2Kbar", commutator(g["Qf"], g["Kbar"]), mat_scale(g["Kbar"], -2)),
        ("[K,Kbar]- = Qf - 1", commutator(g["K"], g["Kbar"]), mat_sub(g["Qf"], mat_scale(ident, n))),
        ("[Qf,Q]- = Q", commutator(g["Qf"], g["Q"]), g["Q"]),
        ("[Qf,Qbar]- = -Qbar", commutator(g["Qf"], g["Qbar"]), mat_scale(g["Qbar"], -1)),
        ("[K,Q]- = 0", commutator(g["K"], g["Q"]), z),
        ("[K,Qbar]- = Q", commutator(g["K"], g["Qbar"]), g["Q"]),
        ("[Kbar,Q]- = Qbar", commutator(g["Kbar"], g["Q"]), g["Qbar"]),
        ("[Kbar,Qbar]- = 0", commutator(g["Kbar"], g["Qbar"]), z),
    ]


def superalgebra_verify(h) -> VerificationReport:
    h = as_casimir(h)
    rep = irrep_build(h)
    g = rep.matrices
    report = VerificationReport("superalgebra", 1)
    src = "four-dimensional representation of the charges"

    report.run("H = h * identity", src, lambda: mat_eq(g["H"], mat_scale(identity(4), h)))
    nonzero = {("Q", "minus_iNbar"), ("Qbar", "iN")}
    for i, a in enumerate(ODD_GENERATORS):
        for b in ODD_GENERATORS[i:]:
            expected = g["H"] if (a, b) in nonzero or (b, a) in nonzero else zeros(4)
            rhs = "H" if expected is g["H"] else "0"
            report.run(f"[{a},{b}]+ = {rhs}", src, lambda a=a, b=b, e=expected: mat_eq(anticommutator(g[a], g[b]), e))
    for label, lhs, rhs in charge_algebra_relations(g, 4):
        report.run(label, "charge algebra in the 4x4 representation", lambda l=lhs, r=rhs: mat_eq(l, r))
    for name in sorted(g):
        if name != "H":
            report.run(f"[H,{name}]- = 0", "H is central", lambda x=g[name]: mat_is_zero(commutator(g["H"], x)))
    for name, parity in GENERATOR_PARITY.items():
        report.run(f"{name} has definite parity", src, lambda x=g[name], p=parity: _respects_parity(x, p))

    dim = commutant_dimension(list(g.values()), 4)
    if h > 0:
        report.add("commutant dimension = 1 (irreducible)", "commutant certificate", dim == 1, f"dimension {dim}")
    else:
        report.add("commutant dimension > 1 at h = 0 (reducible)", "commutant certificate", dim > 1, f"dimension {dim}")

    sp2 = sp2_pauli()
    report.run("sp2: [sigma_z, sigma+/2]- = 2 sigma+/2", "sp(2) from Pauli matrices",
               lambda: mat_eq(commutator(sp2["Qf"], sp2["K"]), mat_scale(sp2["K"], 2)))
    report.run("sp2: [sigma_z, sigma-/2]- = -2 sigma-/2", "sp(2) from Pauli matrices",
               lambda: mat_eq(commutator(sp2["Qf"], sp2["Kbar"]), mat_scale(sp2["Kbar"], -2)))
    report.run("sp2: [sigma+/2, sigma-/2]- = sigma_z", "sp(2) from Pauli matrices",
               lambda: mat_eq(commutator(sp2["K"], sp2["Kbar"]), sp2["Qf"]))
    report.run("sp2: commutant dimension = 1", "sp(2) from Pauli matrices",
               lambda: commutant_dimension(list(sp2.values()), 2) == 1)
    report.run("no nonzero 2x2 Q with [Qf,Q]- = Q", "2x2 nonexistence certificate",
               lambda: two_by_two_q_solutions() == [])
    return report


def _respects_parity(m: Matrix, parity: int) -> bool:
    return all(not m[i][j] or (BASIS_PARITY[i] + BASIS_PARITY[j]) % 2 == parity for i in range(4) for j in range(4))


def to_gaussian(x) -> GaussianRational:
    """Convert a rational-valued ``ExtScalar`` (or rational) for comparison with operator matrices."""
    if isinstance(x, ExtScalar):
        if x.b:
            raise ValueError(f"{x} is irrational")
        return GaussianRational(x.a)
    return GaussianRational.coerce(x)
