"""Polynomial-coefficient differential operators in normal order.

A :class:`DiffOp` is a finite sum ``sum_alpha c_alpha(x) d^alpha`` with every
coefficient written to the left of its derivative.  Because that normal form is
unique, two operators are equal exactly when their term maps are equal, which
lets operator identities be checked structurally rather than pointwise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, Mapping, Tuple

from .errors import DimensionError
from .exact_arith import I, GaussianRational, Polynomial, var_name

Orders = Tuple[int, ...]


class DiffOp:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Orders, Polynomial] | None = None):
        self.nvars = nvars
        clean: Dict[Orders, Polynomial] = {}
        for orders, coeff in (terms or {}).items():
            orders = tuple(orders)
            if len(orders) != nvars or any(o < 0 for o in orders):
                raise DimensionError(f"derivative orders {orders} do not fit {nvars} variables")
            if coeff.nvars != nvars:
                raise DimensionError("coefficient and operator disagree on the variable count")
            if coeff:
                clean[orders] = coeff
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int) -> DiffOp:
        return cls._raw(nvars, {})

    @classmethod
    def identity(cls, nvars: int) -> DiffOp:
        return cls.multiplication(Polynomial.const(nvars, 1))

    @classmethod
    def multiplication(cls, coeff: Polynomial) -> DiffOp:
        """The zeroth-order operator ``f -> coeff * f``."""
        if not coeff:
            return cls.zero(coeff.nvars)
        return cls._raw(coeff.nvars, {(0,) * coeff.nvars: coeff})

    @classmethod
    def scalar(cls, nvars: int, value) -> DiffOp:
        return cls.multiplication(Polynomial.const(nvars, value))

    @classmethod
    def partial(cls, nvars: int, k: int, order: int = 1) -> DiffOp:
        """``d^order / d(x_k)^order`` for the 1-based variable index ``k``."""
        if not 1 <= k <= nvars:
            raise DimensionError(f"variable index {k} out of range 1..{nvars}")
        orders = [0] * nvars
        orders[k - 1] = order
        return cls._raw(nvars, {tuple(orders): Polynomial.const(nvars, 1)})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def order(self) -> int:
        return max((sum(o) for o in self.terms), default=-1)

    def is_multiplication(self) -> bool:
        return all(not any(o) for o in self.terms)

    def items(self):
        """Terms ordered by derivative multi-index (graded, highest first)."""
        for orders in sorted(self.terms, key=lambda o: (sum(o), o), reverse=True):
            yield orders, self.terms[orders]

    # -- linear structure -----------------------------------------------------

    def _check(self, other: DiffOp):
        if other.nvars != self.nvars:
            raise DimensionError(
                f"operators in {self.nvars} and {other.nvars} variables cannot be combined"
            )

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        terms = dict(self.terms)
        for orders, c in other.terms.items():
            s = terms.get(orders)
            if s is None:
                terms[orders] = c
            else:
                s = s + c
                if s:
                    terms[orders] = s
                else:
                    del terms[orders]
        return DiffOp._raw(self.nvars, terms)

    def __neg__(self):
        return DiffOp._raw(self.nvars, {o: -c for o, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> DiffOp:
        factor = GaussianRational.coerce(factor)
        if not factor:
            return DiffOp.zero(self.nvars)
        return DiffOp._raw(self.nvars, {o: c.scale(factor) for o, c in self.terms.items()})

    def left_multiply(self, coeff: Polynomial) -> DiffOp:
        """``coeff * self``: multiplication applied after this operator."""
        if coeff.nvars != self.nvars:
            raise DimensionError("coefficient and operator disagree on the variable count")
        terms = {}
        for o, c in self.terms.items():
            prod = coeff * c
            if prod:
                terms[o] = prod
        return DiffOp._raw(self.nvars, terms)

    # -- action and composition -------------------------------------------------

    def apply(self, f: Polynomial) -> Polynomial:
        if f.nvars != self.nvars:
            raise DimensionError(f"operator in {self.nvars} variables applied to a polynomial in {f.nvars}")
        result = Polynomial.zero(self.nvars)
        for orders, coeff in self.terms.items():
            df = f.derivative(orders)
            if df:
                result = result + coeff * df
        return result

    def compose(self, other: DiffOp) -> DiffOp:
        """``self o other``, normal ordered via the Leibniz rule.

        ``a d^alpha (b d^beta) = a sum_{gamma<=alpha} C(alpha, gamma) (d^gamma b) d^(alpha-gamma+beta)``.
        """
        self._check(other)
        terms: Dict[Orders, Polynomial] = {}
        for alpha, a in self.terms.items():
            splits = [range(x + 1) for x in alpha]
            for beta, b in other.terms.items():
                for gamma in product(*splits):
                    db = b.derivative(gamma)
                    if not db:
                        continue
                    weight = 1
                    for x, g in zip(alpha, gamma):
                        weight *= comb(x, g)
                    coeff = a * db
                    if weight != 1:
                        coeff = coeff.scale(weight)
                    orders = tuple(x - g + y for x, g, y in zip(alpha, gamma, beta))
                    s = terms.get(orders)
                    terms[orders] = coeff if s is None else s + coeff
        return DiffOp._raw(self.nvars, {o: c for o, c in terms.items() if c})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return self.compose(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if isinstance(other, Polynomial):
            return self.left_multiply(other)
        return NotImplemented

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"DiffOp({self.nvars}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for orders, coeff in self.items():
            ders = "".join(
                f"d_{_name(pos)}" + (f"^{o}" if o > 1 else "")
                for pos, o in enumerate(orders)
                if o
            )
            if not ders:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(ders)
            else:
                parts.append(f"({coeff})*{ders}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"coeff": str(c), "deriv": list(o)} for o, c in self.items()]

    @classmethod
    def from_json(cls, data: list, nvars: int) -> DiffOp:
        total = cls.zero(nvars)
        for item in data:
            orders = tuple(item["deriv"])
            coeff = Polynomial.parse(item["coeff"], nvars)
            total = total + cls(nvars, {orders: coeff})
        return total


def _name(pos: int) -> str:
    return var_name(pos + 1)


def lambda_op(k: int, nvars: int) -> DiffOp:
    """The momentum-like operator ``lambda_k = -i d/d(x_k)``."""
    return DiffOp.partial(nvars, k).scale(-I)
