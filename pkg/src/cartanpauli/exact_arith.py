"""Exact scalars and multivariate polynomials over the Gaussian rationals.

Phase-space variables are addressed by a 1-based index ``k`` in the interleaved
order ``p1, q1, p2, q2, ...``: odd ``k`` is a momentum, even ``k`` a coordinate.
Exponent tuples are 0-based, so variable ``k`` sits at tuple position ``k - 1``.

Example (n = 1 degree of freedom, two variables)::

    p1^2/2 + 3i*q1   ->   {(2, 0): 1/2, (0, 1): 3i}

The zero polynomial has no stored terms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import DimensionError, ParseError

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """The number ``re + i*im`` with both parts exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re + other, self.im)
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        imag = _imag_text(self.im)
        if not self.re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"({self.re}{sign}{imag})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


def var_name(k: int) -> str:
    """Name of phase-space variable ``k`` (1-based): ``p1, q1, p2, q2, ...``."""
    if k < 1:
        raise DimensionError(f"variable index must be >= 1, got {k}")
    return f"p{(k + 1) // 2}" if k % 2 else f"q{k // 2}"


def var_index(name: str, nvars: int) -> int:
    """Inverse of :func:`var_name`; bare ``p``/``q`` mean ``p1``/``q1``."""
    m = re.fullmatch(r"([pq])(\d*)", name)
    if not m:
        raise ParseError(f"unknown variable {name!r}")
    dof = int(m.group(2) or 1)
    if dof < 1:
        raise ParseError(f"unknown variable {name!r}")
    k = 2 * dof - 1 if m.group(1) == "p" else 2 * dof
    if k > nvars:
        raise DimensionError(f"variable {name} needs at least {k} variables, have {nvars}")
    return k


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables.

    Stored zero coefficients are dropped on construction, so two polynomials are
    equal exactly when their term maps are equal.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        self.nvars = nvars
        clean: Dict[Exponent, GaussianRational] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise DimensionError(f"exponent {exp} does not fit {nvars} variables")
            coeff = GaussianRational.coerce(coeff)
            if coeff:
                clean[exp] = coeff
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, GaussianRational]) -> Polynomial:
        # caller guarantees canonical terms
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, value: Scalar) -> Polynomial:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, nvars: int, k: int) -> Polynomial:
        """The polynomial consisting of variable ``k`` (1-based)."""
        _check_index(k, nvars)
        exp = [0] * nvars
        exp[k - 1] = 1
        return cls._raw(nvars, {tuple(exp): ONE})

    @classmethod
    def parse(cls, text: str, nvars: int) -> Polynomial:
        return _Parser(text, nvars).parse()

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self) -> Iterator[Tuple[Exponent, GaussianRational]]:
        """Terms in graded-lexicographic order, highest first."""
        for exp in sorted(self.terms, key=_grlex_key, reverse=True):
            yield exp, self.terms[exp]

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, k: int) -> int:
        _check_index(k, self.nvars)
        return max((e[k - 1] for e in self.terms), default=-1)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.nvars, ZERO)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Polynomial):
        if other.nvars != self.nvars:
            raise DimensionError(
                f"polynomials in {self.nvars} and {other.nvars} variables cannot be combined"
            )

    def _lift(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Polynomial.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp)
            if s is None:
                terms[exp] = c
            else:
                s = s + c
                if s:
                    terms[exp] = s
                else:
                    del terms[exp]
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, factor: Scalar) -> Polynomial:
        factor = GaussianRational.coerce(factor)
        if not factor:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms: Dict[Exponent, GaussianRational] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = terms.get(exp)
                terms[exp] = c if s is None else s + c
        return Polynomial._raw(self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, power: int) -> Polynomial:
        if not isinstance(power, int) or power < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.const(self.nvars, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def conjugate(self) -> Polynomial:
        """Conjugate every coefficient; the variables are real."""
        return Polynomial._raw(self.nvars, {e: c.conjugate() for e, c in self.terms.items()})

    def partial(self, k: int, order: int = 1) -> Polynomial:
        """Formal derivative ``order`` times with respect to variable ``k``."""
        _check_index(k, self.nvars)
        pos = k - 1
        terms = {}
        for exp, c in self.terms.items():
            e = exp[pos]
            if e < order:
                continue
            factor = 1
            for j in range(order):
                factor *= e - j
            new = exp[:pos] + (e - order,) + exp[pos + 1:]
            terms[new] = c * factor
        return Polynomial._raw(self.nvars, terms)

    def derivative(self, orders: Sequence[int]) -> Polynomial:
        """Mixed partial derivative with one order per variable."""
        result = self
        for pos, order in enumerate(orders):
            if order:
                result = result.partial(pos + 1, order)
                if not result.terms:
                    break
        return result

    def substitute(self, replacements: Sequence[Polynomial]) -> Polynomial:
        """Replace variable ``k`` by ``replacements[k - 1]`` everywhere."""
        if len(replacements) != self.nvars:
            raise DimensionError(
                f"need {self.nvars} replacements, got {len(replacements)}"
            )
        if not replacements:
            return self
        target = replacements[0].nvars
        if any(r.nvars != target for r in replacements):
            raise DimensionError("replacement polynomials disagree on the variable count")
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(pos, e):
            key = (pos, e)
            if key not in powers:
                powers[key] = replacements[pos] ** e
            return powers[key]

        result = Polynomial.zero(target)
        for exp, c in self.terms.items():
            term = Polynomial.const(target, c)
            for pos, e in enumerate(exp):
                if e:
                    term = term * power(pos, e)
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> GaussianRational:
        if len(point) != self.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, need {self.nvars}")
        xs = [GaussianRational.coerce(x) for x in point]
        total = ZERO
        for exp, c in self.terms.items():
            value = c
            for x, e in zip(xs, exp):
                for _ in range(e):
                    value = value * x
            total = total + value
        return total

    # -- comparison / text ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == Polynomial.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for exp, c in self.items():
            mono = "*".join(
                var_name(pos + 1) + (f"^{e}" if e > 1 else "")
                for pos, e in enumerate(exp)
                if e
            )
            text = _coeff_text(c, bool(mono))
            if mono:
                text = text + mono if text in ("", "-") else f"{text}*{mono}"
            negative = text.startswith("-")
            if not out:
                out.append(text)
            elif negative:
                out.append(f" - {text[1:]}")
            else:
                out.append(f" + {text}")
        return "".join(out)


def _coeff_text(c: GaussianRational, has_monomial: bool) -> str:
    if has_monomial:
        if c == 1:
            return ""
        if c == -1:
            return "-"
    return str(c)


def _check_index(k: int, nvars: int):
    if not 1 <= k <= nvars:
        raise DimensionError(f"variable index {k} out of range 1..{nvars}")


# -- parsing ------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<var>[pq]\d*)|(?P<imag>i)|(?P<op>\*\*|[-+*/^()]))"
)


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character at position {i} in {text!r}")
            kind = m.lastgroup
            value = m.group(kind)
            if value == "**":
                value = "^"
            tokens.append((kind, value))
            i = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial text")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return result

    def expr(self):
        kind, value = self.peek()
        sign = 1
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        result = self.term().scale(sign)
        while True:
            kind, value = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                t = self.term()
                result = result + t if value == "+" else result - t
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            kind, value = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.factor()
            elif kind == "op" and value == "/":
                self.take()
                result = self._divide(result, self.factor())
            elif kind in ("num", "var", "imag") or (kind == "op" and value == "("):
                result = result * self.factor()
            else:
                return result

    def factor(self):
        base = self.primary()
        kind, value = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, value = self.take()
            # "p^2/3" lexes its exponent as the number "2/3"; the "/3" is a division
            head, slash, tail = (value or "").partition("/")
            if kind != "num" or not head.isdigit():
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** int(head)
            if slash:
                base = self._divide(base, self._number(tail))
        return base

    def _divide(self, num, den):
        if not den.is_constant() or not den:
            raise ParseError(f"can only divide by a nonzero constant in {self.text!r}")
        return num.scale(ONE / den.constant_term())

    def _number(self, value):
        imaginary = value.endswith("i")
        number = Fraction(value.rstrip("i"))
        c = GaussianRational(0, number) if imaginary else GaussianRational(number)
        return Polynomial.const(self.nvars, c)

    def primary(self):
        kind, value = self.take()
        if kind == "num":
            return self._number(value)
        if kind == "imag":
            return Polynomial.const(self.nvars, I)
        if kind == "var":
            return Polynomial.var(self.nvars, var_index(value, self.nvars))
        if kind == "op" and value == "(":
            inner = self.expr()
            kind, value = self.take()
            if (kind, value) != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if kind == "op" and value == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {value!r} in {self.text!r}")


def parse_scalar(text: str) -> GaussianRational:
    """Parse an exact scalar such as ``"3/4"``, ``"-2i"`` or ``"(1/2+3i)"``."""
    poly = Polynomial.parse(text, 0)
    return poly.constant_term()


def poly_sum(polys: Iterable[Polynomial], nvars: int) -> Polynomial:
    total = Polynomial.zero(nvars)
    for p in polys:
        total = total + p
    return total
