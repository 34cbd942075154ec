"""Pauli matrices and Kronecker-product assembly of sparse exact matrices.

Index convention: in a Kronecker product the left-most factor is the most
significant.  For the ``2n`` two-level factors used throughout, factor ``k``
(1-based) controls bit ``2n - k`` of the row and column index.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .controls import active_mutation
from .errors import DimensionError
from .exact_arith import I, ONE, ZERO, GaussianRational

Entry = Tuple[int, int]


class SparseScalarMatrix:
    """Sparse matrix of Gaussian rationals with no stored zeros.

    Square matrices are the common case; column vectors (``cols == 1``) are
    allowed so basis states can be built with the same ``kron``.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int | None = None, entries: Dict[Entry, object] | None = None):
        self.rows = rows
        self.cols = rows if cols is None else cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionError(f"entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix")
            v = GaussianRational.coerce(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def _raw(cls, rows, cols, entries):
        obj = cls.__new__(cls)
        obj.rows, obj.cols, obj.entries = rows, cols, entries
        return obj

    @classmethod
    def identity(cls, dim: int) -> SparseScalarMatrix:
        return cls._raw(dim, dim, {(i, i): ONE for i in range(dim)})

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> SparseScalarMatrix:
        return cls._raw(rows, rows if cols is None else cols, {})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> SparseScalarMatrix:
        entries = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)}
        return cls(len(rows), len(rows[0]) if rows else 0, entries)

    @property
    def dim(self) -> int:
        if self.rows != self.cols:
            raise DimensionError("dim is only defined for square matrices")
        return self.rows

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: Entry) -> GaussianRational:
        return self.entries.get(key, ZERO)

    def items(self):
        """Nonzero entries in row-major order."""
        for key in sorted(self.entries):
            yield key, self.entries[key]

    def to_dense(self) -> List[List[GaussianRational]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    # -- algebra ------------------------------------------------------------

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, SparseScalarMatrix):
            return NotImplemented
        self._same_shape(other)
        entries = dict(self.entries)
        for key, v in other.entries.items():
            s = entries.get(key)
            s = v if s is None else s + v
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
        return SparseScalarMatrix._raw(self.rows, self.cols, entries)

    def __neg__(self):
        return SparseScalarMatrix._raw(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, SparseScalarMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> SparseScalarMatrix:
        factor = GaussianRational.coerce(factor)
        if not factor:
            return SparseScalarMatrix.zero(self.rows, self.cols)
        return SparseScalarMatrix._raw(self.rows, self.cols, {k: v * factor for k, v in self.entries.items()})

    def __matmul__(self, other):
        if not isinstance(other, SparseScalarMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: Dict[int, List[Tuple[int, GaussianRational]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Entry, GaussianRational] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                s = out.get(key)
                out[key] = a * b if s is None else s + a * b
        return SparseScalarMatrix._raw(self.rows, other.cols, {k: v for k, v in out.items() if v})

    def __mul__(self, other):
        if isinstance(other, SparseScalarMatrix):
            return self @ other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def transpose(self) -> SparseScalarMatrix:
        return SparseScalarMatrix._raw(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    @property
    def T(self) -> SparseScalarMatrix:
        return self.transpose()

    def conjugate(self) -> SparseScalarMatrix:
        return SparseScalarMatrix._raw(self.rows, self.cols, {k: v.conjugate() for k, v in self.entries.items()})

    def adjoint(self) -> SparseScalarMatrix:
        return self.transpose().conjugate()

    def is_diagonal(self) -> bool:
        return all(r == c for r, c in self.entries)

    def __eq__(self, other):
        if not isinstance(other, SparseScalarMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"SparseScalarMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def __str__(self):
        dense = self.to_dense()
        cells = [[str(v) for v in row] for row in dense]
        width = max((len(x) for row in cells for x in row), default=1)
        return "\n".join("[" + " ".join(x.rjust(width) for x in row) + "]" for row in cells)

    def to_json(self) -> dict:
        if self.rows == self.cols:
            head = {"dim": self.rows}
        else:
            head = {"rows": self.rows, "cols": self.cols}
        head["triplets"] = [[r, c, str(v.re), str(v.im)] for (r, c), v in self.items()]
        return head

    @classmethod
    def from_json(cls, data: dict) -> SparseScalarMatrix:
        rows = data.get("dim", data.get("rows"))
        cols = data.get("dim", data.get("cols"))
        entries = {(r, c): GaussianRational(Fraction(re), Fraction(im)) for r, c, re, im in data["triplets"]}
        return cls(rows, cols, entries)


Matrix2 = SparseScalarMatrix


def _m2(a, b, c, d) -> SparseScalarMatrix:
    return SparseScalarMatrix(2, 2, {(0, 0): a, (0, 1): b, (1, 0): c, (1, 1): d})


_PAULI = {
    "id": (1, 0, 0, 1),
    "x": (0, 1, 1, 0),
    "y": (0, -I, I, 0),
    "z": (1, 0, 0, -1),
    # (sigma_x + i sigma_y)/2 and (sigma_x - i sigma_y)/2
    "plus_half": (0, 1, 0, 0),
    "minus_half": (0, 0, 1, 0),
}


def pauli(kind: str) -> SparseScalarMatrix:
    """One of ``x, y, z, plus_half, minus_half, id`` as an exact 2x2 matrix."""
    try:
        return _m2(*_PAULI[kind])
    except KeyError:
        raise ValueError(f"unknown Pauli kind {kind!r}") from None


def kron(factors: Iterable[SparseScalarMatrix]) -> SparseScalarMatrix:
    """Kronecker product, left factor most significant."""
    factors = list(factors)
    if not factors:
        raise ValueError("kron needs at least one factor")
    result = factors[0]
    for f in factors[1:]:
        entries = {}
        for (r1, c1), a in result.entries.items():
            for (r2, c2), b in f.entries.items():
                entries[(r1 * f.rows + r2, c1 * f.cols + c2)] = a * b
        result = SparseScalarMatrix._raw(result.rows * f.rows, result.cols * f.cols, entries)
    return result


def grading_matrix() -> SparseScalarMatrix:
    """The matrix placed in front of the active factor; sigma_z unless mutated."""
    mutation = active_mutation()
    if mutation == "sigma_x":
        return pauli("x")
    if mutation == "no_string":
        return pauli("id")
    return pauli("z")


def factor_string(k: int, m: SparseScalarMatrix, n: int) -> SparseScalarMatrix:
    """``grading^(k-1) (x) m (x) 1^(2n-k)`` on ``2n`` two-level factors."""
    if n < 1:
        raise DimensionError("need at least one degree of freedom")
    if not 1 <= k <= 2 * n:
        raise DimensionError(f"factor index {k} out of range 1..{2 * n}")
    if m.shape != (2, 2):
        raise DimensionError("factor_string needs a 2x2 matrix")
    return _factor_string(k, _freeze(m), n, active_mutation())


def _freeze(m: SparseScalarMatrix):
    return tuple(sorted(m.entries.items()))


@lru_cache(maxsize=None)
def _factor_string(k, frozen, n, mutation):
    m = SparseScalarMatrix._raw(2, 2, dict(frozen))
    grading = grading_matrix()
    ident = pauli("id")
    return kron([grading] * (k - 1) + [m] + [ident] * (2 * n - k))
