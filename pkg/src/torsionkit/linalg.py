"""Exact linear algebra over Q and Z.

Matrices are immutable, row-major, and hold either ``Fraction`` entries
(:class:`RationalMatrix`) or Python ints (:class:`IntegerMatrix`).
Vectors are plain tuples of ``Fraction``.  Nothing here ever touches a
float.

>>> m = RationalMatrix.from_rows([[1, 2], [3, 4]])
>>> determinant(m)
Fraction(-2, 1)
>>> smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]])).invariant_factors
(2, 4)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError, NonSquareError, NotInImageError

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_LITERAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(value) -> Fraction:
    """Parse a JSON entry: an int, or a string ``"p"`` / ``"p/q"``."""
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str) and _RATIONAL_LITERAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InvalidInputError(f"zero denominator in {value!r}") from None
    raise InvalidInputError(f"not a rational literal: {value!r}")


def format_rational(x) -> str:
    return str(Fraction(x))


class _Matrix:
    __slots__ = ("_rows", "_cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(self._coerce(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self._rows = rows
        self._cols = cols
        self._entries = entries

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    # constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None):
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ValueError("ragged columns")
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence, rows: int | None = None, cols: int | None = None):
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["_Matrix"]):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, cols)

    # accessors

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def entries(self) -> tuple:
        return self._entries

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(ij)
        return self._entries[i * self._cols + j]

    def row(self, i: int) -> tuple:
        return self._entries[i * self._cols:(i + 1) * self._cols]

    def col(self, j: int) -> tuple:
        return self._entries[j::self._cols] if self._cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self._rows)]

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self._cols)]

    def is_square(self) -> bool:
        return self._rows == self._cols

    def is_zero(self) -> bool:
        return not any(self._entries)

    # arithmetic

    def _result_class(self, other):
        if isinstance(self, IntegerMatrix) and isinstance(other, IntegerMatrix):
            return IntegerMatrix
        return RationalMatrix

    def __matmul__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        if self._cols != other._rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        out = []
        for i in range(self._rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), 0))
        return self._result_class(other)(self._rows, other._cols, out)

    def __add__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return self._result_class(other)(
            self._rows, self._cols, [a + b for a, b in zip(self._entries, other._entries)]
        )

    def __sub__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return type(self)(self._rows, self._cols, [-a for a in self._entries])

    def scale(self, c):
        cls = type(self) if isinstance(c, int) else RationalMatrix
        return cls(self._rows, self._cols, [c * a for a in self._entries])

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v`` as a tuple."""
        if len(v) != self._cols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self._cols} columns")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), self._coerce(0))
                     for i in range(self._rows))

    @property
    def T(self):
        return type(self)(self._cols, self._rows,
                          [self._entries[i * self._cols + j] for j in range(self._cols) for i in range(self._rows)])

    def kron(self, other):
        rows, cols = self._rows * other._rows, self._cols * other._cols
        out = [[0] * cols for _ in range(rows)]
        for i in range(self._rows):
            for j in range(self._cols):
                a = self[i, j]
                if not a:
                    continue
                for k in range(other._rows):
                    for l in range(other._cols):
                        out[i * other._rows + k][j * other._cols + l] = a * other[k, l]
        return self._result_class(other).from_rows(out, cols)

    def hstack(self, other):
        if self._rows != other._rows:
            raise ValueError("row counts differ")
        return self._result_class(other).from_rows(
            [list(self.row(i)) + list(other.row(i)) for i in range(self._rows)], self._cols + other._cols
        )

    # comparison

    def __eq__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self._rows, self._cols, self._entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self._rows))
        return f"{type(self).__name__}({self._rows}x{self._cols}: [{body}])"

    # serialization

    def to_json(self) -> dict:
        return {"rows": self._rows, "cols": self._cols,
                "entries": [format_rational(e) for e in self._entries]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= obj.keys():
            raise InvalidInputError("matrix must be an object with rows, cols, entries")
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
            raise InvalidInputError("rows and cols must be non-negative integers")
        if not isinstance(entries, list) or len(entries) != rows * cols:
            raise InvalidInputError(f"expected {rows * cols} entries, got "
                                    f"{len(entries) if isinstance(entries, list) else 'non-list'}")
        values = [parse_rational(e) for e in entries]
        if cls is IntegerMatrix and any(v.denominator != 1 for v in values):
            raise InvalidInputError("integer matrix has non-integral entries")
        return cls(rows, cols, values)


class RationalMatrix(_Matrix):
    """Matrix over Q with exact ``Fraction`` entries."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return parse_rational(x)
        raise TypeError(f"cannot use {type(x).__name__} as an exact rational")

    def inverse(self) -> "RationalMatrix":
        n = self.rows
        if not self.is_square():
            raise NonSquareError(f"cannot invert a {self.rows}x{self.cols} matrix")
        aug = self.hstack(RationalMatrix.identity(n))
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix.from_rows([red.row(i)[n:] for i in range(n)], n)


class IntegerMatrix(_Matrix):
    """Matrix over Z with Python int entries."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise TypeError(f"non-integral entry {x!r}")

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, self.entries)


def as_rational(m: _Matrix) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m.rows, m.cols, m.entries)


def as_integer(m: _Matrix) -> IntegerMatrix:
    """Convert to an :class:`IntegerMatrix`; raises ``TypeError`` on fractions."""
    return m if isinstance(m, IntegerMatrix) else IntegerMatrix(m.rows, m.cols, m.entries)


# ---------------------------------------------------------------------------
# Gaussian elimination over Q

def rref(m: _Matrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return RationalMatrix.from_rows(a, m.cols), pivots


def rank(m: _Matrix) -> int:
    return len(rref(m)[1])


def determinant(m: _Matrix) -> Fraction:
    """Exact determinant; the empty 0x0 matrix has determinant 1."""
    if not m.is_square():
        raise NonSquareError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    a = [[Fraction(x) for x in m.row(i)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def kernel_basis(m: _Matrix) -> list[Vector]:
    """Basis of the null space ``{v : m v = 0}``, one vector per free column."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(tuple(v))
    return basis


def image_basis(m: _Matrix) -> list[Vector]:
    """The pivot columns of ``m``: a basis of its column space."""
    _, pivots = rref(m)
    return [tuple(Fraction(x) for x in m.col(c)) for c in pivots]


def preimage(m: _Matrix, v: Sequence) -> Vector:
    """Some ``w`` with ``m w = v`` (free variables set to zero)."""
    v = [parse_rational(x) if not isinstance(x, Fraction) else x for x in v]
    if len(v) != m.rows:
        raise ValueError(f"vector of length {len(v)} for matrix with {m.rows} rows")
    aug = as_rational(m).hstack(RationalMatrix.from_columns([v], m.rows))
    red, pivots = rref(aug)
    if m.cols in pivots:
        raise NotInImageError("vector is not in the column space")
    w = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        w[p] = red[r, m.cols]
    return tuple(w)


def matrix_of_columns(vectors: Sequence[Sequence], dim: int) -> RationalMatrix:
    return RationalMatrix.from_columns(list(vectors), dim)


# ---------------------------------------------------------------------------
# Smith normal form over Z

@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries (including 1s)."""
        return tuple(d for d in self.diagonal if d)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def to_json(self) -> dict:
        return {"U": self.U.to_json(), "D": self.D.to_json(), "V": self.V.to_json(),
                "invariant_factors": list(self.invariant_factors)}


def smith_normal_form(a: _Matrix) -> SnfResult:
    """Smith normal form with transforms, by smallest-pivot elimination.

    The pivot at each step is the nonzero entry of least absolute value in
    the trailing submatrix; row and column reductions repeat until the
    pivot clears its row and column and divides every remaining entry.
    """
    a = as_integer(a)
    m, n = a.rows, a.cols
    A = a.to_rows()
    U = IntegerMatrix.identity(m).to_rows()
    V = IntegerMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = A[i][j]
                    if x and (best is None or abs(x) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        if all(A[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break

    return SnfResult(IntegerMatrix.from_rows(U, m), IntegerMatrix.from_rows(A, n),
                     IntegerMatrix.from_rows(V, n))
