"""Dense exact matrices.

Entries are any exact ring elements supporting ``+ - *`` and mixing with
ints: :class:`~kgsystems.scalar.GaussianRational` normally, or
:class:`~kgsystems.scalar.UniPoly` when a formal variable is carried along.
Plain ints, Fractions and GAUSS strings are coerced on construction.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Optional, Sequence

from .scalar import ONE, ZERO, GaussianRational, UniPoly, gauss


class SingularMatrixError(ZeroDivisionError):
    pass


def _entry(x):
    if isinstance(x, (str, int, Fraction, float, complex)):
        return gauss(x)
    return x


def _scaled(vec):
    """Clear denominators: ``(L, [(re*L, im*L), ...])`` with integer parts."""
    L = 1
    for z in vec:
        L = lcm(L, z._re.denominator, z._im.denominator)
    return L, [
        (z._re.numerator * (L // z._re.denominator), z._im.numerator * (L // z._im.denominator))
        for z in vec
    ]


def _gauss_matmul(arows, brows, ncols):
    """Product of Q(i) matrices with Gaussian-integer inner products; each
    output entry is normalised once instead of after every addition."""
    cols = [_scaled([r[j] for r in brows]) for j in range(ncols)]
    raw = GaussianRational._raw
    out = []
    for row in arows:
        La, a = _scaled(row)
        nz = [(k, x, y) for k, (x, y) in enumerate(a) if x or y]
        acc = []
        for Lb, b in cols:
            re = im = 0
            for k, x, y in nz:
                u, v = b[k]
                if u or v:
                    re += x * u - y * v
                    im += x * v + y * u
            den = La * Lb
            acc.append(raw(Fraction(re, den), Fraction(im, den)))
        out.append(tuple(acc))
    return tuple(out)


class ExactMatrix:
    """Immutable dense matrix with exact equality.

    ``table`` optionally records the :class:`~kgsystems.multiindex.IndexTable`
    labelling rows and columns of an induced matrix.  It is metadata only and
    plays no part in equality.
    """

    __slots__ = ("_rows", "nrows", "ncols", "table")

    def __init__(self, rows: Iterable[Iterable], *, table=None):
        data = tuple(tuple(_entry(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self.table = table

    @classmethod
    def _wrap(cls, rows, ncols: int, table=None) -> ExactMatrix:
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m.table = table
        return m

    # constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: Optional[int] = None) -> ExactMatrix:
        ncols = nrows if ncols is None else ncols
        return cls._wrap(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values: Sequence, *, table=None) -> ExactMatrix:
        vals = [_entry(v) for v in values]
        n = len(vals)
        rows = tuple(
            tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)
        )
        return cls._wrap(rows, n, table)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def diagonal(self) -> tuple:
        return tuple(self._rows[i][i] for i in range(min(self.shape)))

    def is_diagonal(self) -> bool:
        return all(
            not x for i, r in enumerate(self._rows) for j, x in enumerate(r) if i != j
        )

    def trace(self):
        acc = ZERO
        for x in self.diagonal():
            acc = acc + x
        return acc

    def with_table(self, table) -> ExactMatrix:
        return ExactMatrix._wrap(self._rows, self.ncols, table)

    def with_entry(self, i: int, j: int, value) -> ExactMatrix:
        rows = list(self._rows)
        r = list(rows[i])
        r[j] = _entry(value)
        rows[i] = tuple(r)
        return ExactMatrix._wrap(tuple(rows), self.ncols, self.table)

    def map(self, f: Callable) -> ExactMatrix:
        return ExactMatrix._wrap(
            tuple(tuple(f(x) for x in r) for r in self._rows), self.ncols, self.table
        )

    # structure ----------------------------------------------------------

    def transpose(self) -> ExactMatrix:
        return ExactMatrix._wrap(tuple(zip(*self._rows)) if self._rows else (), self.nrows, self.table)

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def conjugate(self) -> ExactMatrix:
        return self.map(lambda x: x.conjugate())

    def adjoint(self) -> ExactMatrix:
        """Hermitian transpose."""
        return self.transpose().conjugate()

    @property
    def H(self) -> ExactMatrix:
        return self.adjoint()

    # arithmetic ---------------------------------------------------------

    def _check_same_shape(self, other: ExactMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._wrap(
            tuple(
                tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)
            ),
            self.ncols,
            self.table,
        )

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._wrap(
            tuple(
                tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)
            ),
            self.ncols,
            self.table,
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        c = _entry(c)
        return self.map(lambda x: x * c)

    def __rmul__(self, c):
        c = _entry(c)
        return self.map(lambda x: c * x)

    def __truediv__(self, c):
        c = _entry(c)
        return self.map(lambda x: x / c)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        brows = other._rows
        ncols = other.ncols
        if all(type(z) is GaussianRational for r in self._rows for z in r) and all(
            type(z) is GaussianRational for r in brows for z in r
        ):
            return ExactMatrix._wrap(_gauss_matmul(self._rows, brows, ncols), ncols)
        out = []
        for row in self._rows:
            acc = [ZERO] * ncols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(brows[k]):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return ExactMatrix._wrap(tuple(out), ncols)

    def __pow__(self, n: int):
        if not self.is_square() or n < 0:
            raise ValueError("matrix power needs a square matrix and n >= 0")
        result = ExactMatrix.identity(self.nrows)
        for _ in range(n):
            result = result @ self
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def first_difference(self, other: ExactMatrix):
        """First ``(i, j, self[i,j], other[i,j])`` where the two differ, else None."""
        self._check_same_shape(other)
        for i, (r, s) in enumerate(zip(self._rows, other._rows)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return i, j, a, b
        return None

    def inverse(self) -> ExactMatrix:
        """Gauss-Jordan inverse over Q(i)."""
        if not self.is_square():
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        work = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self._rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = ONE / work[col][col]
            work[col] = [x * inv for x in work[col]]
            prow = work[col]
            for r in range(n):
                f = work[r][col]
                if r != col and f:
                    work[r] = [x - f * y for x, y in zip(work[r], prow)]
        return ExactMatrix._wrap(tuple(tuple(r[n:]) for r in work), n)

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self._rows]})"

    def __str__(self):
        cells = [[str(x) for x in r] for r in self._rows]
        if not cells:
            return "[]"
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def commutator(X: ExactMatrix, Y: ExactMatrix) -> ExactMatrix:
    return X @ Y - Y @ X


def coefficient_matrix(M: ExactMatrix, k: int) -> ExactMatrix:
    """Coefficient of ``v**k`` in a matrix whose entries are polynomials in v.

    Entries that are plain scalars count as constants.
    """

    def coeff(x):
        if isinstance(x, UniPoly):
            return x.coeff(k)
        return x if k == 0 else ZERO

    return ExactMatrix._wrap(
        tuple(tuple(coeff(x) for x in r) for r in M.rows), M.ncols, M.table
    )


def as_gauss(M: ExactMatrix) -> ExactMatrix:
    """Check that every entry is a Gaussian rational (not a polynomial)."""
    for r in M.rows:
        for x in r:
            if not isinstance(x, GaussianRational):
                raise TypeError(f"expected Gaussian-rational entries, found {x!r}")
    return M
