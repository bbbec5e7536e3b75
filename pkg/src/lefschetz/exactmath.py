"""Exact scalar arithmetic over QQ and GF(p), plus dense exact linear algebra.

Scalars are plain Python objects: ``fractions.Fraction`` in characteristic 0
and canonical residues ``int`` in ``[0, p)`` over GF(p).  A ``FieldSpec``
carries the characteristic and supplies all arithmetic, so matrices and
polynomials stay lightweight.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[Fraction, int]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: QQ for characteristic 0, GF(p) for a prime p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or prime, got {p}")

    # -- element construction ------------------------------------------------

    def coerce(self, value) -> Scalar:
        p = self.characteristic
        if p == 0:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, str):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            return self.div(value.numerator % p, value.denominator % p)
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into GF({p})")

    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a: Scalar) -> Scalar:
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a: Scalar) -> Scalar:
        p = self.characteristic
        if p == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero in QQ")
            return Fraction(1) / a
        if a % p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({p})")
        return pow(a, p - 2, p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0 if self.characteristic == 0 else a % self.characteristic == 0

    def from_int(self, n: int) -> Scalar:
        return self.coerce(n)

    def factorial_invertible(self, n: int) -> bool:
        """True when n! is a unit: characteristic 0 or p > n."""
        p = self.characteristic
        return p == 0 or p > n

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"Fp({self.characteristic})"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over a FieldSpec; shape survives zero rows."""

    field: FieldSpec
    ncols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self) -> None:
        if any(len(r) != self.ncols for r in self.entries):
            raise ValueError("ragged rows")

    @staticmethod
    def from_rows(field: FieldSpec, rows: Iterable[Iterable], ncols: Optional[int] = None) -> "Matrix":
        ent = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if ncols is None:
            if not ent:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(ent[0])
        return Matrix(field, ncols, ent)

    @staticmethod
    def zero(field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return Matrix(field, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(field, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @staticmethod
    def from_cols(field: FieldSpec, cols: Sequence[Sequence], nrows: Optional[int] = None) -> "Matrix":
        if not cols:
            if nrows is None:
                raise ValueError("nrows required for a matrix with no columns")
            return Matrix(field, 0, tuple(() for _ in range(nrows)))
        nrows = len(cols[0])
        return Matrix.from_rows(
            field, [[cols[j][i] for j in range(len(cols))] for i in range(nrows)], ncols=len(cols)
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self.ncols

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.rows, tuple(zip(*self.entries)) if self.entries else tuple(() for _ in range(self.ncols)))

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        F = self.field
        ot = other.transpose().entries
        out = []
        for r in self.entries:
            out.append(tuple(_dot(F, r, c) for c in ot))
        return Matrix(F, other.cols, tuple(out))

    def mul_vec(self, v: Sequence[Scalar]) -> tuple:
        if self.cols != len(v):
            raise ValueError("dimension mismatch in matrix-vector product")
        F = self.field
        return tuple(_dot(F, r, v) for r in self.entries)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.field, self.ncols, self.entries + other.entries)

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for r in self.entries for x in r)

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)


def _dot(field: FieldSpec, a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    acc = field.zero()
    for x, y in zip(a, b):
        if not field.is_zero(x) and not field.is_zero(y):
            acc = field.add(acc, field.mul(x, y))
    return acc


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    F = m.field
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if not F.is_zero(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix(F, ncols, tuple(tuple(row) for row in rows)), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right kernel, one vector per free column.

    Each vector has a 1 in its own free column and 0 in every other free
    column, so coordinates of any kernel element can be read off the free
    positions directly.
    """
    F = m.field
    red, pivots = rref(m)
    ncols = m.cols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [F.zero()] * ncols
        v[fcol] = F.one()
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(red.entries[r][fcol])
        basis.append(tuple(v))
    return basis


def det(m: Matrix) -> Scalar:
    """Determinant: fraction-free Bareiss over QQ, Gauss-Jordan over GF(p)."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    F = m.field
    if n == 0:
        return F.one()
    if F.characteristic != 0:
        return _det_gauss(m)
    a = [list(r) for r in m.entries]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pr is None:
                return Fraction(0)
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_gauss(m: Matrix) -> Scalar:
    F = m.field
    n = m.rows
    a = [list(r) for r in m.entries]
    acc = F.one()
    for k in range(n):
        pr = next((i for i in range(k, n) if not F.is_zero(a[i][k])), None)
        if pr is None:
            return F.zero()
        if pr != k:
            a[k], a[pr] = a[pr], a[k]
            acc = F.neg(acc)
        acc = F.mul(acc, a[k][k])
        inv = F.inv(a[k][k])
        for i in range(k + 1, n):
            if not F.is_zero(a[i][k]):
                f = F.mul(a[i][k], inv)
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[k])]
    return acc


def solve(m: Matrix, b: Sequence[Scalar]) -> Optional[tuple]:
    """One solution of m @ x = b, or None when the system is inconsistent.

    Free coordinates are set to zero, so the returned solution is the
    deterministic rref particular solution.
    """
    if m.rows != len(b):
        raise ValueError("dimension mismatch in solve")
    F = m.field
    aug = Matrix(F, m.ncols + 1, tuple(r + (F.coerce(x),) for r, x in zip(m.entries, b)))
    red, pivots = rref(aug)
    ncols = m.cols
    if ncols in pivots:
        return None
    x = [F.zero()] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red.entries[r][ncols]
    return tuple(x)


def invert(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    F = m.field
    n = m.rows
    ident = Matrix.identity(F, n)
    aug = Matrix(F, 2 * n, tuple(r + i for r, i in zip(m.entries, ident.entries)))
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(F, n, tuple(r[n:] for r in red.entries))


# ---------------------------------------------------------------------------
# Sparse incremental row spaces
# ---------------------------------------------------------------------------


class RowSpace:
    """Incrementally reduced row space of sparse vectors.

    Rows are dicts {column index: scalar}.  The space is kept in reduced row
    echelon form: each stored row has leading coefficient 1 at its pivot
    column (the smallest occupied column) and every other stored row is zero
    at that column.  Column 0 is the grevlex-largest monomial, so pivots are
    leading monomials and the non-pivot columns are the standard monomials.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self._rows: dict[int, dict[int, Scalar]] = {}  # pivot col -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, row: dict[int, Scalar]) -> dict[int, Scalar]:
        """Normal form of a sparse row against the stored rows."""
        F = self.field
        out = {c: v for c, v in row.items() if not F.is_zero(v)}
        # Eliminating at column c only introduces columns > c, so a heap
        # processes every reducible column exactly once.
        heap = sorted(c for c in out if c in self._rows)
        seen = set(heap)
        while heap:
            c = heapq.heappop(heap)
            if c not in out:
                continue
            piv = self._rows[c]
            f = out[c]
            for pc, pv in piv.items():
                nv = F.sub(out.get(pc, F.zero()), F.mul(f, pv))
                if F.is_zero(nv):
                    out.pop(pc, None)
                else:
                    out[pc] = nv
                    if pc not in seen and pc in self._rows:
                        seen.add(pc)
                        heapq.heappush(heap, pc)
        return out

    def add(self, row: dict[int, Scalar]) -> bool:
        """Insert a row; returns True when it enlarged the space."""
        F = self.field
        rem = self.reduce(row)
        if not rem:
            return False
        pc = min(rem)
        inv = F.inv(rem[pc])
        norm = {c: F.mul(inv, v) for c, v in rem.items()}
        for other in self._rows.values():
            if pc in other:
                f = other[pc]
                for c, v in norm.items():
                    nv = F.sub(other.get(c, F.zero()), F.mul(f, v))
                    if F.is_zero(nv):
                        other.pop(c, None)
                    else:
                        other[c] = nv
        self._rows[pc] = norm
        return True

    def contains(self, row: dict[int, Scalar]) -> bool:
        return not self.reduce(row)

    def rref_rows(self) -> list[dict[int, Scalar]]:
        return [dict(self._rows[c]) for c in sorted(self._rows)]

    def dense_matrix(self) -> Matrix:
        F = self.field
        rows = []
        for r in self.rref_rows():
            rows.append([r.get(c, F.zero()) for c in range(self.ncols)])
        return Matrix.from_rows(F, rows, ncols=self.ncols)

    def copy(self) -> "RowSpace":
        rs = RowSpace(self.field, self.ncols)
        rs._rows = {c: dict(r) for c, r in self._rows.items()}
        return rs
