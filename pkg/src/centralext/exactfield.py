"""Exact scalar fields (F_p and Q) and dense exact linear algebra.

Scalars are plain Python objects: ``int`` residues in ``0..p-1`` for a prime
field, ``fractions.Fraction`` for the rationals.  Arithmetic is written with
ordinary operators followed by :meth:`Field.red`, which restores the
canonical form.  Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import itertools

Vector = tuple


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """A prime field F_p (``p`` set) or the rationals (``p`` is None)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or self.p >= 2**31 or not is_prime(self.p):
                raise FieldError(f"not a prime below 2^31: {self.p!r}")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def red(self, x):
        """Canonical representative of an int/Fraction expression result."""
        if self.p is not None:
            return x % self.p
        return x

    def __call__(self, x):
        """Coerce an int (or Fraction, for Q) into the field."""
        if self.p is not None:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError(f"{x} has no image in F_{self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(x, -1, self.p)
        return 1 / x

    def elements(self) -> Iterator:
        if self.p is None:
            raise FieldError("cannot enumerate an infinite field")
        return iter(range(self.p))

    def is_canonical(self, x) -> bool:
        if self.p is not None:
            return type(x) is int and 0 <= x < self.p
        return isinstance(x, Fraction)

    # serialization -----------------------------------------------------

    def format(self, x) -> int | str:
        if self.p is not None:
            return int(x)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, raw) -> object:
        if self.p is not None:
            if isinstance(raw, bool) or not isinstance(raw, int):
                raise FieldError(f"F_{self.p} scalar must be an integer, got {raw!r}")
            if not 0 <= raw < self.p:
                raise FieldError(f"F_{self.p} scalar out of canonical range: {raw}")
            return raw
        if isinstance(raw, int) and not isinstance(raw, bool):
            return Fraction(raw)
        if isinstance(raw, str):
            num, sep, den = raw.partition("/")
            try:
                value = Fraction(int(num), int(den) if sep else 1)
            except (ValueError, ZeroDivisionError):
                raise FieldError(f"bad rational scalar {raw!r}") from None
            return value
        raise FieldError(f"bad rational scalar {raw!r}")

    def describe(self) -> dict:
        if self.p is not None:
            return {"kind": "prime", "p": self.p}
        return {"kind": "rational"}

    def __str__(self):
        return f"F_{self.p}" if self.p is not None else "Q"


GF2 = Field(2)
QQ = Field(None)


@dataclass(frozen=True)
class Matrix:
    """Dense immutable matrix; ``data`` is a tuple of row tuples."""

    field: Field
    nrows: int
    ncols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.nrows or any(len(r) != self.ncols for r in self.data):
            raise ValueError("matrix shape does not match its entries")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(data[0])
        return cls(field, len(data), ncols, data)

    @classmethod
    def _raw(cls, field: Field, rows, ncols: int) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls._raw(field, zip(*cols) if cols else [() for _ in range(nrows)], len(cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.data)) if self.nrows else tuple(() for _ in range(self.ncols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def _check_same(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldError("field mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        red = self.field.red
        return Matrix(self.field, self.nrows, self.ncols,
                      tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        red = self.field.red
        return Matrix(self.field, self.nrows, self.ncols, tuple(tuple(red(-a) for a in r) for r in self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        red = self.field.red
        return Matrix(self.field, self.nrows, self.ncols, tuple(tuple(red(c * a) for a in r) for r in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        red = self.field.red
        cols = list(zip(*other.data)) if other.nrows else [()] * other.ncols
        z = self.field.zero
        data = tuple(
            tuple(red(sum((a * b for a, b in zip(r, c) if a and b), z)) for c in cols)
            for r in self.data
        )
        return Matrix(self.field, self.nrows, other.ncols, data)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match matrix columns")
        red = self.field.red
        z = self.field.zero
        return tuple(red(sum((a * b for a, b in zip(r, v) if a and b), z)) for r in self.data)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix(self.field, self.nrows, self.ncols + other.ncols,
                      tuple(r + s for r, s in zip(self.data, other.data)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self.data + other.data)

    def flat(self) -> tuple:
        return tuple(x for r in self.data for x in r)

    def rank(self) -> int:
        return rref(self)[2]

    def to_lists(self) -> list:
        return [[self.field.format(x) for x in r] for r in self.data]

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols}, {[list(r) for r in self.data]})"


def _rref_rows(field: Field, rows: list, ncols: int) -> tuple[list, list]:
    """In-place Gauss-Jordan on a list of mutable rows; returns (rows, pivots)."""
    red = field.red
    inv = field.inv
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            s = inv(lead)
            prow = [red(s * x) for x in prow]
            rows[r] = prow
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [red(x - f * y) if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.data], m.ncols)
    return Matrix._raw(m.field, rows, m.ncols), pivots, len(pivots)


def row_basis(field: Field, vectors: Iterable[Sequence], ncols: int) -> tuple[Matrix, list[int]]:
    """RREF basis (zero rows dropped) of the span of ``vectors``."""
    rows, pivots = _rref_rows(field, [list(v) for v in vectors], ncols)
    return Matrix._raw(field, rows[: len(pivots)], ncols), pivots


def kernel_basis(m: Matrix) -> Matrix:
    """Rows form the RREF basis of the null space {v : m v = 0}."""
    field = m.field
    reduced, pivots, rank = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    z, o = field.zero, field.one
    red = field.red
    vecs = []
    for fcol in free:
        v = [z] * m.ncols
        v[fcol] = o
        for i, pc in enumerate(pivots):
            v[pc] = red(-reduced.data[i][fcol])
        vecs.append(v)
    basis, _ = row_basis(field, vecs, m.ncols)
    return basis


def solve_linear(m: Matrix, b: Sequence) -> Vector | None:
    """Some x with m x = b (free variables zero), or None if inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side length does not match matrix rows")
    field = m.field
    aug = [list(r) + [field(x) if not field.is_canonical(x) else x] for r, x in zip(m.data, b)]
    rows, pivots = _rref_rows(field, aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [field.zero] * m.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.ncols]
    return tuple(x)


def coordinates_in(basis: Matrix, pivots: Sequence[int], v: Sequence) -> Vector | None:
    """Coordinates of ``v`` in an RREF row basis, or None if v is outside the span."""
    field = basis.field
    red = field.red
    coeffs = tuple(v[p] for p in pivots)
    rest = list(v)
    for c, row in zip(coeffs, basis.data):
        if c:
            rest = [red(x - c * y) if y else x for x, y in zip(rest, row)]
    if any(x != 0 for x in rest):
        return None
    return coeffs


def all_vectors(field: Field, n: int) -> Iterator[Vector]:
    """Every vector of F_p^n in lexicographic order."""
    return itertools.product(range(field.p), repeat=n) if field.p is not None else _no_enum(field)


def all_matrices(field: Field, nrows: int, ncols: int) -> Iterator[Matrix]:
    """Every nrows x ncols matrix over F_p, lexicographic in row-major entries."""
    for flat in all_vectors(field, nrows * ncols):
        yield Matrix(field, nrows, ncols, tuple(tuple(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)))


def _no_enum(field):
    raise FieldError(f"cannot enumerate vectors over {field}")


def vec_add(field: Field, u: Sequence, v: Sequence) -> Vector:
    red = field.red
    return tuple(red(a + b) for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence, v: Sequence) -> Vector:
    red = field.red
    return tuple(red(a - b) for a, b in zip(u, v))


def vec_scale(field: Field, c, v: Sequence) -> Vector:
    red = field.red
    return tuple(red(c * a) for a in v)


def unit(field: Field, n: int, i: int) -> Vector:
    z = field.zero
    return tuple(field.one if k == i else z for k in range(n))


def zero_vec(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix; ValueError if singular."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + list(e) for r, e in zip(m.data, Matrix.identity(m.field, n).data)]
    rows, pivots = _rref_rows(m.field, aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix._raw(m.field, (r[n:] for r in rows), n)
