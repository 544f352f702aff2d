"""Exact scalars over Q and GF(p), and dense exact linear algebra.

Scalars are plain Python values: :class:`fractions.Fraction` for the rationals
(always in lowest terms with positive denominator) and ``int`` residues in
``[0, p)`` for a prime field.  A :class:`FieldSpec` carries the arithmetic.

Ranks over Q use fraction-free (Bareiss) elimination on integer rows, so the
intermediate values stay bounded by minors of the input.  Over GF(p) plain
Gaussian elimination is used.  Pivots are always the first nonzero entry in
column order, which keeps every result deterministic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, NamedTuple, Sequence

from sympy import isprime

from .errors import DimensionMismatchError, FieldError


class FieldKind(enum.Enum):
    RATIONALS = "q"
    PRIME = "gf"


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals or a prime field GF(p)."""

    kind: FieldKind = FieldKind.RATIONALS
    p: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.p is not None:
                raise FieldError("the rational field takes no modulus")
        else:
            if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
                raise FieldError(f"GF(p) needs a prime modulus, got {self.p!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Read ``q`` or ``gf:P``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls.rationals()
        if t.startswith("gf:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise FieldError(f"bad field modulus in {text!r}") from None
            return cls.prime(p)
        raise FieldError(f"unknown field {text!r}; use 'q' or 'gf:P'")

    def __str__(self):
        return "q" if self.kind is FieldKind.RATIONALS else f"gf:{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.kind is FieldKind.PRIME

    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONALS else self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind is FieldKind.RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind is FieldKind.RATIONALS else 1

    def coerce(self, value):
        """Map an int, Fraction or ``"a/b"`` string into this field."""
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError:
                raise FieldError(f"not a rational literal: {value!r}") from None
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise FieldError(f"cannot coerce {value!r} into {self}")
        if self.kind is FieldKind.RATIONALS:
            return Fraction(value)
        p = self.p
        if isinstance(value, int):
            return value % p
        den = value.denominator % p
        if den == 0:
            raise FieldError(f"denominator of {value} vanishes in GF({p})")
        return value.numerator * pow(den, -1, p) % p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[int]:
        if not self.is_finite:
            raise FieldError("the rationals cannot be enumerated")
        return iter(range(self.p))

    def format(self, a) -> str:
        return str(a)


QQ = FieldSpec.rationals()


def _bareiss_pivots(a: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free row echelon of integer rows ``a`` in place; returns pivot columns."""
    nrows = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        pv = prow[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for k in range(c + 1, ncols):
                    row[k] = (pv * row[k] - f * prow[k]) // prev
            elif pv != prev:
                for k in range(c + 1, ncols):
                    row[k] = pv * row[k] // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return pivots


def _modp_pivots(a: list[list[int]], ncols: int, p: int) -> list[int]:
    """Gaussian row echelon over GF(p) in place; returns pivot columns."""
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = pow(prow[c], -1, p)
        for k in range(c, ncols):
            prow[k] = prow[k] * inv % p
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for k in range(c, ncols):
                    row[k] = (row[k] - f * prow[k]) % p
        pivots.append(c)
        r += 1
    return pivots


def _integer_rows(entries) -> list[list[int]]:
    # scaling a row by a nonzero integer changes neither rank nor pivot columns
    out = []
    for row in entries:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


class ExactMatrix:
    """Immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries: Iterable[Iterable], field: FieldSpec = QQ, cols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise DimensionMismatchError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows
        self.field = field

    @classmethod
    def _trusted(cls, rows, cols, field):
        m = cls.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m.entries = tuple(tuple(r) for r in rows)
        m.field = field
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: FieldSpec = QQ, rows: int | None = None):
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise DimensionMismatchError("row count needed for a matrix with no columns")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise DimensionMismatchError("columns of unequal length")
        return cls([[c[i] for c in columns] for i in range(rows)], field, cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ):
        return cls._trusted([[field.zero] * cols for _ in range(rows)], cols, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ):
        return cls._trusted(
            [[field.one if i == k else field.zero for k in range(n)] for i in range(n)], n, field
        )

    def __repr__(self):
        return f"ExactMatrix({[list(r) for r in self.entries]!r}, field={self.field})"

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field, self.cols, self.entries) == (other.field, other.cols, other.entries)

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column(self, k: int) -> tuple:
        return tuple(row[k] for row in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(k) for k in range(self.cols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._trusted(self.columns(), self.rows, self.field)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape or self.field != other.field:
            raise DimensionMismatchError("matrix shapes or fields differ")
        add = self.field.add
        return ExactMatrix._trusted(
            [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.cols,
            self.field,
        )

    def scale(self, c) -> "ExactMatrix":
        c = self.field.coerce(c)
        mul = self.field.mul
        return ExactMatrix._trusted([[mul(c, a) for a in r] for r in self.entries], self.cols, self.field)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows or self.field != other.field:
            raise DimensionMismatchError("cannot stack matrices side by side")
        return ExactMatrix._trusted(
            [r + s for r, s in zip(self.entries, other.entries)], self.cols + other.cols, self.field
        )

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols or self.field != other.field:
            raise DimensionMismatchError("cannot stack matrices vertically")
        return ExactMatrix._trusted(self.entries + other.entries, self.cols, self.field)

    def mul_vector(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.cols} columns")
        f = self.field
        out = []
        for row in self.entries:
            s = f.zero
            for a, b in zip(row, v):
                if a and b:
                    s = f.add(s, f.mul(a, b))
            out.append(s)
        return tuple(out)

    def pivot_columns(self) -> list[int]:
        """Pivot columns of the row echelon form: an index set of a column-space basis."""
        if self.rows == 0 or self.cols == 0:
            return []
        if self.field.is_finite:
            return _modp_pivots([list(r) for r in self.entries], self.cols, self.field.p)
        return _bareiss_pivots(_integer_rows(self.entries), self.cols)

    def rank(self) -> int:
        return len(self.pivot_columns())

    def rref(self) -> tuple[list[list], list[int]]:
        """Reduced row echelon form (nonzero rows only) and its pivot columns."""
        f = self.field
        a = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            piv = next((i for i in range(r, self.rows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = f.inv(a[r][c])
            a[r] = [f.mul(x, inv) for x in a[r]]
            prow = a[r]
            for i in range(self.rows):
                if i != r and a[i][c]:
                    fac = a[i][c]
                    a[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(a[i], prow)]
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def kernel_basis(self) -> list[tuple]:
        """Basis of the right kernel, one vector per free column."""
        f = self.field
        red, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivset:
                continue
            v = [f.zero] * self.cols
            v[free] = f.one
            for row, pc in zip(red, pivots):
                v[pc] = f.neg(row[free])
            basis.append(tuple(v))
        for v in basis:
            assert not any(self.mul_vector(v)), "kernel vector fails Mv = 0"
        return basis


def rank(m: ExactMatrix) -> int:
    return m.rank()


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    return m.kernel_basis()


class SubspaceDims(NamedTuple):
    d1: int
    d2: int
    dsum: int
    dint: int


def span_dim(vectors: Sequence[Sequence], field: FieldSpec, length: int | None = None) -> int:
    if not vectors:
        return 0
    return ExactMatrix(vectors, field, cols=length).rank()


def subspace_dims(basis1: Sequence[Sequence], basis2: Sequence[Sequence], field: FieldSpec = QQ) -> SubspaceDims:
    """Dimensions of span(B1), span(B2), their sum, and their intersection.

    The intersection dimension comes from ``d1 + d2 - dsum``.
    """
    lengths = {len(v) for v in basis1} | {len(v) for v in basis2}
    if len(lengths) > 1:
        raise DimensionMismatchError(f"vectors of different lengths {sorted(lengths)}")
    n = lengths.pop() if lengths else 0
    d1 = span_dim(basis1, field, n)
    d2 = span_dim(basis2, field, n)
    dsum = span_dim(list(basis1) + list(basis2), field, n)
    return SubspaceDims(d1, d2, dsum, d1 + d2 - dsum)
