"""Exact field arithmetic over the rationals and prime fields, plus sparse
row reduction.

Internally the rest of the package works with *raw* field values: an
``int`` or :class:`fractions.Fraction` for the rationals (integral values
are coerced to ``int``, which is much faster) and a plain ``int`` in
``[0, p)`` for F_p.  :class:`FieldSpec` knows how to combine raw values.
:class:`Scalar` wraps a raw value together with its field for callers that
want type-checked arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Sequence


class FieldError(ValueError):
    """Raised on invalid field specifications or mixed-field arithmetic."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: the rationals (``p is None``) or F_p."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise FieldError("field characteristic must be prime, got %r" % (self.p,))

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"Q"`` or ``"Fp:<p>"``."""
        text = text.strip()
        if text == "Q":
            return cls(None)
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise FieldError("bad prime in field %r" % text) from None
            return cls(p)
        raise FieldError("unknown field %r (expected 'Q' or 'Fp:<p>')" % text)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "Q" if self.p is None else "Fp:%d" % self.p

    # raw-value arithmetic

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def coerce(self, value):
        """Map an int, Fraction, numeric string or Scalar into a raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError("scalar over %s used in field %s" % (value.field, self))
            return value.value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool):
            value = int(value)
        if self.p is None:
            if isinstance(value, int):
                return value
            if isinstance(value, Fraction):
                return value.numerator if value.denominator == 1 else value
            raise FieldError("cannot coerce %r into Q" % (value,))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError("denominator of %s vanishes in %s" % (value, self))
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        if isinstance(value, int):
            return value % self.p
        raise FieldError("cannot coerce %r into %s" % (value, self))

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %s" % self)
        if self.p is not None:
            return pow(a, -1, self.p)
        r = 1 / Fraction(a)
        return r.numerator if r.denominator == 1 else r

    def fmt(self, a) -> str:
        return str(a)


Q = FieldSpec()


@dataclass(frozen=True)
class Scalar:
    """An element of a field, stored canonically."""

    field: FieldSpec
    value: object = dc_field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return Scalar(self.field, other)
        if other.field != self.field:
            raise FieldError("mixed fields: %s and %s" % (self.field, other.field))
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return "Scalar(%s, %s)" % (self.field, self.value)


# sparse linear algebra

SparseRow = Dict[Hashable, object]


def _coerce_rows(matrix, field: FieldSpec) -> List[SparseRow]:
    rows = []
    for row in matrix:
        if isinstance(row, dict):
            items = row.items()
        else:
            items = enumerate(row)
        sparse = {}
        for col, v in items:
            v = field.coerce(v)
            if v != 0:
                sparse[col] = v
        rows.append(sparse)
    return rows


@dataclass
class RowReduction:
    """Reduced row-echelon form of a matrix over an exact field.

    ``rows`` are the nonzero reduced rows (sparse, pivot entry 1) in order
    of increasing pivot column; ``pivots`` lists those pivot columns.
    """

    field: FieldSpec
    ncols: int
    rank: int
    rows: List[SparseRow]
    pivots: List[int]

    def dense_rows(self) -> List[List[object]]:
        zero = self.field.zero
        return [[r.get(c, zero) for c in range(self.ncols)] for r in self.rows]

    def kernel_basis(self) -> List[SparseRow]:
        """Basis of the right null space, one sparse vector per free column."""
        pivset = set(self.pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            vec = {free: self.field.one}
            for piv, row in zip(self.pivots, self.rows):
                c = row.get(free)
                if c:
                    vec[piv] = self.field.neg(c)
            basis.append(vec)
        return basis


def row_reduce(matrix: Sequence, field: FieldSpec = Q, ncols: Optional[int] = None) -> RowReduction:
    """Gauss-Jordan elimination over ``field``.

    ``matrix`` is a sequence of rows, each either a dense list or a sparse
    ``{column: value}`` dict.  Entries may be ints, Fractions or Scalars of
    the same field; a Scalar from another field raises :class:`FieldError`.
    """
    rows = _coerce_rows(matrix, field)
    if ncols is None:
        ncols = 0
        for row, orig in zip(rows, matrix):
            if isinstance(orig, dict):
                ncols = max([ncols] + [c + 1 for c in orig])
            else:
                ncols = max(ncols, len(orig))
    for row in rows:
        for c in row:
            if not 0 <= c < ncols:
                raise IndexError("column %r out of range for %d columns" % (c, ncols))

    reduced: List[SparseRow] = []
    pivots: List[int] = []
    for row in rows:
        row = dict(row)
        # clear existing pivots from the incoming row
        for piv, prow in zip(pivots, reduced):
            c = row.get(piv)
            if c:
                _axpy(row, field.neg(c), prow, field)
        if not row:
            continue
        piv = min(row)
        scale = field.inv(row[piv])
        row = {k: field.mul(v, scale) for k, v in row.items()}
        # back-substitute into earlier rows
        for prow in reduced:
            c = prow.get(piv)
            if c:
                _axpy(prow, field.neg(c), row, field)
        reduced.append(row)
        pivots.append(piv)

    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    reduced = [reduced[i] for i in order]
    pivots = [pivots[i] for i in order]
    return RowReduction(field, ncols, len(pivots), reduced, pivots)


def _axpy(target: SparseRow, a, source: SparseRow, field: FieldSpec) -> None:
    """target += a * source, in place, dropping zeros."""
    for k, v in source.items():
        nv = field.add(target.get(k, field.zero), field.mul(a, v))
        if nv == 0:
            target.pop(k, None)
        else:
            target[k] = nv


class EchelonSpace:
    """An incrementally grown subspace kept in semi-echelon form.

    Vectors are sparse dicts keyed by any totally ordered hashable keys.
    Each stored row has its leading (minimal) key as pivot.  Over F_p the
    pivot entry is 1; over Q rows are kept as primitive integer vectors
    (fraction-free elimination), so :meth:`reduce` returns the residual only
    up to a nonzero rational factor.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self._rows: Dict[Hashable, SparseRow] = {}

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: SparseRow) -> SparseRow:
        if self.field.p is None:
            return self._reduce_int(_integral(vec))
        f = self.field
        vec = {k: f.coerce(v) for k, v in vec.items() if v}
        rows = self._rows
        while True:
            hits = [k for k in vec if k in rows]
            if not hits:
                return vec
            # eliminating the smallest pivot only introduces larger keys
            piv = min(hits)
            _axpy(vec, f.neg(vec[piv]), rows[piv], f)

    def _reduce_int(self, vec: Dict[Hashable, int]) -> Dict[Hashable, int]:
        rows = self._rows
        while True:
            hits = [k for k in vec if k in rows]
            if not hits:
                return vec
            piv = min(hits)
            row = rows[piv]
            a, b = row[piv], vec[piv]
            g = gcd(a, b)
            a, b = a // g, b // g
            # vec <- a*vec - b*row kills the pivot entry
            out = {k: a * v for k, v in vec.items()}
            for k, v in row.items():
                nv = out.get(k, 0) - b * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            vec = _primitive(out)

    def insert(self, vec: SparseRow) -> bool:
        """Add ``vec`` to the span; return False if it was already in it."""
        r = self.reduce(vec)
        if not r:
            return False
        piv = min(r)
        if self.field.p is None:
            if r[piv] < 0:
                r = {k: -v for k, v in r.items()}
            self._rows[piv] = r
        else:
            scale = self.field.inv(r[piv])
            self._rows[piv] = {k: self.field.mul(v, scale) for k, v in r.items()}
        return True

    def contains(self, vec: SparseRow) -> bool:
        return not self.reduce(vec)


def _integral(vec: SparseRow) -> Dict[Hashable, int]:
    """A primitive integer multiple of a rational vector."""
    if all(type(v) is int for v in vec.values()):
        return _primitive({k: v for k, v in vec.items() if v})
    den = 1
    for v in vec.values():
        d = Fraction(v).denominator
        den = den * d // gcd(den, d)
    out = {}
    for k, v in vec.items():
        v = Fraction(v) * den
        if v:
            out[k] = v.numerator
    return _primitive(out)


def _primitive(vec: Dict[Hashable, int]) -> Dict[Hashable, int]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g == 0:
        return vec
    return {k: v // g for k, v in vec.items()}


def rank(matrix: Sequence, field: FieldSpec = Q, ncols: Optional[int] = None) -> int:
    return row_reduce(matrix, field, ncols).rank


def as_scalars(values: Iterable, field: FieldSpec) -> List[Scalar]:
    return [Scalar(field, v) for v in values]
