"""Exact linear algebra over Q or a prime field F_p.

Scalars are ``fractions.Fraction`` over Q and ``Mod`` over F_p, so
generic code can use the ordinary arithmetic operators.  Heavy lifting
happens on sparse rows (``dict`` column -> scalar) through the
incremental ``Echelon`` class; a small dense ``Matrix`` type covers the
2x2 / 4x4 work in quadratic-algebra classification.
"""

from __future__ import annotations

import builtins
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Callable, Hashable, Iterable, Sequence

from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import InputError, MathError

__all__ = [
    "Mod", "Field", "QQ", "GF", "Matrix", "Subspace", "Echelon",
    "rref", "kernel", "intersect", "sum", "span_sum", "contains",
    "rank_of_rows", "AmbientMismatch", "binary_form_roots",
]


class AmbientMismatch(MathError):
    code = "ambient_mismatch"


class Mod:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _val(self, o):
        if isinstance(o, Mod):
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        w = self._val(o)
        return NotImplemented if w is NotImplemented else Mod(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._val(o)
        return NotImplemented if w is NotImplemented else Mod(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._val(o)
        return NotImplemented if w is NotImplemented else Mod(w - self.v, self.p)

    def __mul__(self, o):
        w = self._val(o)
        return NotImplemented if w is NotImplemented else Mod(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._val(o)
        if w is NotImplemented:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._val(o)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return Mod(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        w = self._val(o)
        if w is NotImplemented:
            return NotImplemented
        return (self.v - w) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class Field:
    """The rationals (``p is None``) or the prime field F_p."""

    def __init__(self, p: int | None = None):
        if p is not None and not isprime(p):
            raise InputError("field characteristic %r is not prime" % (p,))
        self.p = p

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, Mod):
                raise InputError("cannot coerce an F_p element into Q")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise InputError("mixing F_%d and F_%d" % (x.p, self.p))
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise MathError("denominator %d vanishes in F_%d" % (x.denominator, self.p))
            return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Mod(int(x), self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else "F_%d" % self.p

    # raw <-> element conversions used by the sparse kernels
    def raw(self, a):
        if self.p is not None:
            return a.v if isinstance(a, Mod) else int(a) % self.p
        return a if type(a) is Fraction else Fraction(a)

    def wrap(self, r):
        return Mod(r, self.p) if self.p is not None else r

    def key(self, a):
        """Fixed total order on scalars: numeric on Q, residue on F_p."""
        return self(a).v if self.p is not None else Fraction(a)

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None."""
        a = self(a)
        if self.p is None:
            if a < 0:
                return None
            n, d = a.numerator, a.denominator
            rn, rd = _isqrt(n), _isqrt(d)
            if rn * rn == n and rd * rd == d:
                return Fraction(rn, rd)
            return None
        if a.v == 0:
            return Mod(0, self.p)
        r = sqrt_mod(a.v, self.p)
        return None if r is None else Mod(min(r, self.p - r), self.p)

    def quadratic_roots(self, a, b, c):
        """Roots of a*t^2 + b*t + c with a != 0, or None if they are not in the field."""
        a, b, c = self(a), self(b), self(c)
        if self.p == 2:
            return [self(t) for t in (0, 1) if a * t * t + b * t + c == 0] or None
        disc = b * b - 4 * a * c
        r = self.sqrt(disc)
        if r is None:
            return None
        r1, r2 = (-b + r) / (2 * a), (-b - r) / (2 * a)
        return [r1] if r1 == r2 else sorted([r1, r2], key=self.key)

    def to_json(self, a):
        a = self(a)
        if self.p is not None:
            return a.v
        return a.numerator if a.denominator == 1 else "%d/%d" % (a.numerator, a.denominator)

    def describe(self) -> str:
        return "Q" if self.p is None else "F %d" % self.p


def binary_form_roots(c0, c1, c2, F: Field):
    """Projective zeros (a:b) of c0 a^2 + c1 ab + c2 b^2, first nonzero coordinate 1.

    Returns a list of one or two points (a double root is listed twice), or
    None when the roots lie outside F.  The zero form is rejected.
    """
    c0, c1, c2 = F(c0), F(c1), F(c2)
    if not (c0 or c1 or c2):
        raise MathError("the zero form has every point as a root")
    if not c0:
        # b (c1 a + c2 b): (1:0) and, when c1 != 0, (-c2 : c1)
        pts = [(F.one, F.zero), _pt(-c2, c1, F) if c1 else (F.one, F.zero)]
        return sorted(pts, key=lambda t: (F.key(t[0]), F.key(t[1])))
    roots = F.quadratic_roots(c0, c1, c2)
    if roots is None:
        return None
    if len(roots) == 1:
        roots = roots * 2
    return [_pt(r, F.one, F) for r in roots]


def _pt(a, b, F: Field):
    if a:
        return (F.one, b / a)
    return (F.zero, F.one)


def _isqrt(n: int) -> int:
    from math import isqrt
    return isqrt(n)


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------- sparse rows

class Echelon:
    """Incrementally maintained row echelon form of sparse rows.

    Columns are arbitrary hashables; ``key`` orders them (smallest key is
    the leading column).  Rows are stored with raw coefficients (ints mod p
    or Fractions) and leading coefficient 1.
    """

    def __init__(self, field: Field, key: Callable | None = None):
        self.field = field
        self.key = key
        self.pivots: dict = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _k(self, c):
        return c if self.key is None else self.key(c)

    def reduce_raw(self, row: dict) -> dict:
        """Reduce a raw row (modified in place) against the stored pivots."""
        piv, p = self.pivots, self.field.p
        if not piv:
            return row
        heap = [(self._k(c), c) for c in row if c in piv]
        if not heap:
            return row
        heapify(heap)
        while heap:
            _, c = heappop(heap)
            a = row.get(c)
            if a is None:
                continue
            for cc, b in piv[c].items():
                old = row.get(cc)
                if p is None:
                    v = (0 if old is None else old) - a * b
                else:
                    v = ((0 if old is None else old) - a * b) % p
                if v:
                    row[cc] = v
                    if old is None and cc in piv:
                        heappush(heap, (self._k(cc), cc))
                elif old is not None:
                    del row[cc]
        return row

    def add_raw(self, row: dict) -> bool:
        """Insert a raw row; return True if it increased the rank."""
        row = self.reduce_raw(row)
        if not row:
            return False
        lead = min(row, key=self._k) if self.key is not None else min(row)
        a = row[lead]
        p = self.field.p
        if p is None:
            if a != 1:
                inv = Fraction(1) / a
                row = {c: v * inv for c, v in row.items()}
        elif a != 1:
            inv = pow(a, -1, p)
            row = {c: v * inv % p for c, v in row.items()}
        self.pivots[lead] = row
        return True

    def add(self, row: dict) -> bool:
        raw = self.field.raw
        return self.add_raw({c: raw(v) for c, v in row.items() if v})

    def reduce(self, row: dict) -> dict:
        raw, wrap = self.field.raw, self.field.wrap
        out = self.reduce_raw({c: raw(v) for c, v in row.items() if v})
        return {c: wrap(v) for c, v in out.items()}

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rref_raw(self) -> list[tuple]:
        """Reduced rows sorted by leading column, as (lead, raw row) pairs."""
        order = sorted(self.pivots, key=self._k)
        done: dict = {}
        p = self.field.p
        for c in reversed(order):
            row = dict(self.pivots[c])
            for cc in [x for x in row if x != c and x in done]:
                a = row.get(cc)
                if a is None:
                    continue
                for c2, b in done[cc].items():
                    old = row.get(c2, 0)
                    v = old - a * b if p is None else (old - a * b) % p
                    if v:
                        row[c2] = v
                    else:
                        row.pop(c2, None)
            done[c] = row
        return [(c, done[c]) for c in order]

    def rref(self) -> list[dict]:
        wrap = self.field.wrap
        return [{c: wrap(v) for c, v in row.items()} for _, row in self.rref_raw()]


def rank_of_rows(rows: Iterable[dict], field: Field) -> int:
    e = Echelon(field)
    for r in rows:
        e.add(r)
    return e.rank


# ---------------------------------------------------------------- dense matrix

class Matrix:
    """Dense matrix; immutable by convention."""

    def __init__(self, rows: Sequence[Sequence], field: Field = QQ, ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise InputError("ragged matrix")
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, r: int, c: int, field: Field = QQ) -> "Matrix":
        return cls([[0] * c for _ in range(r)], field, ncols=c)

    @classmethod
    def from_sparse(cls, rows: Sequence[dict], ncols: int, field: Field) -> "Matrix":
        return cls([[r.get(j, 0) for j in range(ncols)] for r in rows], field, ncols=ncols)

    def sparse_rows(self) -> list[dict]:
        return [{j: v for j, v in enumerate(r) if v} for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix(%r)" % ([list(r) for r in self.rows],)

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                      self.field, ncols=self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise AmbientMismatch("shape mismatch %dx%d @ %dx%d"
                                  % (self.nrows, self.ncols, other.nrows, other.ncols))
        cols = other.transpose().rows
        zero = self.field.zero
        return Matrix([[builtins.sum((a * b for a, b in zip(r, c)), zero) for c in cols]
                       for r in self.rows], self.field, ncols=other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.field, ncols=self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.field, ncols=self.ncols)

    def apply(self, v: Sequence) -> list:
        zero = self.field.zero
        return [builtins.sum((a * b for a, b in zip(r, v)), zero) for r in self.rows]

    def det(self):
        """Determinant by elimination (square matrices)."""
        n = self.nrows
        a = [list(r) for r in self.rows]
        d = self.field.one
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return self.field.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            d = d * a[c][c]
            inv = Fraction(1) / a[c][c] if self.field.p is None else 1 / a[c][c]
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return d

    def inverse(self) -> "Matrix":
        n = self.nrows
        aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)]
                      for i, r in enumerate(self.rows)], self.field)
        red, rk = rref(aug)
        if rk < n or any(red.rows[i][i] != 1 for i in range(n)):
            raise MathError("matrix is singular")
        return Matrix([r[n:] for r in red.rows], self.field, ncols=n)

    def rank(self) -> int:
        return rref(self)[1]


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank (first nonzero column, first nonzero row)."""
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c] if m.field.p is None else 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return Matrix(a, m.field, ncols=nc), r


# ---------------------------------------------------------------- subspaces

class Subspace:
    """Subspace of k^ambient_dim with a sparse RREF basis."""

    def __init__(self, ambient_dim: int, basis: list[dict], field: Field):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.field = field

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int, field: Field) -> "Subspace":
        e = Echelon(field)
        for v in vectors:
            if not isinstance(v, dict):
                v = {j: x for j, x in enumerate(v) if x}
            if any(not 0 <= j < ambient_dim for j in v):
                raise AmbientMismatch("vector outside ambient space of dim %d" % ambient_dim)
            e.add(v)
        return cls(ambient_dim, e.rref(), field)

    @classmethod
    def full(cls, n: int, field: Field) -> "Subspace":
        return cls(n, [{j: field.one} for j in range(n)], field)

    @classmethod
    def zero(cls, n: int, field: Field) -> "Subspace":
        return cls(n, [], field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def dense_basis(self) -> list[list]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ambient_dim)] for r in self.basis]

    def matrix(self) -> Matrix:
        return Matrix.from_sparse(self.basis, self.ambient_dim, self.field)

    def _echelon(self) -> Echelon:
        e = Echelon(self.field)
        raw = self.field.raw
        for r in self.basis:
            lead = min(r)
            e.pivots[lead] = {c: raw(v) for c, v in r.items()}
        return e

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.field == other.field
                and self.basis == other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return all(contains(other, v) for v in self.basis)

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)


def _check(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch("ambient dimensions %d and %d differ" % (a.ambient_dim, b.ambient_dim))


def kernel(m: Matrix | Sequence[dict], ncols: int | None = None, field: Field | None = None) -> Subspace:
    """Solution space of m . v = 0.  Accepts a dense Matrix or sparse rows."""
    if isinstance(m, Matrix):
        rows, ncols, field = m.sparse_rows(), m.ncols, m.field
    else:
        rows = m
    e = Echelon(field)
    for r in rows:
        e.add(r)
    red = e.rref_raw()
    pivset = {c for c, _ in red}
    wrap = field.wrap
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: field.one}
        for c, row in red:
            a = row.get(f)
            if a:
                v[c] = -wrap(a)
        vecs.append(v)
    return Subspace.span(vecs, ncols, field)


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return Subspace.span(a.basis + b.basis, a.ambient_dim, a.field)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelon of [a|a] over [b|0]; zero-left rows span a meet b."""
    _check(a, b)
    n, field = a.ambient_dim, a.field
    e = Echelon(field)
    for v in a.basis:
        row = dict(v)
        row.update({n + c: x for c, x in v.items()})
        e.add(row)
    for v in b.basis:
        e.add(v)
    wrap = field.wrap
    vecs = [{c - n: wrap(x) for c, x in row.items()}
            for lead, row in e.pivots.items() if lead >= n]
    return Subspace.span(vecs, n, field)


def contains(a: Subspace, v) -> bool:
    if not isinstance(v, dict):
        if len(v) != a.ambient_dim:
            raise AmbientMismatch("vector length %d vs ambient %d" % (len(v), a.ambient_dim))
        v = {j: x for j, x in enumerate(v) if x}
    elif any(not 0 <= j < a.ambient_dim for j in v):
        raise AmbientMismatch("vector outside ambient space")
    return not a._echelon().reduce(v)


sum = span_sum
