"""Isomorphism classes of quadratic algebras k<x,y>/(H).

A relation sum H[i][j] g_i g_j is stored as the 2x2 matrix H.  The
linear substitution g = S x' turns H into S^T H S; all normalisations
below are compositions of such substitutions, and the reported witness
is W = S^{-1}, i.e. the canonical generators written in the input ones:
(x, y)^T = W (g_1, g_2)^T.
"""

from __future__ import annotations

from dataclasses import dataclass

from .duality import QuadraticPresentation
from .errors import MathError
from .linalg import Field, Matrix, Subspace

__all__ = ["QuadraticClass", "classify_quadratic", "is_isomorphic", "canonical_relations",
           "canonical_presentation", "NeedsFieldExtension", "TAGS"]

TAGS = ("Free", "Abar1", "Abar2", "Abar3", "A4", "A5", "A6", "A7", "A8", "A9",
        "A1", "A2", "A3", "A0")
PARAMETRIC = {"Abar2", "A7", "A9", "A2"}


class NeedsFieldExtension(MathError):
    code = "needs_field_extension"

    def __init__(self, msg: str, minpoly=None):
        self.minpoly = minpoly
        super().__init__(msg)


@dataclass(frozen=True)
class QuadraticClass:
    tag: str
    q: object
    witness: Matrix

    @property
    def name(self) -> str:
        return "%s(%s)" % (self.tag, self.q) if self.tag in PARAMETRIC else self.tag

    def key(self):
        return (self.tag, None if self.q is None else self.q)

    def __repr__(self):
        return "QuadraticClass(%s)" % self.name


def canonical_relations(tag: str, q, field: Field) -> list:
    """The listed relations as 2x2 matrices in (x, y)."""
    F = field
    z, o = F.zero, F.one

    def m(a, b, c, d):
        return [[F(a), F(b)], [F(c), F(d)]]

    x2, xy, yx, y2 = m(1, 0, 0, 0), m(0, 1, 0, 0), m(0, 0, 1, 0), m(0, 0, 0, 1)
    q = F(q) if q is not None else None
    table = {
        "Free": [],
        "Abar1": [x2],
        "Abar2": lambda: [m(0, 1, q, 0)],
        "Abar3": [m(1, 1, -1, 0)],
        "A4": [xy, yx],
        "A5": [x2, y2],
        "A6": [x2, yx],
        "A7": lambda: [x2, m(0, 1, -q, 0)],
        "A8": [xy, m(1, 0, 0, -1)],
        "A9": lambda: [xy, m(1, 0, -1, -q)],
        "A1": [x2, xy, yx],
        "A2": lambda: [x2, y2, m(0, 1, -q, 0)],
        "A3": [x2, m(0, 1, 1, 0), m(0, 1, 0, 1)],
        "A0": [x2, xy, yx, y2],
    }
    v = table[tag]
    del z, o
    return v() if callable(v) else v


def _space(mats, field) -> Subspace:
    return Subspace.span([[M[0][0], M[0][1], M[1][0], M[1][1]] for M in mats], 4, field)


def canonical_presentation(tag: str, q, field: Field) -> QuadraticPresentation:
    return QuadraticPresentation(_space(canonical_relations(tag, q, field), field))


# ---------------------------------------------------------------- 2x2 helpers

def _mm(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def _tr(A):
    return [[A[0][0], A[1][0]], [A[0][1], A[1][1]]]


def _congr(H, S):
    return _mm(_mm(_tr(S), H), S)


def _inv(S):
    det = S[0][0] * S[1][1] - S[0][1] * S[1][0]
    if not det:
        raise MathError("singular substitution")
    return [[S[1][1] / det, -S[0][1] / det], [-S[1][0] / det, S[0][0] / det]]


def _from_new_gens(F, rows):
    """Substitution S for new generators given as rows (coefficients in the old ones)."""
    return _inv([[F(rows[0][0]), F(rows[0][1])], [F(rows[1][0]), F(rows[1][1])]])


def _vec(M):
    return [M[0][0], M[0][1], M[1][0], M[1][1]]


def _mat(v):
    return [[v[0], v[1]], [v[2], v[3]]]


class _Work:
    """Current relation basis together with the accumulated substitution."""

    def __init__(self, mats, F):
        self.F = F
        self.mats = [list(map(list, M)) for M in mats]
        self.S = [[F.one, F.zero], [F.zero, F.one]]

    def sub(self, S):
        self.mats = [_congr(M, S) for M in self.mats]
        self.S = _mm(self.S, S)

    def new_gens(self, rows):
        self.sub(_from_new_gens(self.F, rows))

    def swap(self):
        F = self.F
        self.sub([[F.zero, F.one], [F.one, F.zero]])

    def scale(self, a, b):
        F = self.F
        self.sub([[F(a), F.zero], [F.zero, F(b)]])


SWAP = ((0, 1), (1, 0))


# ---------------------------------------------------------------- dim 1

def _classify_line(h, F: Field):
    """Normalise one relation; returns (tag, q, S) with S^T h S proportional to canonical."""
    w = _Work([h], F)
    a, b, c, d = _vec(w.mats[0])
    if d and not a:
        w.swap()
    a, b, c, d = _vec(w.mats[0])
    if d:
        roots = F.quadratic_roots(a, b + c, d)
        if roots is None:
            raise NeedsFieldExtension("root of %s*t^2 + %s*t + %s needed" % (a, b + c, d),
                                      [a, b + c, d])
        t = roots[0]
        w.sub([[F.one, t], [F.zero, F.one]])  # x -> x + t y
    a, b, c, d = _vec(w.mats[0])
    assert not d
    if b + c:
        u = -a / (b + c)
        w.sub([[F.one, F.zero], [u, F.one]])  # y -> y + u x
        a, b, c, d = _vec(w.mats[0])
        if b:
            q = c / b
            tag = "Abar2"
        else:
            w.swap()
            q = F.zero
            tag = "Abar2"
    else:
        if not b:
            tag, q = "Abar1", None
        elif not a:
            tag, q = "Abar2", F(-1)
        else:
            w.scale(1, a / b)
            tag, q = "Abar3", None
    if tag == "Abar2" and q and F.key(1 / q) < F.key(q):
        w.swap()
        q = 1 / q
    return tag, q, w.S


# ---------------------------------------------------------------- dim 2

def _decomposable(w: _Work, F: Field):
    """Coefficients (t1, t2) such that t1 r1 + t2 r2 has rank <= 1."""
    M1, M2 = w.mats

    def det_at(t1, t2):
        M = [[t1 * M1[i][j] + t2 * M2[i][j] for j in range(2)] for i in range(2)]
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]

    # det(t1 M1 + t2 M2) = al t1^2 + be t1 t2 + ga t2^2
    al = det_at(F.one, F.zero)
    ga = det_at(F.zero, F.one)
    be = det_at(F.one, F.one) - al - ga
    if not al and not be and not ga:
        return F.one, F.zero
    if not al:
        return F.one, F.zero
    roots = F.quadratic_roots(al, be, ga)
    if roots is None:
        raise NeedsFieldExtension("decomposable relation needs a root of %s*u^2 + %s*u + %s"
                                  % (al, be, ga), [al, be, ga])
    return roots[0], F.one


def _classify_plane(mats, F: Field):
    w = _Work(mats, F)
    t1, t2 = _decomposable(w, F)
    M1, M2 = w.mats
    r = [[t1 * M1[i][j] + t2 * M2[i][j] for j in range(2)] for i in range(2)]
    other = M2 if t1 else M1
    # r = u v^T
    i0 = 0 if any(r[0]) else 1
    v = r[i0]
    col = next(j for j in range(2) if v[j])
    u = [r[0][col], r[1][col]]
    uv_dep = not (u[0] * v[1] - u[1] * v[0])
    if uv_dep:
        e = [F.zero, F.one] if u[0] else [F.one, F.zero]
        w.mats = [r, other]
        w.new_gens([u, e])
        r1_kind = "x2"
    else:
        w.mats = [r, other]
        w.new_gens([u, v])
        r1_kind = "xy"
    return _finish_plane(w, F, r1_kind)


def _reduce_second(w, F, pos):
    """Make r1 the unit matrix at pos and clear that entry from r2."""
    r1, r2 = w.mats
    c1 = r1[pos[0]][pos[1]]
    r1 = [[x / c1 for x in row] for row in r1]
    c2 = r2[pos[0]][pos[1]]
    r2 = [[r2[i][j] - c2 * r1[i][j] for j in range(2)] for i in range(2)]
    w.mats = [r1, r2]


def _finish_plane(w: _Work, F: Field, kind: str):
    if kind == "x2":
        _reduce_second(w, F, (0, 0))
        a, b, c, d = _vec(w.mats[1])
        if not d:
            if b:
                return "A7", -c / b, w
            return "A6", None, w
        b, c = b / d, c / d
        if b == c:
            w.new_gens([[F.one, F.zero], [b, F.one]])  # y' = y + b x
            return "A5", None, w
        # (y + b x)(y + c x) is a relation; switch to the xy case
        w.mats = [[[b * c, b], [c, F.one]], w.mats[0]]
        w.new_gens([[b, F.one], [c, F.one]])
        return _finish_plane(w, F, "xy")
    _reduce_second(w, F, (0, 1))
    a, b, c, d = _vec(w.mats[1])
    if not a and not d:
        return "A4", None, w
    if not a and not c:
        w.swap()
        return "A6", None, w
    if not a:
        # x' = y, y' = c x + d y: the old r2 becomes x'y'
        w.new_gens([[F.zero, F.one], [c, d]])
        w.mats = [w.mats[1], w.mats[0]]
        _reduce_second(w, F, (0, 1))
        a, b, c, d = _vec(w.mats[1])
    if not c and not d:
        return "A7", F.zero, w
    if not c:
        r = F.sqrt(-a / d)
        if r is None:
            raise NeedsFieldExtension("square root of %s needed for A8" % (-a / d), [1, 0, a / d])
        w.scale(1, r)
        return "A8", None, w
    beta = -a / c
    w.scale(1, beta)
    a2, b2, c2, d2 = _vec(w.mats[1])
    return "A9", -d2 / a2, w


# ---------------------------------------------------------------- entry points

def _orth(H: Subspace) -> Subspace:
    from .linalg import kernel
    return kernel(H.basis, 4, H.field)


def classify_quadratic(qp: QuadraticPresentation) -> QuadraticClass:
    H = qp.relation_space
    F = H.field
    dim = H.dim
    one, zero = F.one, F.zero
    ident = [[one, zero], [zero, one]]
    if dim == 0:
        return _result("Free", None, ident, H, F)
    if dim == 4:
        return _result("A0", None, ident, H, F)
    mats = [_mat(v) for v in H.dense_basis()]
    if dim == 1:
        tag, q, S = _classify_line(mats[0], F)
        return _result(tag, q, S, H, F)
    if dim == 2:
        tag, q, w = _classify_plane(mats, F)
        return _result(tag, q, w.S, H, F)
    # dim 3: classify the orthogonal line, then transport
    h = _mat(_orth(H).dense_basis()[0])
    btag, bq, S1 = _classify_line(h, F)
    sw = [[zero, one], [one, zero]]
    if btag == "Abar1":
        tag, q, Q = "A1", None, sw
    elif btag == "Abar3":
        tag, q, Q = "A3", None, sw
    else:
        if bq:
            tag, q, Q = "A2", 1 / bq, ident
        else:
            tag, q, Q = "A2", zero, sw
    T = _mm(S1, Q)
    S = _tr(_inv(T))
    if tag == "A2" and q and F.key(1 / q) < F.key(q):
        S = _mm(S, sw)
        q = 1 / q
    return _result(tag, q, S, H, F)


def _result(tag, q, S, H, F) -> QuadraticClass:
    W = Matrix(_inv(S), F)
    cls = QuadraticClass(tag, q if tag in PARAMETRIC else None, W)
    if not _witness_ok(cls, H):
        raise MathError("internal: witness check failed for %s" % cls.name)
    return cls


def _witness_ok(cls: QuadraticClass, H: Subspace) -> bool:
    F = H.field
    W = [list(r) for r in cls.witness.rows]
    mats = [_congr(c, W) for c in canonical_relations(cls.tag, cls.q, F)]
    return _space(mats, F) == H


def witness_valid(cls: QuadraticClass, qp: QuadraticPresentation) -> bool:
    return _witness_ok(cls, qp.relation_space)


def is_isomorphic(a: QuadraticPresentation, b: QuadraticPresentation) -> bool:
    ca, cb = classify_quadratic(a), classify_quadratic(b)
    return ca.tag == cb.tag and ca.q == cb.q
