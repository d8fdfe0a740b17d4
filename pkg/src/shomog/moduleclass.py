"""One-sided decompositions of the Veronese bimodule and bimodule fingerprints.

A linearly presented module over a two-generator quadratic algebra is fixed
by its degree 0 -> 1 slice, i.e. by the Kronecker pencil (X, Y) of the two
generator actions.  Summands:

* Z_n   dims (n, n-1)   (Z_1 = k)
* W_n   dims (n, n+1)   (W_1 = A)
* B_n(a:b) dims (n, n)  with a X - b Y singular on the block
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .duality import BimoduleData
from .errors import MathError
from .linalg import Field, Matrix, Subspace, binary_form_roots, kernel
from .quadclass import NeedsFieldExtension, QuadraticClass

__all__ = ["ModuleDecomposition", "BimoduleClass", "UnexpectedShape", "decompose_one_sided",
           "match_bimodule", "common_kernel", "projective_point", "BIMODULE_TAGS"]

BIMODULE_TAGS = ("JA1_plus_triv", "JA1_sigma_twist", "M(p)", "A1_mod_x_plus_triv",
                 "TwistedD", "B1_plus_triv", "B2_plus_triv", "Trivial_only")


class UnexpectedShape(MathError):
    code = "unexpected_shape"


@dataclass(frozen=True)
class ModuleDecomposition:
    """Summands as tuples ("Z", n), ("W", n) or ("B", n, (a, b))."""
    side: str
    summands: tuple

    def count(self, kind: str, n: int | None = None) -> int:
        return sum(1 for t in self.summands if t[0] == kind and (n is None or t[1] == n))

    @property
    def dims(self) -> tuple[int, int]:
        d0 = d1 = 0
        for t in self.summands:
            n = t[1]
            d0 += n
            d1 += {"Z": n - 1, "W": n + 1, "B": n}[t[0]]
        return d0, d1

    def label(self) -> str:
        prime = "'" if self.side == "left" else ""
        parts = []
        z1 = self.count("Z", 1)
        for t in self.summands:
            if t[:2] == ("Z", 1):
                continue
            if t[0] == "B":
                a, b = t[2]
                parts.append("B%d%s(%s:%s)" % (t[1], prime, a, b))
            else:
                parts.append("%s%d%s" % (t[0], t[1], prime))
        if z1:
            parts.append("Z1%s^%d" % (prime, z1) if z1 > 1 else "Z1" + prime)
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"side": self.side, "label": self.label()}

    def __repr__(self):
        return "ModuleDecomposition(%s)" % self.label()


@dataclass(frozen=True)
class BimoduleClass:
    tag: str
    m: int
    params: dict = dc_field(default_factory=dict)

    def to_json(self, F: Field) -> dict:
        def enc(v):
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            if isinstance(v, (int, str)) and not hasattr(v, "v"):
                return v
            return F.to_json(v)
        return {"tag": self.tag, "m": self.m, "params": {k: enc(v) for k, v in self.params.items()}}

    def __repr__(self):
        return "BimoduleClass(%s, m=%d, %s)" % (self.tag, self.m, self.params)


# ---------------------------------------------------------------- helpers

def _stack(mats: list[Matrix], ncols: int, F: Field) -> Matrix:
    rows = [r for m in mats for r in m.rows]
    return Matrix(rows, F, ncols=ncols)


def common_kernel(mats: list[Matrix], ncols: int, F: Field) -> Subspace:
    return kernel(_stack(mats, ncols, F))


def projective_point(a, b, F: Field) -> tuple:
    """(a:b) scaled so the first nonzero coordinate is 1."""
    a, b = F(a), F(b)
    if a:
        return (F.one, b / a)
    if b:
        return (F.zero, F.one)
    raise MathError("(0:0) is not a projective point")


def _pencil_roots(X: Matrix, Y: Matrix, F: Field) -> list[tuple]:
    """Points (a:b) where det(a X - b Y) = 0, for square 1x1 or 2x2 pencils."""
    n = X.nrows
    if n == 1:
        x, y = X[0, 0], Y[0, 0]
        # a x - b y = 0
        return [projective_point(y, x, F)]

    def det(a, b):
        M = [[a * X[i, j] - b * Y[i, j] for j in range(2)] for i in range(2)]
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]

    # det(a X - b Y) = c0 a^2 + c1 a b + c2 b^2
    c0 = det(F.one, F.zero)
    c2 = det(F.zero, F.one)
    c1 = det(F.one, F.one) - c0 - c2
    if not (c0 or c1 or c2):
        raise UnexpectedShape("singular pencil on a regular block")
    pts = binary_form_roots(c0, c1, c2, F)
    if pts is None:
        raise NeedsFieldExtension("pencil roots of %s*a^2 + %s*ab + %s*b^2" % (c0, c1, c2),
                                  [c0, c1, c2])
    return pts


# ---------------------------------------------------------------- decomposition

def decompose_one_sided(b: BimoduleData, side: str) -> ModuleDecomposition:
    """Kronecker decomposition of the chosen one-sided structure.

    Only the shapes that occur for two-relation Veronese bimodules are
    recognised: Z_1 copies plus at most one of Z_2, W_1, B_1, B_2, B_1+B_1.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    F = b.field
    X, Y = b.right if side == "right" else b.left
    n0, n1 = b.dim_M0, b.dim_M1
    K = common_kernel([X, Y], n0, F)
    z1 = K.dim
    c = n0 - z1
    # image of the complement; M1 must be spanned by the images
    img = Matrix([list(X.rows[i]) + list(Y.rows[i]) for i in range(n1)], F, ncols=2 * n0).rank() \
        if n1 else 0
    if img != n1:
        raise UnexpectedShape("degree-1 part is not generated by degree 0")
    summ = []
    if (c, n1) == (0, 0):
        pass
    elif (c, n1) == (1, 2):
        summ.append(("W", 1))
    elif (c, n1) == (2, 1):
        summ.append(("Z", 2))
    elif (c, n1) in ((1, 1), (2, 2)):
        Xc, Yc = _restrict(X, Y, K, F)
        pts = _pencil_roots(Xc, Yc, F)
        if c == 1:
            summ.append(("B", 1, pts[0]))
        elif pts[0] != pts[1]:
            summ.extend(sorted([("B", 1, pts[0]), ("B", 1, pts[1])], key=_bkey(F)))
        else:
            a, bb = pts[0]
            M = Matrix([[a * Xc[i, j] - bb * Yc[i, j] for j in range(2)] for i in range(2)], F)
            summ.extend([("B", 1, pts[0])] * 2 if M.rank() == 0 else [("B", 2, pts[0])])
    else:
        raise UnexpectedShape("%s module with residual dims (%d, %d)" % (side, c, n1))
    summ.extend([("Z", 1)] * z1)
    return ModuleDecomposition(side, tuple(summ))


def _bkey(F):
    return lambda t: (t[1], F.key(t[2][0]), F.key(t[2][1]))


def _complement(K: Subspace, n: int, F: Field) -> list[int]:
    """Coordinate vectors completing K to a basis (non-pivot columns)."""
    piv = {min(v) for v in K.basis}
    return [j for j in range(n) if j not in piv]


def _restrict(X: Matrix, Y: Matrix, K: Subspace, F: Field):
    """The pencil induced on M0/K (square in the cases we call it for)."""
    cols = _complement(K, X.ncols, F)
    Xs = Matrix([[r[j] for j in cols] for r in X.rows], F, ncols=len(cols))
    Ys = Matrix([[r[j] for j in cols] for r in Y.rows], F, ncols=len(cols))
    # drop to a square pencil by choosing independent image rows
    rows = _independent_rows(Xs, Ys, F)
    return (Matrix([Xs.rows[i] for i in rows], F, ncols=len(cols)),
            Matrix([Ys.rows[i] for i in rows], F, ncols=len(cols)))


def _independent_rows(Xs: Matrix, Ys: Matrix, F: Field) -> list[int]:
    from .linalg import Echelon
    e = Echelon(F)
    out = []
    for i in range(Xs.nrows):
        v = {j: x for j, x in enumerate(list(Xs.rows[i]) + list(Ys.rows[i])) if x}
        if e.add(v):
            out.append(i)
    return out


# ---------------------------------------------------------------- bimodules

def match_bimodule(b: BimoduleData, a_class: QuadraticClass) -> BimoduleClass:
    """Recognise the bimodule over the canonical quadratic algebra ``a_class``.

    ``b`` is expressed in the Veronese generators; the witness of ``a_class``
    moves it to the canonical generators x, y first.
    """
    F = b.field
    bt = b.transformed(a_class.witness)
    n0 = bt.dim_M0
    Rx, Ry = bt.right
    Lx, Ly = bt.left
    K = common_kernel([Rx, Ry, Lx, Ly], n0, F)
    m = K.dim
    tag = a_class.tag
    if tag in ("A4", "A5"):
        untwisted = kernel(Rx) == kernel(Lx) and kernel(Ry) == kernel(Ly)
        swapped = kernel(Rx) == kernel(Ly) and kernel(Ry) == kernel(Lx)
        # over A5 only the untwisted shape is realised (see the decisions ledger)
        if untwisted:
            return BimoduleClass("JA1_plus_triv", m)
        if swapped and tag == "A4":
            return BimoduleClass("JA1_sigma_twist", m)
        raise UnexpectedShape("%s bimodule is not a realisable form of J(A)[1]" % tag)
    if tag == "A6" or (tag == "A7" and not a_class.q):
        _expect_dims(bt, m, 2, 2)
        return BimoduleClass("JA1_plus_triv", m)
    if tag == "A7":
        _expect_dims(bt, m, 2, 2)
        p = _ratio(Lx, Rx, F)
        return BimoduleClass("M(p)", m, {"p": p, "q": a_class.q})
    if tag == "A1":
        _expect_dims(bt, m, 1, 1)
        return BimoduleClass("A1_mod_x_plus_triv", m)
    if tag == "A0":
        return _match_a0(bt, K, m, F)
    raise UnexpectedShape("quadratic class %s cannot occur for two relations" % a_class.name)


def _expect_dims(b: BimoduleData, m: int, c0: int, c1: int):
    if (b.dim_M0 - m, b.dim_M1) != (c0, c1):
        raise UnexpectedShape("bimodule dims (%d, %d) with %d trivial summands"
                              % (b.dim_M0, b.dim_M1, m))


def _ratio(L: Matrix, R: Matrix, F: Field):
    """The scalar p with L = p R (R nonzero)."""
    p = None
    for i in range(R.nrows):
        for j in range(R.ncols):
            if R[i, j]:
                p = L[i, j] / R[i, j]
                break
        if p is not None:
            break
    if p is None or L != R.scale(p):
        raise UnexpectedShape("left action of x is not a multiple of the right action")
    return p


def _match_a0(bt: BimoduleData, K: Subspace, m: int, F: Field) -> BimoduleClass:
    c = bt.dim_M0 - m
    if bt.dim_M1 == 0:
        if c != 0:
            raise UnexpectedShape("nontrivial degree 0 with zero degree 1")
        return BimoduleClass("Trivial_only", m)
    if bt.dim_M1 != 1:
        raise UnexpectedShape("A0 bimodule with dim M1 = %d" % bt.dim_M1)
    if c == 1:
        return BimoduleClass("B1_plus_triv", m)
    if c != 2:
        raise UnexpectedShape("A0 bimodule with %d nontrivial generators" % c)
    Rx, Ry = bt.right
    Lx, Ly = bt.left
    KR = common_kernel([Rx, Ry], bt.dim_M0, F)
    KL = common_kernel([Lx, Ly], bt.dim_M0, F)
    if KR != KL:
        return BimoduleClass("B2_plus_triv", m)
    if KR != K:
        raise UnexpectedShape("A0 bimodule with equal one-sided kernels larger than K")
    return BimoduleClass("TwistedD", m, _nu_data(bt, K, F))


def _nu_data(bt: BimoduleData, K: Subspace, F: Field) -> dict:
    """Twist of _{nu^-1}D: solve L_a = R_{tau(a)}, tau = nu^-1, on M0/K."""
    cols = _complement(K, bt.dim_M0, F)
    Rx, Ry = ([m[0, j] for j in cols] for m in bt.right)
    Lx, Ly = ([m[0, j] for j in cols] for m in bt.left)
    Rm = Matrix([Rx, Ry], F).transpose()  # columns R_x, R_y
    Rinv = Rm.inverse()
    tx = Rinv.apply(Lx)  # tau(x) = tx[0] x + tx[1] y
    ty = Rinv.apply(Ly)
    tau = Matrix([[tx[0], ty[0]], [tx[1], ty[1]]], F)
    nu = tau.inverse()
    return _eigen_data(nu, F)


def _eigen_data(nu: Matrix, F: Field) -> dict:
    a, b, c, d = nu[0, 0], nu[0, 1], nu[1, 0], nu[1, 1]
    tr, det = a + d, a * d - b * c
    roots = F.quadratic_roots(F.one, -tr, det)
    if roots is None:
        raise NeedsFieldExtension("eigenvalues of nu are the roots of t^2 + (%s)*t + (%s)"
                                  % (-tr, det),
                                  [F.one, -tr, det])
    out = {"nu": [[a, b], [c, d]]}
    if len(roots) == 2:
        out["kind"] = "diagonal"
        out["eigenvalues"] = roots
    elif b or c:
        out["kind"] = "jordan"
        out["eigenvalues"] = roots * 2
        out["lambda"] = roots[0]
    else:
        out["kind"] = "diagonal"
        out["eigenvalues"] = roots * 2
    return out
