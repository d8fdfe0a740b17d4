"""s-homogeneous dual, Veronese ring and bimodule, tensor powers over A."""

from __future__ import annotations

from itertools import product

from .errors import MathError
from .freealg import NcPolynomial, Presentation, component_rows, index_word
from .groebner import TruncatedGB, truncated_groebner
from .linalg import Echelon, Field, Matrix, Subspace, kernel

__all__ = ["QuadraticPresentation", "BimoduleData", "s_dual", "veronese_ring",
           "veronese_bimodule", "tensor_power_degree1", "WrongVeroneseRank", "dual_gb"]


class WrongVeroneseRank(MathError):
    code = "wrong_veronese_rank"


class QuadraticPresentation:
    """k<x,y>/(H) with H a subspace of the 4-dim space (x^2, xy, yx, y^2)."""

    def __init__(self, relation_space: Subspace, n_gens: int = 2, basis_words=None):
        if relation_space.ambient_dim != n_gens ** 2:
            raise MathError("relation space must live in dimension %d" % n_gens ** 2)
        self.n_gens = n_gens
        self.relation_space = relation_space
        self.field = relation_space.field
        self.basis_words = basis_words

    @classmethod
    def from_vectors(cls, vectors, field: Field) -> "QuadraticPresentation":
        return cls(Subspace.span(vectors, 4, field))

    @property
    def dim(self) -> int:
        return self.relation_space.dim

    def matrices(self) -> list[list[list]]:
        """Relation basis as 2x2 coefficient matrices (entry [i][j] for g_i g_j)."""
        out = []
        for v in self.relation_space.dense_basis():
            out.append([[v[0], v[1]], [v[2], v[3]]])
        return out

    def __repr__(self):
        return "QuadraticPresentation(dim H=%d)" % self.dim


class BimoduleData:
    """Degree-0/1 (optionally 2) slice of the Veronese bimodule.

    ``right[g]`` and ``left[g]`` are dim M1 x dim M0 matrices, one per basis
    element g of A1 (two for the dual side); ``right2``/``left2`` map M1 -> M2.
    """

    def __init__(self, field, dim_M0, dim_M1, right, left, right2=None, left2=None, dim_M2=None,
                 words=None):
        self.field = field
        self.dim_M0 = dim_M0
        self.dim_M1 = dim_M1
        self.dim_M2 = dim_M2
        self.right = list(right)
        self.left = list(left)
        self.right2 = right2
        self.left2 = left2
        self.words = words or {}
        for m in self.right + self.left:
            if (m.nrows, m.ncols) != (dim_M1, dim_M0):
                raise MathError("action matrix has shape %dx%d" % (m.nrows, m.ncols))

    def transformed(self, W: Matrix) -> "BimoduleData":
        """Actions of the generators x = W00 g0 + W01 g1, y = W10 g0 + W11 g1."""
        def comb(ms, i):
            if ms is None:
                return None
            return ms[0].scale(W[i, 0]) + ms[1].scale(W[i, 1])
        r2 = [comb(self.right2, 0), comb(self.right2, 1)] if self.right2 else None
        l2 = [comb(self.left2, 0), comb(self.left2, 1)] if self.left2 else None
        return BimoduleData(self.field, self.dim_M0, self.dim_M1,
                            [comb(self.right, 0), comb(self.right, 1)],
                            [comb(self.left, 0), comb(self.left, 1)], r2, l2, self.dim_M2,
                            self.words)

    def __repr__(self):
        return "BimoduleData(dim M0=%d, dim M1=%d)" % (self.dim_M0, self.dim_M1)


def s_dual(p: Presentation) -> Presentation:
    """Relations: orthogonal complement of span(R) under the word pairing."""
    n, s, field = p.n, p.s, p.field
    ker = kernel(component_rows(p.relations, s), n ** s, field)
    rels = [NcPolynomial._raw(p.gens, {index_word(j, s, n): c for j, c in v.items()}, field)
            for v in ker.basis]
    out = Presentation(p.gens, s, rels, field, check=False)
    raw = field.raw
    out._cache["perp"] = [{w: raw(c) for w, c in r.terms.items()} for r in p.relations]
    return out


def dual_gb(p: Presentation, D: int) -> TruncatedGB:
    """Truncated Groebner basis of the dual of p (cached on p)."""
    store = p._cache.setdefault("dual_gb", {})
    if D not in store:
        store[D] = truncated_groebner(s_dual(p), D)
    return store[D]


def _nf_vec(gb: TruncatedGB, w, index: dict) -> dict:
    out = {}
    for u, c in gb.nf_word_raw(w).items():
        out[index[u]] = c
    return out


def _product_matrix(gb, left_words, right_words, target, field, side):
    """Matrix of m -> NF(m g) (side='right') or NF(g m) for each fixed g."""
    idx = {w: i for i, w in enumerate(target)}
    wrap = field.wrap
    mats = []
    for g in right_words if side == "right" else left_words:
        src = left_words if side == "right" else right_words
        cols = []
        for m in src:
            w = m + g if side == "right" else g + m
            cols.append(_nf_vec(gb, w, idx))
        mats.append(Matrix([[wrap(cols[j].get(i, 0)) for j in range(len(src))]
                            for i in range(len(target))], field, ncols=len(src)))
    return mats


def veronese_ring(dual: TruncatedGB, s: int) -> QuadraticPresentation:
    if not dual.certified(2 * s):
        raise MathError("dual Groebner basis must be complete to degree %d" % (2 * s))
    field = dual.presentation.field
    gens_s = dual.normal_words(s)
    if len(gens_s) != 2:
        raise WrongVeroneseRank("dim of the dual in degree s is %d, not 2" % len(gens_s))
    target = dual.normal_words(2 * s)
    idx = {w: i for i, w in enumerate(target)}
    rows = []
    for i in range(2):
        for j in range(2):
            rows.append(_nf_vec(dual, gens_s[i] + gens_s[j], idx))
    # left kernel: c with sum_k c_k rows_k = 0
    cols = {}
    for k, r in enumerate(rows):
        for t, v in r.items():
            cols.setdefault(t, {})[k] = field.wrap(v)
    H = kernel(list(cols.values()), 4, field)
    return QuadraticPresentation(H, 2, basis_words=gens_s)


def veronese_bimodule(dual: TruncatedGB, s: int, with_m2: bool = False,
                      rank: int | None = 2) -> BimoduleData:
    """(s,1)-Veronese bimodule of the algebra presented by ``dual``'s GB.

    ``rank=None`` skips the two-generator check (used for the algebra's own
    triple, where A1 is large).
    """
    top = 2 * s + 1 if with_m2 else s + 1
    if not dual.certified(top):
        raise MathError("dual Groebner basis must be complete to degree %d" % top)
    field = dual.presentation.field
    g = dual.normal_words(s)
    if rank is not None and len(g) != rank:
        raise WrongVeroneseRank("dim of the dual in degree s is %d, not 2" % len(g))
    m0 = dual.normal_words(1)
    m1 = dual.normal_words(s + 1)
    right = _product_matrix(dual, m0, g, m1, field, "right")
    left = _product_matrix(dual, g, m0, m1, field, "left")
    right2 = left2 = None
    dim2 = None
    words = {"A1": g, "M0": m0, "M1": m1}
    if with_m2:
        m2 = dual.normal_words(2 * s + 1)
        dim2 = len(m2)
        right2 = _product_matrix(dual, m1, g, m2, field, "right")
        left2 = _product_matrix(dual, g, m1, m2, field, "left")
        words["M2"] = m2
    return BimoduleData(field, len(m0), len(m1), right, left, right2, left2, dim2, words)


def tensor_power_degree1(b: BimoduleData, k: int) -> int:
    """dim (M^{(x)_A k})_1 as an explicit quotient of sum_j M0^j (x) M1 (x) M0^{k-1-j}."""
    if k < 1:
        raise MathError("k must be positive")
    n, d1 = b.dim_M0, b.dim_M1
    if k == 1:
        return d1
    total = k * n ** (k - 1) * d1
    if total == 0:
        return 0
    field = b.field
    raw = field.raw
    R = [[[raw(x) for x in row] for row in m.rows] for m in b.right]
    L = [[[raw(x) for x in row] for row in m.rows] for m in b.left]
    e = Echelon(field)
    p = field.p
    for ms in product(range(n), repeat=k):
        for i in range(k - 1):
            for a in range(len(R)):
                row = {}
                rest_l = ms[:i] + ms[i + 1:]
                rest_r = ms[:i + 1] + ms[i + 2:]
                for r in range(d1):
                    c = R[a][r][ms[i]]
                    if c:
                        row[(i, rest_l, r)] = c
                for r in range(d1):
                    c = L[a][r][ms[i + 1]]
                    if c:
                        key = (i + 1, rest_r, r)
                        v = row.get(key, 0) - c
                        if p is not None:
                            v %= p
                        if v:
                            row[key] = v
                        else:
                            row.pop(key, None)
                if row:
                    e.add_raw(row)
    return total - e.rank
