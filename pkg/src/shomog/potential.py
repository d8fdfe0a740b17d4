"""Twisted potentials, the algebras D(w) they define, explicit families, free products.

A potential is an NcPolynomial of degree N = s + 1 in its own generators
(``y1, y2`` by default).  A twist sigma is a Matrix acting on column
vectors: sigma(e_j) = sum_i sigma[i, j] e_i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, MathError
from .freealg import GeneratorSet, NcPolynomial, Presentation, component_rows
from .koszul import _parallel, _power_vector, flattening, pure_factors
from .linalg import QQ, Echelon, Field, Matrix, Mod, Subspace, binary_form_roots
from .quadclass import NeedsFieldExtension

__all__ = [
    "TwistedPotential", "phi_sigma", "is_twisted_potential", "left_slices", "derived_relations",
    "build_potential_algebra", "potential_exclusion_check", "gen_potential_diag",
    "gen_potential_jordan", "free_product", "free_algebra", "ConditionNotMet", "DegreeMismatch",
    "diag_case", "jordan_matrix",
]


class ConditionNotMet(MathError):
    code = "condition_not_met"


class DegreeMismatch(MathError):
    code = "degree_mismatch"


@dataclass
class TwistedPotential:
    w: NcPolynomial
    sigma: Matrix
    case: str = ""

    @property
    def V_dim(self) -> int:
        return self.w.gens.n

    @property
    def N(self) -> int:
        return self.w.degree()

    @property
    def s(self) -> int:
        return self.N - 1

    def is_fixed(self) -> bool:
        return is_twisted_potential(self.w, self.sigma)

    def algebra(self) -> Presentation:
        return build_potential_algebra(self.w)


def phi_sigma(w: NcPolynomial, sigma: Matrix) -> NcPolynomial:
    """v_1 ... v_N  ->  sigma(v_N) v_1 ... v_{N-1}, extended linearly."""
    n = w.gens.n
    if (sigma.nrows, sigma.ncols) != (n, n):
        raise InputError("sigma must be %dx%d" % (n, n))
    out = NcPolynomial(w.gens, None, w.field)
    terms = {}
    for word, c in w.terms.items():
        if not word:
            terms[word] = terms.get(word, 0) + c
            continue
        last, head = word[-1], word[:-1]
        for i in range(n):
            a = sigma[i, last]
            if a:
                key = (i,) + head
                terms[key] = terms.get(key, 0) + a * c
    out = NcPolynomial(w.gens, terms, w.field)
    return out


def is_twisted_potential(w: NcPolynomial, sigma: Matrix) -> bool:
    return w.is_homogeneous() and phi_sigma(w, sigma) == w


def left_slices(w: NcPolynomial) -> list[NcPolynomial]:
    """(f_i (x) 1)(w) for the dual basis f_i, one per generator."""
    n = w.gens.n
    parts = [dict() for _ in range(n)]
    for word, c in w.terms.items():
        parts[word[0]][word[1:]] = c
    return [NcPolynomial(w.gens, t, w.field) for t in parts]


def derived_relations(w: NcPolynomial) -> Subspace:
    N = w.degree()
    if N is None or N < 2:
        raise MathError("potential must be nonzero and homogeneous of degree >= 2")
    sl = [f for f in left_slices(w) if f]
    return Subspace.span(component_rows(sl, N - 1), w.gens.n ** (N - 1), w.field)


def build_potential_algebra(w: NcPolynomial) -> Presentation:
    """D(w): the free algebra on w's generators modulo its independent left slices."""
    N = w.degree()
    if N is None or N < 2:
        raise MathError("potential must be nonzero and homogeneous of degree >= 2")
    e = Echelon(w.field)
    rels = []
    for f, row in zip(left_slices(w), component_rows(left_slices(w), N - 1)):
        if f and e.add(row):
            rels.append(f)
    return Presentation(w.gens, N - 1, rels, w.field)


# ---------------------------------------------------------------- exclusion

def _pure_points(r1: dict, r2: dict, n: int, s: int, F: Field):
    """Projective points (a:b) with a r1 + b r2 decomposable, or 'all'."""
    forms = Echelon(F)
    for d in range(1, s):
        A = flattening(r1, n, s, d, F)
        B = flattening(r2, n, s, d, F)
        nr, nc = A.nrows, A.ncols
        rows = [i for i in range(nr) if any(A.rows[i]) or any(B.rows[i])]
        cols = [j for j in range(nc) if any(A[i, j] or B[i, j] for i in rows)]
        for x, i in enumerate(rows):
            for k in rows[x + 1:]:
                for y, j in enumerate(cols):
                    for l in cols[y + 1:]:
                        c0 = A[i, j] * A[k, l] - A[i, l] * A[k, j]
                        c2 = B[i, j] * B[k, l] - B[i, l] * B[k, j]
                        c1 = (A[i, j] * B[k, l] + B[i, j] * A[k, l]
                              - A[i, l] * B[k, j] - B[i, l] * A[k, j])
                        forms.add({t: v for t, v in enumerate((c0, c1, c2)) if v})
        if forms.rank == 3:
            return []
    if forms.rank == 0:
        return "all"
    wrap = F.wrap
    basis = [[wrap(row.get(t, 0)) for t in range(3)] for row in forms.pivots.values()]
    q = basis[0]
    pts = binary_form_roots(q[0], q[1], q[2], F)
    if pts is None:
        if len(basis) == 1:
            raise NeedsFieldExtension("decomposable relations need the roots of %s a^2 + %s ab + %s b^2"
                                      % tuple(q), q)
        return []
    out = []
    for a, b in pts:
        if all(c[0] * a * a + c[1] * a * b + c[2] * b * b == 0 for c in basis) and (a, b) not in out:
            out.append((a, b))
    return out


def _alternating(u1, u2, s: int, n: int, F: Field) -> dict:
    """(u1 u2)^t u1 for odd s, (u1 u2)^t for even s."""
    out = {(): F.one}
    for k in range(s):
        u = u1 if k % 2 == 0 else u2
        out = {w + (a,): c * u[a] for w, c in out.items() for a in range(n) if u[a]}
    return out


def _in_span(vec: dict, R: Subspace, n: int) -> bool:
    from .freealg import word_index
    return {word_index(w, n): c for w, c in vec.items()} in R


def potential_exclusion_check(w: NcPolynomial) -> bool:
    """True iff dim R = 2 and no pair of slices has the alternating string shapes."""
    n, F = w.gens.n, w.field
    if n != 2:
        raise InputError("the exclusion check is defined for two potential generators")
    R = derived_relations(w)
    if R.dim != 2:
        return False
    s = w.degree() - 1
    r1, r2 = ({_word(j, s, n): c for j, c in v.items()} for v in R.basis)
    pts = _pure_points(r1, r2, n, s, F)
    if pts == "all":
        cands = []
        for r in (r1, r2):
            for v in pure_factors(r, n, s, F):
                if not any(_parallel(v, u) for u in cands):
                    cands.append(v)
        pairs = [(u1, u2) for u1 in cands for u2 in cands]
    else:
        pairs = []
        for a, b in pts:
            t = {}
            for r, k in ((r1, a), (r2, b)):
                for word, c in r.items():
                    t[word] = t.get(word, 0) + k * c
            fac = pure_factors({x: c for x, c in t.items() if c}, n, s, F)
            if fac is None:
                continue
            if all(_parallel(fac[i], fac[i % 2]) for i in range(s)):
                pairs.append((fac[0], fac[1]))
    for u1, u2 in pairs:
        if _in_span(_alternating(u1, u2, s, n, F), R, n) and _in_span(_alternating(u2, u1, s, n, F), R, n):
            return False
    return True


def _word(j, s, n):
    from .freealg import index_word
    return index_word(j, s, n)


# ---------------------------------------------------------------- families

def _field_of(*xs) -> Field:
    for x in xs:
        if isinstance(x, Mod):
            return Field(x.p)
    return QQ


def _gens(names) -> GeneratorSet:
    return GeneratorSet(list(names))


def _add(terms: dict, word: tuple, c):
    v = terms.get(word, 0) + c
    if v:
        terms[word] = v
    else:
        terms.pop(word, None)


def diag_case(l1, l2, s: int, F: Field):
    """('a', k) / ('b', None) / ('c', 1 or 2) for the first applicable condition, else None."""
    l1, l2 = F(l1), F(l2)
    for k in range(2, s):
        if l1 ** k * l2 ** (s + 1 - k) == 1:
            return "a", k
    if l1 * l2 ** s == 1 and l1 ** s * l2 == 1:
        return "b", None
    if l1 == 1 and l2 ** s == 1:
        return "c", 1
    if l2 == 1 and l1 ** s == 1:
        return "c", 2
    return None


def gen_potential_diag(l1, l2, s: int, field: Field | None = None,
                       names=("y1", "y2")) -> TwistedPotential:
    """nu = diag(l1, l2)-twisted potential of degree s + 1 in any of the three diagonal cases."""
    F = field or _field_of(l1, l2)
    l1, l2 = F(l1), F(l2)
    if not l1 or not l2:
        raise ConditionNotMet("eigenvalues must be nonzero")
    if s < 3:
        raise ConditionNotMet("s must be at least 3")
    case = diag_case(l1, l2, s, F)
    if case is None:
        raise ConditionNotMet("(%s, %s) with s=%d meets none of the three conditions" % (l1, l2, s))
    Y1, Y2 = 0, 1
    t: dict = {}
    kind, k = case
    if kind == "a":
        for i in range(k):
            _add(t, (Y1,) * i + (Y2,) * (s + 1 - k) + (Y1,) * (k - i), l1 ** i)
        # the last term of the second sum would repeat the first term of the first
        for i in range(s + 1 - k):
            _add(t, (Y2,) * i + (Y1,) * k + (Y2,) * (s + 1 - k - i), l1 ** k * l2 ** i)
        label = "a(k=%d)" % k
    elif kind == "b":
        # both sums run over i = 0..s
        for i in range(s + 1):
            _add(t, (Y1,) * i + (Y2,) + (Y1,) * (s - i), l1 ** i)
            _add(t, (Y2,) * i + (Y1,) + (Y2,) * (s - i), l2 ** i)
        label = "b"
    else:
        a, b, lam = (Y1, Y2, l2) if k == 1 else (Y2, Y1, l1)
        _add(t, (a,) * (s + 1), F.one)
        for i in range(s + 1):
            _add(t, (b,) * i + (a,) + (b,) * (s - i), lam ** i)
        label = "c"
    gens = _gens(names)
    sigma = Matrix([[l1, F.zero], [F.zero, l2]], F)
    pot = TwistedPotential(NcPolynomial(gens, t, F), sigma, label)
    if not pot.is_fixed():
        raise MathError("internal: case %s potential is not fixed by nu" % label)
    return pot


def jordan_matrix(lam, F: Field) -> Matrix:
    """nu(y1) = lam y1, nu(y2) = lam (y1 + y2), as a matrix on column vectors."""
    lam = F(lam)
    return Matrix([[lam, lam], [F.zero, lam]], F)


def _poly(gens, F, terms) -> NcPolynomial:
    """Sum of coeff * word for (coeff, 'y1 y2 ...') items; exponents as 'y1^3'."""
    t: dict = {}
    for c, text in terms:
        word = []
        for tok in text.split():
            name, _, e = tok.partition("^")
            word += [gens.index[name]] * (int(e) if e else 1)
        _add(t, tuple(word), c)
    return NcPolynomial(gens, t, F)


def gen_potential_jordan(lam, s: int, field: Field | None = None,
                         names=("y1", "y2")) -> TwistedPotential:
    F = field or _field_of(lam)
    lam = F(lam)
    if s < 3:
        raise ConditionNotMet("s must be at least 3")
    if s == 3:
        if lam ** 2 != 1:
            raise ConditionNotMet("for s = 3 the Jordan twist needs lambda = 1 or -1")
    elif lam ** (s + 1) != 1:
        raise ConditionNotMet("lambda^(s+1) != 1")
    gens = _gens(names)
    sigma = jordan_matrix(lam, F)
    if s == 3:
        w = _jordan_s3(gens, F, lam)
        label = "jordan(s=3)"
    elif F.characteristic == 2:
        w = _jordan_char2(gens, F, s)
        label = "jordan(char 2)"
    elif lam ** 2 + 1 != 0:
        w = _jordan_generic(gens, F, lam, s)
        label = "jordan(1)"
    else:
        w = _jordan_i(gens, F, lam, s)
        label = "jordan(i)"
    pot = TwistedPotential(w, sigma, label)
    if not pot.is_fixed():
        raise MathError("internal: %s potential is not fixed by nu" % label)
    return pot


def _jordan_s3(gens, F, lam):
    one = F.one
    return _poly(gens, F, [
        (one, "y1^2 y2^2"), (one, "y2^2 y1^2"),
        (lam, "y1 y2^2 y1"), (lam, "y2 y1^2 y2"),
        (-(one + lam), "y1 y2 y1 y2"), (-(one + lam), "y2 y1 y2 y1"),
        (one, "y1 y2 y1^2"), (-one, "y1^2 y2 y1"),
    ])


def _y1(k):
    return "y1^%d" % k if k > 0 else ""


def _jordan_generic(gens, F, lam, s):
    L = lambda e: lam ** e
    one = F.one
    terms = []
    for i in range(s):
        terms.append(((one + L(2)) * L(i), "%s y2^2 %s" % (_y1(i), _y1(s - 1 - i))))
    terms.append((L(s) + lam, "y2 %s y2" % _y1(s - 1)))
    for i in range(s - 1):
        terms.append((-(one + lam) * L(i + 1), "%s y2 y1 y2 %s" % (_y1(i), _y1(s - 2 - i))))
    terms += [
        (-(L(s) + one), "y2 %s y2 y1" % _y1(s - 2)),
        (-(one + lam), "y1 y2 %s y2" % _y1(s - 2)),
        (-(L(s) + one), "%s y2 y1" % _y1(s - 1)),
        (L(s) - one, "%s y2" % _y1(s)),
        (one - lam, "y2 %s" % _y1(s)),
        (one + lam, "y1 y2 %s" % _y1(s - 1)),
        (one, _y1(s + 1)),
    ]
    return _poly(gens, F, terms)


def _jordan_char2(gens, F, s):
    one = F.one
    terms = [(one, "%s y2^2 %s" % (_y1(i), _y1(s - 1 - i))) for i in range(s)]
    # the single-y2 tail y1^s y2 + y2 y1^s leaves phi(w) - w = y1^(s+1); the full middle sum does not
    terms.append((one, "y2 %s y2" % _y1(s - 1)))
    terms += [(one, "%s y2 %s" % (_y1(i), _y1(s - i))) for i in range(1, s)]
    return _poly(gens, F, terms)


def _jordan_i(gens, F, lam, s):
    L = lambda e: lam ** e
    one = F.one
    terms = []
    for i in range(s):
        terms.append(((one + L(3)) * L(i), "%s y2^2 %s" % (_y1(i), _y1(s - 1 - i))))
    terms.append((L(s) + L(2), "y2 %s y2" % _y1(s - 1)))
    for i in range(s - 2):
        terms.append((-(one + lam) * L(i + 2), "%s y2 y1^2 y2 %s" % (_y1(i), _y1(s - 3 - i))))
    terms += [
        (-(L(s) + one), "y2 %s y2 y1^2" % _y1(s - 3)),
        (-(one + lam), "y1 y2 %s y2 y1" % _y1(s - 3)),
        (-(lam + L(2)), "y1^2 y2 %s y2" % _y1(s - 3)),
        (lam + L(2), "%s y2 y1^2" % _y1(s - 2)),
        (L(2) + L(3), "%s y2 y1" % _y1(s - 1)),
        (L(s) - lam, "%s y2" % _y1(s)),
        (one - L(2), "y2 %s" % _y1(s)),
        (one + lam, "y1 y2 %s" % _y1(s - 1)),
        (lam + L(2), "y1^2 y2 %s" % _y1(s - 2)),
        (one + lam, _y1(s + 1)),
    ]
    return _poly(gens, F, terms)


# ---------------------------------------------------------------- free products

def free_algebra(names, s: int, field: Field = QQ) -> Presentation:
    return Presentation(GeneratorSet(list(names)), s, [], field)


def free_product(p1: Presentation, p2: Presentation, order=None) -> Presentation:
    """Disjoint union of generators and relations; clashing names of p2 get a suffix."""
    if p1.field != p2.field:
        raise InputError("free product of presentations over different fields")
    if p1.relations and p2.relations and p1.s != p2.s:
        raise DegreeMismatch("relation degrees %d and %d differ" % (p1.s, p2.s))
    s = p1.s if p1.relations or not p2.relations else p2.s
    taken = set(p1.gens.names)
    rename = {}
    for nm in p2.gens.names:
        new = nm
        while new in taken:
            new += "_b"
        rename[nm] = new
        taken.add(new)
    names = list(p1.gens.names) + [rename[nm] for nm in p2.gens.names]
    if order is None:
        order = list(p1.gens.order) + [rename[nm] for nm in p2.gens.order]
    gens = GeneratorSet(names, order)
    off = p1.n
    rels = [NcPolynomial(gens, dict(r.terms), p1.field) for r in p1.relations]
    rels += [NcPolynomial(gens, {tuple(a + off for a in w): c for w, c in r.terms.items()}, p1.field)
             for r in p2.relations]
    return Presentation(gens, s, rels, p1.field)
