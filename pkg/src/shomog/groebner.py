"""Degree-truncated Groebner bases of homogeneous two-sided ideals.

Two completion strategies produce the same (unique) reduced basis:

* ``buchberger``: overlap (diamond lemma) completion, degree by degree,
  with overlaps queued by (degree, insertion index).
* ``annihilator``: works with the orthogonal complement X_d of the ideal
  in each degree, X_d = (X_{d-1} (x) V) cap (V^{d-s} (x) X_s).  Normal
  words are the greedy-ascending independent columns of X_d and the
  normal form of a word u is sum_k X_d[k][u] n_k.  This is the cheap
  route when the relation space is large (e.g. s-homogeneous duals,
  whose relation count is n^s - 2).
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from heapq import heapify, heappop, heappush

from .errors import MathError
from .freealg import NcPolynomial, Presentation, Word, component_rows, index_word
from .linalg import Echelon, kernel

__all__ = ["TruncatedGB", "truncated_groebner", "normal_form", "is_complete_up_to",
           "DegreeAboveCertification"]


class DegreeAboveCertification(UserWarning):
    """Normal form requested above the certified degree of a truncated basis."""


class TruncatedGB:
    def __init__(self, presentation, bound, rules, complete_to, closed, method, nf_tables=None):
        self.presentation = presentation
        self.bound = bound
        self.complete_to = complete_to
        self.closed = closed
        self.method = method
        self._rules = rules  # tip -> raw monic polynomial (dict)
        self._lens = sorted({len(t) for t in rules})
        self._nf_tables = nf_tables or {}
        self._nw_cache: dict = {}
        gens, field = presentation.gens, presentation.field
        wrap = field.wrap
        order = sorted(rules, key=gens.key)
        self.elements = [NcPolynomial._raw(gens, {w: wrap(c) for w, c in rules[t].items()}, field)
                         for t in order]
        self.tips = frozenset(rules)

    def __repr__(self):
        return "TruncatedGB(%d elements, D=%d, complete_to=%d, closed=%s)" % (
            len(self.elements), self.bound, self.complete_to, self.closed)

    @property
    def max_tip_degree(self) -> int:
        return max(self._lens) if self._lens else 0

    def is_complete_up_to(self, d: int) -> bool:
        return d <= self.complete_to

    def certified(self, d: int) -> bool:
        return self.closed or d <= self.complete_to

    def normal_form(self, f: NcPolynomial) -> NcPolynomial:
        return normal_form(f, self)

    def reduce_raw(self, terms: dict) -> dict:
        return _reduce(terms, self._rules, self._lens, self.presentation.gens, self.presentation.field.p)

    def has_tip_factor(self, w: Word) -> bool:
        rules = self._rules
        for L in self._lens:
            for i in range(len(w) - L + 1):
                if w[i:i + L] in rules:
                    return True
        return False

    def normal_words(self, d: int) -> list:
        """Degree-d words containing no tip, sorted ascending in deglex."""
        if d in self._nw_cache:
            return self._nw_cache[d]
        gens = self.presentation.gens
        if d == 0:
            out = [()]
        else:
            prev = self.normal_words(d - 1)
            rules, lens = self._rules, self._lens
            out = []
            for u in prev:
                for a in range(gens.n):
                    w = u + (a,)
                    if not any(L <= d and w[d - L:] in rules for L in lens):
                        out.append(w)
            out.sort(key=gens.key)
        self._nw_cache[d] = out
        return out

    def nf_word_raw(self, w: Word) -> dict:
        """Raw normal form of a single word."""
        tab = self._nf_tables.get(len(w))
        if tab is not None:
            if w in tab[0]:
                return {w: 1}
            return dict(tab[1].get(w, {}))
        return self.reduce_raw({w: 1})


def _tip_occurrence(w, rules, lens):
    for i in range(len(w)):
        for L in lens:
            if i + L > len(w):
                break
            if w[i:i + L] in rules:
                return i, w[i:i + L]
    return None


def _reduce(terms: dict, rules: dict, lens: list, gens, p) -> dict:
    """Top-down reduction: always rewrite the largest reducible word at its leftmost tip."""
    if not rules or not terms:
        return {w: c for w, c in terms.items() if c}
    nwt = tuple(-x for x in gens.weight)

    def nk(w):
        return (-len(w), tuple(nwt[a] for a in w))

    terms = {w: c for w, c in terms.items() if c}
    heap = [(nk(w), w) for w in terms]
    heapify(heap)
    out = {}
    while heap:
        _, w = heappop(heap)
        c = terms.pop(w, None)
        if c is None:
            continue
        hit = _tip_occurrence(w, rules, lens)
        if hit is None:
            out[w] = c
            continue
        i, t = hit
        u, v = w[:i], w[i + len(t):]
        for tw, tc in rules[t].items():
            if tw == t:
                continue
            nw = u + tw + v
            old = terms.get(nw)
            if p is None:
                val = (0 if old is None else old) - c * tc
            else:
                val = ((0 if old is None else old) - c * tc) % p
            if val:
                terms[nw] = val
                if old is None:
                    heappush(heap, (nk(nw), nw))
            elif old is not None:
                del terms[nw]
    return out


def _monic(poly: dict, gens, p) -> tuple:
    tip = max(poly, key=gens.key)
    a = poly[tip]
    if a != 1:
        if p is None:
            inv = 1 / a
            poly = {w: c * inv for w, c in poly.items()}
        else:
            inv = pow(a, -1, p)
            poly = {w: c * inv % p for w, c in poly.items()}
    return tip, poly


def _buchberger(pres: Presentation, D: int) -> TruncatedGB:
    gens, field, s = pres.gens, pres.field, pres.s
    p = field.p
    raw = field.raw
    rules: dict = {}
    order: list = []
    pending = defaultdict(list)
    beyond = 0

    def schedule(a, b):
        nonlocal beyond
        ta, tb = order[a], order[b]
        la, lb = len(ta), len(tb)
        for k in range(1, min(la, lb)):
            if ta[la - k:] == tb[:k]:
                deg = la + lb - k
                if deg <= D:
                    pending[deg].append((a, b, k))
                else:
                    beyond += 1

    def add(poly):
        tip, poly = _monic(poly, gens, p)
        rules[tip] = poly
        order.append(tip)
        idx = len(order) - 1
        for j in range(idx + 1):
            schedule(idx, j)
            if j != idx:
                schedule(j, idx)
        return tip

    inputs = [{w: raw(c) for w, c in r.terms.items()} for r in pres.relations]
    lens_cache = []
    for d in range(s, D + 1):
        cands = list(inputs) if d == s else []
        for a, b, k in pending.pop(d, []):
            ta, tb = order[a], order[b]
            fa, fb = rules[ta], rules[tb]
            wb, wa = tb[k:], ta[:len(ta) - k]
            sp = {}
            for w, c in fa.items():
                sp[w + wb] = c
            for w, c in fb.items():
                nw = wa + w
                val = sp.get(nw, 0) - c
                if p is not None:
                    val %= p
                if val:
                    sp[nw] = val
                else:
                    sp.pop(nw, None)
            cands.append(sp)
        new_tips = []
        for c in cands:
            lens_cache = sorted({len(t) for t in rules})
            r = _reduce(c, rules, lens_cache, gens, p)
            if r:
                new_tips.append(add(r))
        # interreduce tails of this degree's elements
        if new_tips:
            lens_cache = sorted({len(t) for t in rules})
            for t in new_tips:
                tail = {w: c for w, c in rules[t].items() if w != t}
                red = _reduce(tail, rules, lens_cache, gens, p)
                red[t] = 1
                rules[t] = red
    closed = beyond == 0 and not any(pending.values())
    return TruncatedGB(pres, D, rules, D, closed, "buchberger")


def _perp_rows(pres: Presentation) -> list:
    """Raw basis (word -> coeff) of the orthogonal complement of the relation space."""
    cached = pres._cache.get("perp")
    if cached is not None:
        return cached
    n, s, field = pres.n, pres.s, pres.field
    ker = kernel(component_rows(pres.relations, s), n ** s, field)
    raw = field.raw
    out = [{index_word(j, s, n): raw(c) for j, c in v.items()} for v in ker.basis]
    pres._cache["perp"] = out
    return out


def _annihilator(pres: Presentation, D: int) -> TruncatedGB:
    gens, field, s, n = pres.gens, pres.field, pres.s, pres.n
    p = field.p
    key = gens.key
    xs = _perp_rows(pres)

    def rref_words(rows):
        e = Echelon(field, key=key)
        for r in rows:
            e.add_raw(dict(r))
        return e.rref_raw()

    xs_red = rref_words(xs)
    xs_piv = [c for c, _ in xs_red]
    rules: dict = {}
    tables: dict = {}
    normal_prev = None
    X = None
    empty_at = None
    for d in range(s, D + 1):
        if d == s:
            red = xs_red
        else:
            red = _extend(X, xs_red, xs_piv, n, s, d, field, rref_words)
        X = [row for _, row in red]
        normal = set(c for c, _ in red)
        # normal-form table: word -> {normal word: coeff}
        nf: dict = defaultdict(dict)
        for c, row in red:
            for w, a in row.items():
                if w != c:
                    nf[w][c] = a
        tables[d] = (normal, dict(nf))
        # new tips: non-normal words whose maximal proper prefix/suffix are normal
        if d == s:
            cand = [w for w in _all_words(n, d)]
        else:
            cand = [u + (a,) for u in normal_prev for a in range(n)]
        for w in cand:
            if w in normal:
                continue
            if d > s and w[1:] not in normal_prev:
                continue
            poly = {w: 1}
            for c, a in nf.get(w, {}).items():
                poly[c] = (-a) if p is None else (-a) % p
            rules[w] = poly
        normal_prev = normal
        if not normal:
            empty_at = d
            break
    if empty_at is not None:
        closed = True
    else:
        dmax = max((len(t) for t in rules), default=0)
        closed = dmax == 0 or (2 * dmax - 1 <= D and all(len(t) <= dmax for t in rules))
    gb = TruncatedGB(pres, D, rules, D, closed, "annihilator", tables)
    return gb


def _all_words(n, d):
    from itertools import product
    return list(product(range(n), repeat=d))


def _extend(X, xs_red, xs_piv, n, s, d, field, rref_words):
    """RREF rows (by ascending deglex) of X_d from X_{d-1} and X_s."""
    p = field.p
    # unknown (j, a) -> column j*n + a ; y[b + (a,)] = sum_j c_{j,a} b_j[b]
    expr: dict = defaultdict(dict)
    for j, b in enumerate(X):
        for wb, c in b.items():
            for a in range(n):
                expr[wb + (a,)][j * n + a] = c
    by_prefix: dict = defaultdict(dict)
    cut = d - s
    for w, form in expr.items():
        by_prefix[w[:cut]][w[cut:]] = form
    xs_rows = [row for _, row in xs_red]
    piv_set = set(xs_piv)
    eqs = Echelon(field)
    for pre, E in by_prefix.items():
        sig = set(x for x in E if x not in piv_set)
        active = [(k, E[c]) for k, c in enumerate(xs_piv) if c in E]
        for k, _ in active:
            sig.update(x for x in xs_rows[k] if x not in piv_set)
        for sg in sig:
            eq = dict(E.get(sg, {}))
            for k, form in active:
                coef = xs_rows[k].get(sg)
                if not coef:
                    continue
                for col, v in form.items():
                    val = eq.get(col, 0) - coef * v
                    if p is not None:
                        val %= p
                    if val:
                        eq[col] = val
                    else:
                        eq.pop(col, None)
            if eq:
                eqs.add_raw(eq)
    # kernel of the equation system in raw form
    nun = len(X) * n
    red = eqs.rref_raw()
    pivs = {c for c, _ in red}
    sols = []
    for f in range(nun):
        if f in pivs:
            continue
        v = {f: 1}
        for c, row in red:
            a = row.get(f)
            if a:
                v[c] = -a if p is None else (-a) % p
        sols.append(v)
    # assemble vectors in V^d
    vecs = []
    for v in sols:
        y: dict = {}
        for col, c in v.items():
            j, a = divmod(col, n)
            for wb, bc in X[j].items():
                w = wb + (a,)
                val = y.get(w, 0) + c * bc
                if p is not None:
                    val %= p
                if val:
                    y[w] = val
                else:
                    y.pop(w, None)
        if y:
            vecs.append(y)
    return rref_words(vecs)


def truncated_groebner(p: Presentation, D: int, method: str = "auto") -> TruncatedGB:
    """Reduced Groebner basis of (relations) up to degree D."""
    if D < p.s:
        raise MathError("truncation bound %d below relation degree %d" % (D, p.s))
    if method == "auto":
        nrel = len(p.relations)
        method = "annihilator" if nrel > p.n ** p.s - nrel else "buchberger"
    if method == "buchberger":
        return _buchberger(p, D)
    if method == "annihilator":
        return _annihilator(p, D)
    raise ValueError("unknown method %r" % method)


def normal_form(f: NcPolynomial, gb: TruncatedGB) -> NcPolynomial:
    deg = max((len(w) for w in f.terms), default=0)
    if not gb.certified(deg):
        warnings.warn("degree %d exceeds certified degree %d" % (deg, gb.complete_to),
                      DegreeAboveCertification, stacklevel=2)
    field = f.field
    raw, wrap = field.raw, field.wrap
    out = gb.reduce_raw({w: raw(c) for w, c in f.terms.items()})
    return NcPolynomial._raw(f.gens, {w: wrap(c) for w, c in out.items()}, field)


def is_complete_up_to(gb: TruncatedGB, d: int) -> bool:
    return gb.is_complete_up_to(d)
