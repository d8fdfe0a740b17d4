"""Words and noncommutative polynomials in the free algebra T_k V.

A word is a tuple of generator indices (declaration order).  Monomials
are compared degree-lexicographically, with ties broken by a per
presentation generator order (first listed = largest).
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import InputError, MathError
from .linalg import QQ, Echelon, Field, Matrix, Subspace

Word = tuple

__all__ = [
    "GeneratorSet", "Word", "NcPolynomial", "Presentation", "word_mul", "poly_mul",
    "deglex_cmp", "component_matrix", "component_rows", "word_index", "index_word",
    "words_of_degree", "parse_poly", "format_poly", "ParseError", "GeneratorMismatch",
    "InhomogeneousInput", "DependentRelations",
]


class ParseError(InputError):
    code = "parse_error"

    def __init__(self, msg: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None and text is not None:
            msg = "%s at column %d: %r" % (msg, pos + 1, text[max(0, pos - 8):pos + 8])
        super().__init__(msg)


class GeneratorMismatch(InputError):
    code = "generator_mismatch"


class InhomogeneousInput(MathError):
    code = "inhomogeneous_input"


class DependentRelations(InputError):
    code = "dependent_relations"


class GeneratorSet:
    def __init__(self, names: Sequence[str], order: Sequence[str] | None = None):
        names = list(names)
        if len(set(names)) != len(names):
            raise InputError("duplicate generator names: %s" % names)
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise InputError("bad generator name %r" % nm)
        order = list(order) if order is not None else list(names)
        if sorted(order) != sorted(names):
            raise InputError("order %s is not a permutation of %s" % (order, names))
        self.names = tuple(names)
        self.order = tuple(order)
        pos = {nm: i for i, nm in enumerate(order)}
        n = len(names)
        # weight: larger generator -> larger weight
        self.weight = tuple(n - 1 - pos[nm] for nm in names)
        self.index = {nm: i for i, nm in enumerate(names)}

    def __len__(self):
        return len(self.names)

    @property
    def n(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and (self.names, self.order) == (other.names, other.order)

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return "GeneratorSet(%s)" % " > ".join(self.order)

    def key(self, w: Word):
        """Sort key realising deglex: larger key = larger word."""
        wt = self.weight
        return (len(w), tuple(wt[a] for a in w))

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        out, i = [], 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            nm = self.names[w[i]]
            out.append(nm if j - i == 1 else "%s^%d" % (nm, j - i))
            i = j
        return "*".join(out)


def word_mul(a: Word, b: Word) -> Word:
    return tuple(a) + tuple(b)


def deglex_cmp(a: Word, b: Word, gens: GeneratorSet) -> int:
    ka, kb = gens.key(a), gens.key(b)
    return (ka > kb) - (ka < kb)


def word_index(w: Word, n: int) -> int:
    i = 0
    for a in w:
        i = i * n + a
    return i


def index_word(i: int, d: int, n: int) -> Word:
    out = [0] * d
    for k in range(d - 1, -1, -1):
        i, out[k] = divmod(i, n)
    return tuple(out)


def words_of_degree(n: int, d: int) -> list[Word]:
    """All degree-d words in canonical (index) order."""
    return list(product(range(n), repeat=d))


class NcPolynomial:
    """Element of T_k V: a dict word -> nonzero scalar."""

    __slots__ = ("gens", "field", "terms")

    def __init__(self, gens: GeneratorSet, terms: dict | None = None, field: Field = QQ):
        self.gens = gens
        self.field = field
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = field(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, gens, terms, field):
        p = cls.__new__(cls)
        p.gens, p.field, p.terms = gens, field, terms
        return p

    @classmethod
    def word(cls, gens, w, field=QQ, coeff=1):
        return cls(gens, {tuple(w): coeff}, field)

    def _same(self, other):
        if other.gens != self.gens or other.field != self.field:
            raise GeneratorMismatch("polynomials over different generator sets or fields")

    def __add__(self, other):
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            v = t.get(w, 0) + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        return NcPolynomial._raw(self.gens, t, self.field)

    def __neg__(self):
        return NcPolynomial._raw(self.gens, {w: -c for w, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        if not c:
            return NcPolynomial(self.gens, None, self.field)
        return NcPolynomial._raw(self.gens, {w: c * v for w, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    def degree(self) -> int | None:
        """Common degree of all terms, or None when zero/inhomogeneous."""
        ds = self.degrees
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.gens.key(t[0]), reverse=True)

    def tip(self) -> Word:
        return max(self.terms, key=self.gens.key)

    def monic(self) -> "NcPolynomial":
        return self.scale(1 / self.terms[self.tip()])

    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


def poly_mul(f: NcPolynomial, g: NcPolynomial) -> NcPolynomial:
    f._same(g)
    t: dict = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            w = u + v
            c = t.get(w, 0) + a * b
            if c:
                t[w] = c
            else:
                t.pop(w, None)
    return NcPolynomial._raw(f.gens, t, f.field)


# ---------------------------------------------------------------- text grammar

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos, toks = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos:].lstrip()[0],
                             len(text) - len(text[pos:].lstrip()), text)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_poly(text: str, gens: GeneratorSet, field: Field = QQ) -> NcPolynomial:
    """Parse ``poly := term (('+'|'-') term)*`` with ``term := [coeff '*'] word``.

    Words are ``*``-separated factors ``gen`` or ``gen^k``; a coefficient
    is ``int`` or ``int/int``.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, val=None):
        nonlocal i
        t = toks[i]
        if (kind and t[0] != kind) or (val and t[1] != val):
            want = val or kind
            raise ParseError("expected %s, found %r" % (want, t[1] or "end of input"), t[2], text)
        i += 1
        return t

    terms: dict = {}
    sign = 1
    first = True
    while True:
        t = peek()
        if t[0] == "op" and t[1] in "+-":
            take()
            sign = -1 if t[1] == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-'", t[2], text)
        first = False
        coeff = Fraction(1)
        if peek()[0] == "num":
            num = int(take()[1])
            den = 1
            if peek()[1] == "/":
                take()
                den = int(take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator", toks[i - 1][2], text)
            coeff = Fraction(num, den)
            if peek()[1] != "*":
                raise ParseError("constant terms are not allowed; expected '*'", peek()[2], text)
            take("op", "*")
        word = []
        while True:
            t = take("name")
            if t[1] not in gens.index:
                raise ParseError("unknown generator %r" % t[1], t[2], text)
            g = gens.index[t[1]]
            k = 1
            if peek()[1] == "^":
                take()
                k = int(take("num")[1])
                if k == 0:
                    raise ParseError("zero exponent", toks[i - 1][2], text)
            word.extend([g] * k)
            if peek()[1] == "*":
                take()
                continue
            break
        w = tuple(word)
        c = terms.get(w, 0) + sign * coeff
        if c:
            terms[w] = c
        else:
            terms.pop(w, None)
        if peek()[0] == "end":
            break
    return NcPolynomial(gens, terms, field)


def _coeff_str(c, field: Field) -> str:
    if field.p is not None:
        return str(int(c))
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_poly(f: NcPolynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for k, (w, c) in enumerate(f.sorted_terms()):
        neg = f.field.p is None and c < 0
        mag = -c if neg else c
        body = f.gens.word_str(w)
        if mag != 1:
            body = "%s*%s" % (_coeff_str(mag, f.field), body)
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# ---------------------------------------------------------------- vectorization

def component_rows(polys: Iterable[NcPolynomial], d: int) -> list[dict]:
    """Sparse coefficient rows (column = word_index) of degree-d polynomials."""
    rows = []
    for f in polys:
        if any(len(w) != d for w in f.terms):
            raise InhomogeneousInput("polynomial %s is not homogeneous of degree %d" % (f, d))
        n = f.gens.n
        rows.append({word_index(w, n): c for w, c in f.terms.items()})
    return rows


def component_matrix(polys: Sequence[NcPolynomial], d: int) -> Matrix:
    polys = list(polys)
    if not polys:
        return Matrix([], QQ, ncols=0)
    n = polys[0].gens.n
    return Matrix.from_sparse(component_rows(polys, d), n ** d, polys[0].field)


class Presentation:
    """T_k V / (relations), all relations homogeneous of degree s."""

    def __init__(self, gens: GeneratorSet, s: int, relations: Sequence[NcPolynomial],
                 field: Field = QQ, check: bool = True):
        self.gens = gens
        self.s = int(s)
        self.field = field
        self.relations = list(relations)
        if self.s < 1:
            raise InputError("relation degree must be positive")
        for r in self.relations:
            if r.gens != gens or r.field != field:
                raise GeneratorMismatch("relation %s uses a different generator set or field" % r)
            if r.is_zero() or any(len(w) != self.s for w in r.terms):
                raise InhomogeneousInput("relation %s is not homogeneous of degree %d" % (r, self.s))
        if check:
            e = Echelon(field)
            for r in component_rows(self.relations, self.s):
                if not e.add(r):
                    raise DependentRelations("relations are linearly dependent")
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return self.gens.n

    def relation_space(self) -> Subspace:
        if "R" not in self._cache:
            self._cache["R"] = Subspace.span(component_rows(self.relations, self.s),
                                             self.n ** self.s, self.field)
        return self._cache["R"]

    def with_order(self, order: Sequence[str]) -> "Presentation":
        gs = GeneratorSet(self.gens.names, order)
        rels = [NcPolynomial._raw(gs, dict(r.terms), self.field) for r in self.relations]
        return Presentation(gs, self.s, rels, self.field, check=False)

    def poly(self, text: str) -> NcPolynomial:
        return parse_poly(text, self.gens, self.field)

    @classmethod
    def from_strings(cls, names: Sequence[str], rels: Sequence[str], field: Field = QQ,
                     order: Sequence[str] | None = None, s: int | None = None) -> "Presentation":
        gens = GeneratorSet(names, order)
        polys = [parse_poly(r, gens, field) for r in rels]
        if s is None:
            if not polys:
                raise InputError("degree must be given when there are no relations")
            s = len(next(iter(polys[0].terms)))
        return cls(gens, s, polys, field)

    def __repr__(self):
        return "Presentation(%s | %s)" % (", ".join(self.gens.names),
                                          ", ".join(map(str, self.relations)))
