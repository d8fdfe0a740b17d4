"""Hilbert series: normal-word counting, rational expansion, series arithmetic.

The counting automaton is the Aho-Corasick machine of the tip words with
every state that has matched a tip removed; the number of degree-d
normal words is the number of length-d paths from the root.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MathError, SizeGuardExceeded
from .freealg import Presentation, word_index
from .linalg import Echelon

__all__ = [
    "Series", "RationalSeries", "WordAutomaton", "count_normal_words", "expand_rational",
    "series_mul", "series_inverse", "series_sub", "series_shift", "substitute_power",
    "ideal_dims_bruteforce", "koszul_series_identity", "ZeroConstantTerm",
    "NonUnitConstantTerm", "TruncationMismatch", "BRUTEFORCE_GUARD",
]

BRUTEFORCE_GUARD = 2_000_000


class ZeroConstantTerm(MathError):
    code = "zero_constant_term"


class NonUnitConstantTerm(MathError):
    code = "non_unit_constant_term"


class TruncationMismatch(MathError):
    code = "truncation_mismatch"


class Series:
    """Power series c_0 + c_1 t + ... + c_D t^D (exact coefficients)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = []
        for c in coeffs:
            c = Fraction(c)
            cs.append(int(c) if c.denominator == 1 else c)
        if not cs:
            raise ValueError("a series needs at least the constant term")
        self.coeffs = tuple(cs)

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return list(self.coeffs) == list(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, D: int) -> "Series":
        if D > self.D:
            raise TruncationMismatch("cannot extend a series of precision %d to %d" % (self.D, D))
        return Series(self.coeffs[:D + 1])

    def to_json(self) -> list:
        return [c if isinstance(c, int) else str(c) for c in self.coeffs]

    def first_negative(self):
        """(degree, coefficient) of the first negative coefficient, or None."""
        for d, c in enumerate(self.coeffs):
            if c < 0:
                return d, c
        return None

    def __repr__(self):
        return "Series(%s)" % list(self.coeffs)


class RationalSeries:
    def __init__(self, num: Sequence[int], den: Sequence[int]):
        self.num = [int(c) for c in num] or [0]
        self.den = [int(c) for c in den]
        if not self.den or self.den[0] == 0:
            raise ZeroConstantTerm("denominator constant term vanishes")

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    def __repr__(self):
        return "RationalSeries(num=%s, den=%s)" % (self.num, self.den)


def expand_rational(r: RationalSeries, D: int) -> Series:
    """Exact long division num/den to degree D."""
    den = [Fraction(c) for c in r.den]
    if not den or den[0] == 0:
        raise ZeroConstantTerm("denominator constant term vanishes")
    num = [Fraction(c) for c in r.num]
    out = []
    inv0 = 1 / den[0]
    for d in range(D + 1):
        acc = num[d] if d < len(num) else Fraction(0)
        for k in range(1, min(d, len(den) - 1) + 1):
            acc -= den[k] * out[d - k]
        out.append(acc * inv0)
    return Series(out)


def _common(a: Series, b: Series) -> int:
    return min(a.D, b.D)


def series_mul(a: Series, b: Series) -> Series:
    D = _common(a, b)
    return Series(sum(a[i] * b[d - i] for i in range(d + 1)) for d in range(D + 1))


def series_sub(a: Series, b: Series) -> Series:
    D = _common(a, b)
    return Series(a[d] - b[d] for d in range(D + 1))


def series_inverse(a: Series) -> Series:
    if a[0] not in (1, -1):
        raise NonUnitConstantTerm("constant term %s is not a unit" % (a[0],))
    return expand_rational(RationalSeries([1], list(a.coeffs)), a.D)


def series_shift(a: Series, k: int, D: int) -> Series:
    """t^k * a, truncated at D."""
    cs = [0] * (D + 1)
    for i, c in enumerate(a.coeffs):
        if i + k <= D:
            cs[i + k] = c
    return Series(cs)


def substitute_power(a: Series, s: int, D: int) -> Series:
    """a(t^s) truncated at D; requires a to be known to degree floor(D/s)."""
    if D // s > a.D:
        raise TruncationMismatch("need %d coefficients, have %d" % (D // s + 1, len(a)))
    cs = [0] * (D + 1)
    for i in range(D // s + 1):
        cs[i * s] = a[i]
    return Series(cs)


# ---------------------------------------------------------------- automaton

class WordAutomaton:
    """Aho-Corasick automaton over tip words restricted to tip-free states."""

    def __init__(self, tips: Iterable, n_gens: int):
        self.n = n_gens
        goto = [dict()]
        dead = [False]
        for t in tips:
            s = 0
            for a in t:
                nxt = goto[s].get(a)
                if nxt is None:
                    goto.append(dict())
                    dead.append(False)
                    nxt = len(goto) - 1
                    goto[s][a] = nxt
                s = nxt
            dead[s] = True
        fail = [0] * len(goto)
        delta = [[0] * n_gens for _ in goto]
        order = []
        q = deque([0])
        while q:
            s = q.popleft()
            order.append(s)
            for a in range(n_gens):
                nxt = goto[s].get(a)
                if nxt is not None:
                    fail[nxt] = 0 if s == 0 else delta[fail[s]][a]
                    dead[nxt] = dead[nxt] or dead[fail[nxt]]
                    delta[s][a] = nxt
                    q.append(nxt)
                else:
                    delta[s][a] = 0 if s == 0 else delta[fail[s]][a]
        alive = [s for s in order if not dead[s]]
        if dead[0]:
            alive = []
        idx = {s: i for i, s in enumerate(alive)}
        # transitions among live states; -1 = absorbed (contains a tip)
        self.trans = [[idx.get(delta[s][a], -1) for a in range(n_gens)] for s in alive]
        self.start = 0 if alive else -1

    @property
    def size(self) -> int:
        return len(self.trans)

    def counts(self, D: int) -> list[int]:
        if self.start < 0:
            return [0] * (D + 1)
        vec = [0] * self.size
        vec[self.start] = 1
        out = [1]
        for _ in range(D):
            nv = [0] * self.size
            for s, c in enumerate(vec):
                if c:
                    for t in self.trans[s]:
                        if t >= 0:
                            nv[t] += c
            vec = nv
            out.append(sum(vec))
        return out[:D + 1]

    def minimal_size(self) -> int:
        """State count of the minimal DFA (Moore refinement); all live states accept."""
        if self.start < 0:
            return 0
        part = [0] * self.size
        nblocks = 1
        while True:
            sig = {}
            new = []
            for s in range(self.size):
                k = (part[s],) + tuple(-1 if t < 0 else part[t] for t in self.trans[s])
                new.append(sig.setdefault(k, len(sig)))
            if len(sig) == nblocks:
                return nblocks
            part, nblocks = new, len(sig)


def count_normal_words(tips: Iterable, n_gens: int, D: int) -> Series:
    return Series(WordAutomaton(tips, n_gens).counts(D))


# ---------------------------------------------------------------- oracle

def ideal_dims_bruteforce(p: Presentation, D: int, guard: int = BRUTEFORCE_GUARD) -> Series:
    """dim Lambda_d = n^d - rank span{u r v}, by plain linear algebra per degree."""
    n, s, field = p.n, p.s, p.field
    if n ** D > guard:
        raise SizeGuardExceeded("n^D = %d exceeds the brute-force guard %d" % (n ** D, guard))
    raw = field.raw
    rels = [[(w, raw(c)) for w, c in r.terms.items()] for r in p.relations]
    out = []
    for d in range(D + 1):
        if d < s or not rels:
            out.append(n ** d)
            continue
        e = Echelon(field)
        for i in range(d - s + 1):
            j = d - s - i
            for ui in range(n ** i):
                for vi in range(n ** j):
                    for r in rels:
                        row = {}
                        base = ui * n ** (s + j)
                        for w, c in r:
                            row[base + word_index(w, n) * n ** j + vi] = c
                        e.add_raw(row)
        out.append(n ** d - e.rank)
    return Series(out)


def koszul_series_identity(hA: Series, hM: Series, hL: Series, s: int) -> bool:
    """(hA(t^s) - t hM(t^s)) hL(t) == 1 + O(t^{D+1}) with D = hL's precision."""
    D = hL.D
    if D // s > hA.D or (D - 1) // s > hM.D:
        raise TruncationMismatch("hA/hM too short for precision %d with s=%d" % (D, s))
    P = [0] * (D + 1)
    for i in range(D // s + 1):
        P[i * s] += hA[i]
    for i in range((D - 1) // s + 1):
        if i * s + 1 <= D:
            P[i * s + 1] -= hM[i]
    prod = series_mul(Series(P), hL)
    return list(prod.coeffs) == [1] + [0] * D
