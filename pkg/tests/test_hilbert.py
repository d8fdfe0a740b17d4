from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from sympy import Matrix as SMatrix, symbols

from shomog.duality import dual_gb
from shomog.freealg import Presentation
from shomog.hilbert import (NonUnitConstantTerm, RationalSeries, Series, WordAutomaton,
                            ZeroConstantTerm, count_normal_words, expand_rational, ideal_dims_bruteforce,
                            koszul_series_identity, series_inverse, series_mul)


def test_three_expansions():
    assert expand_rational(RationalSeries([1], [1, -2, 0, 2]), 7) == [1, 2, 4, 6, 8, 8, 4, -8]
    assert expand_rational(RationalSeries([1, 0, 0, -1], [1, -2, 0, 1, 1, 0, -1]), 11) == \
        [1, 2, 4, 6, 9, 12, 15, 17, 17, 13, 3, -16]
    assert expand_rational(RationalSeries([1], [1, -2, 0, 0, 2]), 18) == \
        [1, 2, 4, 8, 14, 24, 40, 64, 100, 152, 224, 320, 440, 576, 704, 768, 656, 160, -1088]


def test_zero_constant_term():
    with pytest.raises(ZeroConstantTerm):
        RationalSeries([1], [0, 1])
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(Series([2, 1]))


def test_normal_word_counts():
    assert count_normal_words([], 3, 4) == [1, 3, 9, 27, 81]
    assert count_normal_words([(0, 1), (1, 0)], 2, 5) == [1, 2, 2, 2, 2, 2]
    # words over {x1, y1} avoiding y1 y1
    fib = count_normal_words([(1, 1)], 2, 6)
    brute = [sum(1 for w in product(range(2), repeat=d)
                 if all(not (w[i] == w[i + 1] == 1) for i in range(d - 1))) for d in range(7)]
    assert fib == brute == [1, 2, 3, 5, 8, 13, 21]


def test_bruteforce_examples():
    assert ideal_dims_bruteforce(Presentation.from_strings(["x", "y"], [], s=2), 4) == [1, 2, 4, 8, 16]
    p = Presentation.from_strings(["y1", "y2"], ["y1^3", "y2^3"])
    assert ideal_dims_bruteforce(p, 4)[4] == 10


def test_series_identity():
    hA = Series([1] + [2] * 12)
    hM = Series([2] * 13)
    hL = count_normal_words([(0, 0, 0), (1, 1, 1)], 2, 12)
    assert koszul_series_identity(hA, hM, hL, 3)
    # zero algebra beyond degree 0
    assert koszul_series_identity(Series([1, 0, 0]), Series([0, 0, 0]), Series([1, 0, 0]), 4)
    assert series_mul(Series([1] * 13), Series([1, -1] + [0] * 11)) == [1] + [0] * 12


def test_series_identity_fails_for_square_border():
    p = Presentation.from_strings(["x1", "x2", "y1"], ["y1*x1*x2", "x1*x2*y1"])
    g = dual_gb(p, 12)
    c = WordAutomaton(g.tips, 3).counts(12)
    hA, hM = Series(c[0::3][:4]), Series(c[1::3][:4])
    hL = ideal_dims_bruteforce(p, 7)
    assert not koszul_series_identity(hA, hM, hL, 3)


coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


@settings(max_examples=80, deadline=None)
@given(coeffs, coeffs, st.integers(0, 15))
def test_expansion_times_denominator(num, den, D):
    den = [1] + den
    s = expand_rational(RationalSeries(num, den), D)
    back = series_mul(s, Series((den + [0] * (D + 1))[:D + 1]))
    assert back == (num + [0] * (D + 1))[:D + 1]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=1, max_size=4).map(tuple), max_size=3))
def test_automaton_counts_are_linear_recurrent(tip_list):
    A = WordAutomaton(tip_list, 2)
    k = A.size
    D = 2 * k + 6
    c = A.counts(D)
    brute = [sum(1 for w in product(range(2), repeat=d)
                 if not any(any(w[i:i + len(t)] == t for i in range(d - len(t) + 1)) for t in tip_list))
             for d in range(min(D, 10) + 1)]
    assert list(c[:len(brute)]) == brute
    if k == 0:
        return
    T = SMatrix(k, k, lambda i, j: sum(1 for t in A.trans[j] if t == i))
    lam = symbols("lam")
    a = T.charpoly(lam).all_coeffs()[::-1]  # a_0 + a_1 lam + ... + lam^k
    for d in range(1, D - k + 1):
        assert sum(a[i] * c[d + i] for i in range(k + 1)) == 0
