from fractions import Fraction
from itertools import combinations
import random

import pytest
from hypothesis import given, settings, strategies as st

from shomog.linalg import (GF, QQ, AmbientMismatch, Matrix, Subspace, binary_form_roots, contains,
                           intersect, kernel, rref, span_sum)

F = GF(32003)


def test_rref_identity_and_proportional_rows():
    I = Matrix.identity(2)
    assert rref(I) == (I, 2)
    R, r = rref(Matrix([[1, 2], [2, 4]]))
    assert r == 1
    assert R == Matrix([[1, 2], [0, 0]])


def _rank_by_minors(M):
    for k in range(min(M.nrows, M.ncols), 0, -1):
        for rows in combinations(range(M.nrows), k):
            for cols in combinations(range(M.ncols), k):
                sub = Matrix([[M[i, j] for j in cols] for i in rows], M.field)
                if sub.det():
                    return k
    return 0


@pytest.mark.parametrize("seed", range(5))
def test_rank_matches_minor_enumeration(seed):
    rng = random.Random(seed)
    # low-rank products so the minor search is not trivially full rank
    r = rng.randint(1, 5)
    A = Matrix([[rng.randrange(32003) for _ in range(r)] for _ in range(5)], F)
    B = Matrix([[rng.randrange(32003) for _ in range(7)] for _ in range(r)], F)
    M = A @ B
    assert rref(M)[1] == _rank_by_minors(M)


def test_kernel_examples():
    assert kernel(Matrix.identity(3)).dim == 0
    assert kernel(Matrix.zeros(3, 3)).dim == 3
    K = kernel(Matrix([[1, 1, 0]]))
    assert K.dim == 2
    assert [1, -1, 0] in K


def test_subspace_basics():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3, QQ)
    assert intersect(a, a) == a
    assert span_sum(a, Subspace.zero(3, QQ)) == a
    assert contains(Subspace.full(3, QQ), [5, -1, 7])
    l1 = Subspace.span([[1, 0]], 2, QQ)
    l2 = Subspace.span([[1, 1]], 2, QQ)
    assert intersect(l1, l2).dim == 0
    assert span_sum(l1, l2).dim == 2
    with pytest.raises(AmbientMismatch):
        intersect(l1, a)


small = st.integers(min_value=-3, max_value=3)


@st.composite
def subspace_pair(draw):
    n = draw(st.integers(2, 6))
    vecs = st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=n)
    return (Subspace.span(draw(vecs), n, QQ), Subspace.span(draw(vecs), n, QQ))


@settings(max_examples=60, deadline=None)
@given(subspace_pair())
def test_grassmann_identity(pair):
    a, b = pair
    assert a.dim + b.dim == intersect(a, b).dim + span_sum(a, b).dim


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rref_idempotent(rows):
    R, r = rref(Matrix(rows, QQ))
    assert rref(R) == (R, r)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_over_q_and_large_prime_agree(rows):
    # entries are tiny, so no pivot denominator can vanish mod 32003
    assert rref(Matrix(rows, QQ))[1] == rref(Matrix(rows, F))[1]


def test_binary_form_roots():
    # a^2 - b^2 = (a - b)(a + b)
    assert binary_form_roots(1, 0, -1, QQ) == sorted(binary_form_roots(1, 0, -1, QQ))
    pts = binary_form_roots(1, 0, -1, QQ)
    assert len(pts) == 2
    assert binary_form_roots(1, 0, -2, QQ) is None
    assert binary_form_roots(1, 0, -2, GF(7)) is not None  # 3^2 = 2 mod 7
    dbl = binary_form_roots(1, 2, 1, QQ)
    assert len(dbl) == 2 and dbl[0] == dbl[1]


def test_field_arithmetic_is_exact():
    assert QQ(Fraction(1, 3)) * 3 == 1
    assert F(2) / F(3) * F(3) == F(2)
    with pytest.raises(Exception):
        GF(10)
