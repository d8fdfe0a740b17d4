import pytest
from hypothesis import given, settings, strategies as st

from helpers import F2521, legal_diag_grid, legal_jordan_grid
from shomog.classify import classify_two_relations
from shomog.errors import InputError
from shomog.freealg import GeneratorSet, NcPolynomial, parse_poly
from shomog.hilbert import ideal_dims_bruteforce, series_inverse, series_sub, Series
from shomog.linalg import GF, QQ, Matrix
from shomog.potential import (ConditionNotMet, DegreeMismatch, build_potential_algebra,
                              derived_relations, free_algebra, free_product, gen_potential_diag,
                              gen_potential_jordan, is_twisted_potential, jordan_matrix, left_slices,
                              phi_sigma, potential_exclusion_check)
from corpus import by_name, load

Y = GeneratorSet(["y1", "y2"])


def P(text, F=QQ):
    return parse_poly(text, Y, F)


def test_phi_moves_last_letter_to_front():
    sig = Matrix([[2, 0], [0, 3]], QQ)
    assert phi_sigma(P("y1*y1*y2"), sig) == P("3*y2*y1*y1")
    swap = Matrix([[0, 1], [1, 0]], QQ)
    assert phi_sigma(P("y1*y2*y2"), swap) == P("y1*y1*y2")


def test_cyclic_sum_is_untwisted_potential():
    w = P("y1*y1*y2 + y1*y2*y1 + y2*y1*y1")
    assert is_twisted_potential(w, Matrix.identity(2, QQ))
    assert not is_twisted_potential(P("y1*y1*y2"), Matrix.identity(2, QQ))


def test_commutator_potential():
    # y1 y2 - y2 y1 is fixed by -1, giving the polynomial ring relations
    w = P("y1*y2 - y2*y1")
    assert is_twisted_potential(w, Matrix([[-1, 0], [0, -1]], QQ))
    assert [str(f) for f in left_slices(w)] == [str(P("y2")), str(P("-y1"))]


def test_sigma_shape_checked():
    with pytest.raises(InputError):
        phi_sigma(P("y1*y2"), Matrix.identity(3, QQ))


def test_derived_relations_and_algebra():
    pot = gen_potential_diag(F2521(2), F2521(2) ** -1, 3, F2521)
    assert derived_relations(pot.w).dim == 2
    alg = build_potential_algebra(pot.w)
    assert alg.s == 3 and len(alg.relations) == 2
    assert alg.relation_space() == load(by_name("potential_diag")).relation_space()


def test_exclusion_rejects_alternating_strings():
    # w = (y1 y2)^2 + (y2 y1)^2: slices are y2 y1 y2 and y1 y2 y1
    w = P("y1*y2*y1*y2 + y2*y1*y2*y1")
    assert derived_relations(w).dim == 2
    assert not potential_exclusion_check(w)


def test_exclusion_rejects_small_relation_space():
    assert not potential_exclusion_check(P("y1*y1*y1*y1"))


def test_exclusion_rejects_fermat_type():
    # slices y1^3, y2^3 are u^s strings
    w = P("y1^4 + y2^4")
    assert is_twisted_potential(w, Matrix.identity(2, QQ))
    assert derived_relations(w).dim == 2
    assert not potential_exclusion_check(w)


@pytest.mark.parametrize("s", [3, 4, 5])
def test_diag_grid(s):
    grid = legal_diag_grid(s)
    assert len(grid) > 50
    for l1, l2 in grid:
        pot = gen_potential_diag(F2521(l1), F2521(l2), s, F2521)
        assert pot.is_fixed()
        assert derived_relations(pot.w).dim == 2
        assert potential_exclusion_check(pot.w)


@pytest.mark.parametrize("s", [3, 4, 5, 6, 7])
def test_jordan_grid(s):
    lams = legal_jordan_grid(s)
    assert lams
    for v in lams:
        pot = gen_potential_jordan(F2521(v), s, F2521)
        assert pot.sigma == jordan_matrix(v, F2521)
        assert derived_relations(pot.w).dim == 2
        assert potential_exclusion_check(pot.w)


def test_jordan_s3_lambda_set():
    assert sorted(legal_jordan_grid(3)) == [1, 2520]


def test_jordan_lambda_i_family():
    i = next(F2521(v) for v in range(2, 2521) if F2521(v) ** 2 == -1)
    for s in (7, 11, 15):
        assert gen_potential_jordan(i, s, F2521).is_fixed()


@pytest.mark.parametrize("s", [4, 5, 6, 7, 8])
def test_jordan_char2(s):
    F = GF(2)
    pot = gen_potential_jordan(F(1), s, F)
    assert pot.case == "jordan(char 2)" and pot.is_fixed()
    assert derived_relations(pot.w).dim == 2 and potential_exclusion_check(pot.w)


def test_jordan_over_rationals():
    for s in (3, 5, 7):
        assert gen_potential_jordan(-1, s, QQ).is_fixed()
    assert gen_potential_jordan(1, 4, QQ).is_fixed()


@pytest.mark.parametrize("args", [
    (F2521(5), F2521(7), 3),        # no condition holds
    (F2521(0), F2521(1), 3),
    (F2521(1), F2521(1), 2),
])
def test_diag_illegal(args):
    with pytest.raises(ConditionNotMet):
        gen_potential_diag(*args, F2521)


def test_jordan_illegal():
    i = next(F2521(v) for v in range(2, 2521) if F2521(v) ** 2 == -1)
    with pytest.raises(ConditionNotMet):
        gen_potential_jordan(i, 3, F2521)
    with pytest.raises(ConditionNotMet):
        gen_potential_jordan(F2521(2), 4, F2521)


def test_diag_case_b_and_c():
    z8 = next(F2521(v) for v in range(2, 2521)
              if F2521(v) ** 8 == 1 and F2521(v) ** 4 != 1)
    assert gen_potential_diag(z8 ** 5, z8, 3, F2521).case == "b"
    z3 = next(F2521(v) for v in range(2, 2521) if F2521(v) ** 3 == 1)
    assert gen_potential_diag(1, z3, 3, F2521).case in ("a(k=2)", "c")


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.data())
def test_rotation_power_is_sigma_tensor(s, data):
    """phi^N acts as sigma applied to every tensor factor."""
    grid = legal_diag_grid(s)
    l1, l2 = data.draw(st.sampled_from(grid))
    pot = gen_potential_diag(F2521(l1), F2521(l2), s, F2521)
    gens = pot.w.gens
    word = tuple(data.draw(st.lists(st.integers(0, 1), min_size=s + 1, max_size=s + 1)))
    u = NcPolynomial(gens, {word: 1}, F2521)
    v = u
    for _ in range(s + 1):
        v = phi_sigma(v, pot.sigma)
    lam = [F2521(l1), F2521(l2)]
    c = F2521.one
    for a in word:
        c *= lam[a]
    assert v == u.scale(c)


def _hilb(p, D):
    return ideal_dims_bruteforce(p, D)


def test_free_product_series():
    a = load(by_name("fermat3"))
    b = free_algebra(["x1"], 3)
    fp = free_product(a, b)
    assert fp.n == 3 and len(fp.relations) == 2
    D = 7
    h, h1, h2 = _hilb(fp, D), _hilb(a, D), _hilb(b, D)
    # 1/H = 1/H1 + 1/H2 - 1
    one = Series([1] + [0] * D)
    assert series_inverse(h) == series_sub(series_inverse(h1), series_sub(one, series_inverse(h2)))


def test_free_product_renames_and_checks_degree():
    a = load(by_name("fermat3"))
    fp = free_product(a, a)
    assert list(fp.gens.names) == ["y1", "y2", "y1_b", "y2_b"]
    with pytest.raises(DegreeMismatch):
        free_product(a, load(by_name("fermat4")))
    with pytest.raises(InputError):
        free_product(a, free_algebra(["x"], 3, GF(7)))


def test_generated_potentials_classify_to_condition_8():
    for s in (3, 4):
        for l1, l2 in legal_diag_grid(s)[:40]:
            o = classify_two_relations(gen_potential_diag(F2521(l1), F2521(l2), s, F2521).algebra(),
                                       koszul=False)
            assert o.condition == 8
            assert sorted(int(x) for x in o.params["eigenvalues"]) == sorted([l1, l2])
    for v in legal_jordan_grid(5):
        o = classify_two_relations(gen_potential_jordan(F2521(v), 5, F2521).algebra(), koszul=False)
        assert o.condition == 8 and o.params["kind"] == "jordan" and o.params["lambda"] == F2521(v)
