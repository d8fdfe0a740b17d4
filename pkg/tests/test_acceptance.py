"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import itertools
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from corpus import CK, CNK, CORPUS, load  # noqa: E402
from helpers import F2521, legal_diag_grid, legal_jordan_grid, random_presentation  # noqa: E402
from shomog.classify import classify_two_relations, construct_condition_algebra, nkoz_coefficient  # noqa: E402
from shomog.duality import s_dual  # noqa: E402
from shomog.freealg import Presentation  # noqa: E402
from shomog.groebner import truncated_groebner  # noqa: E402
from shomog.hilbert import RationalSeries, count_normal_words, expand_rational, ideal_dims_bruteforce  # noqa: E402
from shomog.koszul import extra_condition, extra_condition_series, koszulity_verdict, series_form_data  # noqa: E402
from shomog.linalg import QQ  # noqa: E402
from shomog.potential import (derived_relations, gen_potential_diag, gen_potential_jordan,  # noqa: E402
                              potential_exclusion_check)


SERIES = [
    (([1], [1, -2, 0, 2]), [1, 2, 4, 6, 8, 8, 4, -8]),
    (([1, 0, 0, -1], [1, -2, 0, 1, 1, 0, -1]), [1, 2, 4, 6, 9, 12, 15, 17, 17, 13, 3, -16]),
    (([1], [1, -2, 0, 0, 2]), [1, 2, 4, 8, 14, 24, 40, 64, 100, 152, 224, 320, 440, 576, 704, 768,
                              656, 160, -1088]),
]


def c1():
    got = [expand_rational(RationalSeries(*nd), len(want) - 1) for nd, want in SERIES]
    ok = all(g == want for g, (_, want) in zip(got, SERIES))
    return ok, "last coefficients %s" % [g[g.D] for g in got]


def _mp(s, p):
    rel = " + ".join("%d*%s" % (p ** (s - 1 - i), "*".join(["y1"] * i + ["y2"] + ["y1"] * (s - 1 - i)))
                     for i in range(s))
    return Presentation.from_strings(["y1", "y2"], ["y1^%d" % s, rel])


def c2():
    bad = []
    for s, p in itertools.product((3, 4, 5), (1, 2)):
        gb = truncated_groebner(_mp(s, p), 3 * s)
        got = {gb.presentation.gens.word_str(t) for t in gb.tips}
        if got != {"y1^%d" % s, "y1^%d*y2" % (s - 1)} or not gb.closed:
            bad.append((s, p))
    return not bad, "6 cases, failing %s" % bad


def c3():
    p = Presentation.from_strings(["x1", "y1"], ["y1^4", "y1*x1^3 - x1*y1^2*x1"], order=["y1", "x1"])
    gb = truncated_groebner(p, 11)
    y, x = p.gens.index["y1"], p.gens.index["x1"]
    found = [k for k in (1, 2) if (y,) * 3 + (x, y) * k + (y, x) in gb.tips]
    return found == [1, 2], "tips y1^3(x1y1)^k y1x1 present for k=%s" % found


def _grid():
    g = []
    for cond in (1, 4, 5):
        for s, m in itertools.product((3, 4, 5), (0, 1, 2)):
            g.append((cond, {"s": s, "m": m}))
    for cond, t, m in itertools.product((2, 3), (1, 2), (0, 1, 2)):
        if (2 * t if cond == 2 else 2 * t + 1) >= 3:
            g.append((cond, {"t": t, "m": m}))
    for s, m, p in itertools.product((3, 4, 5), (0, 1, 2), (1, 2, -1)):
        g.append((6, {"s": s, "m": m, "p": p}))
    return g


def c4():
    bad = []
    grid = _grid()
    for cond, params in grid:
        o = classify_two_relations(construct_condition_algebra(cond, params), koszul=False)
        want = {k: (QQ(v) if k == "p" else v) for k, v in params.items()}
        if o.condition != cond or any(o.params.get(k) != v for k, v in want.items()):
            bad.append((cond, params))
    return not bad, "%d grid points, %d mismatches" % (len(grid), len(bad))


def c5():
    bad = []
    for e in CORPUS:
        name, *_, cond, status, extras = e
        v = koszulity_verdict(load(e))
        ok = v.status == status
        if "negative" in extras:
            ok &= (v.evidence.get("negative_degree"), v.evidence.get("negative_coefficient")) == extras["negative"]
        if "kind" in extras:
            ok &= v.evidence.get("kind") == extras["kind"]
        if cond <= 6:
            ok &= v.status == CK
        if not ok:
            bad.append(name)
    return not bad, "%d algebras, mismatches %s" % (len(CORPUS), bad)


def c6():
    bad = []
    for e in CORPUS:
        p = load(e)
        c = nkoz_coefficient(p)
        if c <= 0 or koszulity_verdict(s_dual(p)).status != CNK:
            bad.append((e[0], c))
    return not bad, "%d algebras, failing %s" % (len(CORPUS), bad)


def _oracle_ok(p, D):
    gb = truncated_groebner(p, D)
    top = min(D, gb.complete_to)
    return count_normal_words(gb.tips, p.n, top) == ideal_dims_bruteforce(p, top)


def c7():
    bad = []
    for e in CORPUS:
        p = load(e)
        D = {2: 9, 3: 7, 4: 6}[p.n] if p.s == 3 else {2: 10, 3: 7, 4: 6}[p.n]
        if not _oracle_ok(p, D):
            bad.append(e[0])
    for seed in range(200):
        p = random_presentation(seed)
        if not _oracle_ok(p, 8 if p.n == 2 else 6):
            bad.append("seed%d" % seed)
    return not bad, "%d corpus + 200 random, failing %s" % (len(CORPUS), bad)


def _pot_ok(pot, jordan):
    if not (pot.is_fixed() and derived_relations(pot.w).dim == 2 and potential_exclusion_check(pot.w)):
        return False
    o = classify_two_relations(pot.algebra(), koszul=False)
    if o.condition != 8:
        return False
    if jordan:
        return o.params["kind"] == "jordan" and o.params["lambda"] == pot.sigma[0, 0]
    return sorted(map(int, o.params["eigenvalues"])) == sorted([int(pot.sigma[0, 0]), int(pot.sigma[1, 1])])


def c8():
    n, bad = 0, []
    for s in (3, 4, 5):
        for l1, l2 in legal_diag_grid(s):
            n += 1
            if not _pot_ok(gen_potential_diag(F2521(l1), F2521(l2), s, F2521), False):
                bad.append(("diag", s, l1, l2))
    for s in (3, 4, 5, 6, 7):
        for v in legal_jordan_grid(s):
            n += 1
            if not _pot_ok(gen_potential_jordan(F2521(v), s, F2521), True):
                bad.append(("jordan", s, v))
    return not bad, "%d potentials over F_2521, failing %s" % (n, bad[:5])


def c9():
    bad = []
    for e in CORPUS:
        p = load(e)
        m, l = series_form_data(p)
        if extra_condition(p.n, p.relation_space(), p.s) != extra_condition_series(m, l, p.s):
            bad.append(e[0])
    return not bad, "%d algebras, disagreeing %s" % (len(CORPUS), bad)


CRITERIA = [
    (1, "series reproduction", c1, 1),
    (2, "Groebner tips of the two-tip family", c2, 1),
    (3, "infinite Groebner family tips", c3, 5),
    (4, "classification round trip", c4, 60),
    (5, "Koszulity verdicts on the corpus", c5, 120),
    (6, "non-Koszulity coefficient and duals", c6, 60),
    (7, "normal-word count vs brute force", c7, 120),
    (8, "potential suite", c8, 30),
    (9, "extra condition: tensor vs series form", c9, 60),
]


def evaluate(num, title, fn, budget):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    ok = ok and dt < budget
    line = "%s criterion %d (%s): %s [%.2fs / %ds]" % ("PASS" if ok else "FAIL", num, title, detail, dt, budget)
    return ok, line


@pytest.mark.parametrize("num,title,fn,budget", CRITERIA, ids=["criterion%d" % c[0] for c in CRITERIA])
def test_criterion(num, title, fn, budget, capsys):
    ok, line = evaluate(num, title, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
