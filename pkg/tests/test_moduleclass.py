import pytest

from corpus import CORPUS, load, by_name
from shomog.duality import dual_gb, veronese_bimodule, veronese_ring
from shomog.freealg import Presentation
from shomog.linalg import QQ
from shomog.moduleclass import BIMODULE_TAGS, decompose_one_sided, match_bimodule
from shomog.quadclass import classify_quadratic


def pipeline(p):
    g = dual_gb(p, 2 * p.s + 2)
    c = classify_quadratic(veronese_ring(g, p.s))
    b = veronese_bimodule(g, p.s)
    return c, b, b.transformed(c.witness)


def test_right_decompositions_of_shifted_radicals():
    _, _, bt = pipeline(load(by_name("mp2")))
    assert decompose_one_sided(bt, "right").label() == "B2(1:0)"
    _, _, bt = pipeline(load(by_name("fermat3")))
    assert decompose_one_sided(bt, "right").label() == "B1(0:1) + B1(1:0)"
    p = Presentation.from_strings(["x1", "y1"], ["y1^3", "x1*y1*x1"], order=["y1", "x1"])
    c, _, bt = pipeline(p)
    assert c.tag == "A1"
    assert decompose_one_sided(bt, "right").label() == "B1(1:0) + Z1"


def test_match_examples():
    c, b, _ = pipeline(load(by_name("mp2")))
    m = match_bimodule(b, c)
    assert (m.tag, m.m, m.params["p"], m.params["q"]) == ("M(p)", 0, 2, 8)
    p = Presentation.from_strings(["x1", "y1"], ["y1^3", "x1*y1*x1"], order=["y1", "x1"])
    c, b, _ = pipeline(p)
    m = match_bimodule(b, c)
    assert (m.tag, m.m) == ("A1_mod_x_plus_triv", 1)


SHAPES = {
    # right module shape without the trivial Z1 part, by Veronese class
    "A4": {"B1(0:1) + B1(1:0)"}, "A5": {"B1(0:1) + B1(1:0)"},
    "A6": {"B1(1:0) + B1(1:0)"}, "A7": {"W1", "B2(1:0)"},
    "A1": {"B1(1:0)"}, "A0": {"0", "B1(1:0)", "B1(0:1)", "B2(1:0)", "Z2", "B1(0:1) + B1(1:0)"},
}


def _strip(label):
    parts = [x for x in label.split(" + ") if not x.startswith("Z1")]
    return " + ".join(parts) or "0"


@pytest.mark.parametrize("entry", CORPUS, ids=[e[0] for e in CORPUS])
def test_corpus_decompositions(entry):
    p = load(entry)
    c, b, bt = pipeline(p)
    right = decompose_one_sided(bt, "right")
    left = decompose_one_sided(bt, "left")
    assert right.dims == (b.dim_M0, b.dim_M1)
    assert left.dims == (b.dim_M0, b.dim_M1)
    assert _strip(right.label()) in SHAPES[c.tag]
    for t in right.summands:
        if t[0] == "B" and t[1] == 2:
            assert ("B", 2, t[2]) in left.summands
        if t[:2] == ("Z", 2):
            assert left.count("Z", 2) == 1
    assert match_bimodule(b, c).tag in BIMODULE_TAGS
