"""Two-relation pipeline: condition number, parameters, Koszulity verdict."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .duality import dual_gb, tensor_power_degree1, veronese_bimodule, veronese_ring
from .errors import MathError
from .freealg import GeneratorSet, Presentation
from .koszul import KoszulVerdict, koszulity_verdict
from .linalg import QQ, Field
from .moduleclass import BimoduleClass, UnexpectedShape, match_bimodule
from .potential import (ConditionNotMet, _poly, diag_case, free_algebra, free_product,
                        gen_potential_diag, gen_potential_jordan)
from .quadclass import QuadraticClass, classify_quadratic

__all__ = ["ClassificationOutcome", "classify_two_relations", "construct_condition_algebra",
           "nkoz_coefficient", "IllegalParams", "condition_of", "diag_case_letter"]


class IllegalParams(MathError):
    code = "illegal_params"


@dataclass
class ClassificationOutcome:
    condition: int
    a_class: QuadraticClass
    bimodule: BimoduleClass
    params: dict
    koszul: KoszulVerdict | None = None
    field: Field = dc_field(default=QQ, repr=False)

    def to_json(self) -> dict:
        F = self.field

        def enc(v):
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, (bool, str)) or v is None:
                return v
            if isinstance(v, int) and not hasattr(v, "v"):
                return v
            return F.to_json(v)
        return {
            "condition": self.condition,
            "a_class": self.a_class.name,
            "params": enc(self.params),
            "koszul": None if self.koszul is None else enc(self.koszul.to_json()),
        }


def diag_case_letter(e1, e2, s: int, F: Field) -> str | None:
    """Case letter of a diagonal twist with eigenvalues {e1, e2}, or None."""
    for a, b in ((e1, e2), (e2, e1)):
        c = diag_case(a, b, s, F)
        if c is not None and c[0] in ("a", "b"):
            return c[0]
    for a, b in ((e1, e2), (e2, e1)):
        if a == F.one and b ** s == F.one and all(b ** k != F.one for k in range(1, s)):
            return "c"
    return None


def condition_of(a_class: QuadraticClass, b: BimoduleClass) -> int:
    table = {
        ("A4", "JA1_plus_triv"): 1,
        ("A4", "JA1_sigma_twist"): 2,
        ("A5", "JA1_plus_triv"): 3,
        ("A6", "JA1_plus_triv"): 4,
        ("A7", "JA1_plus_triv"): 5,
        ("A7", "M(p)"): 6,
        ("A1", "A1_mod_x_plus_triv"): 7,
        ("A0", "TwistedD"): 8,
        ("A0", "B1_plus_triv"): 9,
        ("A0", "B2_plus_triv"): 10,
        ("A0", "Trivial_only"): 11,
    }
    key = (a_class.tag, b.tag)
    if key not in table:
        raise UnexpectedShape("pair (%s, %s) is not on the list" % (a_class.name, b.tag))
    return table[key]


def classify_two_relations(p: Presentation, D: int | None = None,
                           koszul: bool = True) -> ClassificationOutcome:
    s = p.s
    if len(p.relations) != 2:
        raise MathError("expected exactly two relations, got %d" % len(p.relations))
    if s < 3:
        raise MathError("relation degree must be at least 3")
    g = dual_gb(p, 2 * s + 2)
    a_class = classify_quadratic(veronese_ring(g, s))
    bim = match_bimodule(veronese_bimodule(g, s), a_class)
    cond = condition_of(a_class, bim)
    params: dict = {"m": bim.m, "s": s}
    if cond in (2, 3):
        params["t"] = s // 2
    elif cond == 6:
        params["p"] = bim.params["p"]
        params["q"] = bim.params["q"]
    elif cond in (7, 11):
        params["n"] = p.n
    elif cond == 8:
        nu = bim.params
        params["kind"] = nu["kind"]
        params["eigenvalues"] = list(nu["eigenvalues"])
        if nu["kind"] == "jordan":
            params["case"] = "d"
            params["lambda"] = nu["lambda"]
        else:
            e1, e2 = nu["eigenvalues"]
            params["case"] = diag_case_letter(e1, e2, s, p.field)
        params["nu"] = nu["nu"]
    verdict = koszulity_verdict(p, D) if koszul else None
    return ClassificationOutcome(cond, a_class, bim, params, verdict, p.field)


# ---------------------------------------------------------------- constructions

def _need(params: dict, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise IllegalParams("missing parameters: %s" % ", ".join(missing))
    return [params[k] for k in keys]


def _gens(m: int, extra) -> GeneratorSet:
    names = list(extra) + ["x%d" % (i + 1) for i in range(m)]
    return GeneratorSet(names)


def _alg(m: int, s: int, F: Field, term_lists, extra=("y1", "y2")) -> Presentation:
    gens = _gens(m, extra)
    return Presentation(gens, s, [_poly(gens, F, terms) for terms in term_lists], F)


def _y(k, name="y1"):
    return "%s^%d" % (name, k) if k > 0 else ""


def construct_condition_algebra(condition: int, params: dict, field: Field = QQ) -> Presentation:
    """Canonical algebra for Conditions 1-8 (generators y1, y2 first, then x1..xm)."""
    F = field
    one = F.one
    m = int(params.get("m", 0))
    if m < 0:
        raise IllegalParams("m must be nonnegative")
    if condition in (2, 3):
        (t,) = _need(params, "t")
        t = int(t)
        s = 2 * t if condition == 2 else 2 * t + 1
        if t < 1 or s < 3:
            raise IllegalParams("t = %d gives s = %d < 3" % (t, s))
        if "s" in params and int(params["s"]) != s:
            raise IllegalParams("s = %s does not match t = %d" % (params["s"], t))
        if condition == 2:
            rels = [[(one, "y1 y2 " * t)], [(one, "y2 y1 " * t)]]
        else:
            rels = [[(one, "y1 y2 " * t + "y1")], [(one, "y2 y1 " * t + "y2")]]
        return _alg(m, s, F, rels)
    (s,) = _need(params, "s")
    s = int(s)
    if s < 3:
        raise IllegalParams("s must be at least 3")
    if condition == 1:
        return _alg(m, s, F, [[(one, _y(s))], [(one, _y(s, "y2"))]])
    if condition == 4:
        return _alg(m, s, F, [[(one, _y(s))], [(one, "y2 " + _y(s - 1))]])
    if condition == 5:
        return _alg(m, s, F, [[(one, _y(s))], [(one, _y(s - 1) + " y2")]])
    if condition == 6:
        (p,) = _need(params, "p")
        p = F(p)
        if not p:
            raise IllegalParams("p must be nonzero")
        if "q" in params and F(params["q"]) != p ** s:
            raise IllegalParams("q must equal p^s")
        f = [(p ** (s - 1 - i), "%s y2 %s" % (_y(i), _y(s - 1 - i))) for i in range(s)]
        return _alg(m, s, F, [[(one, _y(s))], f])
    if condition == 7:
        if m < 1:
            raise IllegalParams("condition 7 needs m >= 1")
        if m >= 2:
            f = [(one, "x1 %s x2" % _y(s - 2))]
        else:
            f = [(one, "y1 " + _y(s - 1, "x1")), (-one, "x1 %s x1" % _y(s - 2))]
        return _alg(m, s, F, [[(one, _y(s))], f], extra=("y1",))
    if condition == 8:
        try:
            if "lambda" in params:
                pot = gen_potential_jordan(params["lambda"], s, F)
            else:
                l1, l2 = _need(params, "lambda1", "lambda2")
                pot = gen_potential_diag(l1, l2, s, F)
        except ConditionNotMet as e:
            raise IllegalParams(str(e)) from e
        return free_product(pot.algebra(), free_algebra(["x%d" % (i + 1) for i in range(m)], s, F))
    raise IllegalParams("no canonical construction for condition %r" % (condition,))


def nkoz_coefficient(p: Presentation) -> int:
    """2 m^2 - 2 l1 m + l2 for the Veronese triple of the s-dual of ``p``."""
    if len(p.relations) != 2:
        raise MathError("expected exactly two relations")
    s = p.s
    b = veronese_bimodule(dual_gb(p, 2 * s + 2), s)
    m, l1 = p.n, b.dim_M1
    l2 = tensor_power_degree1(b, 2)
    return 2 * m * m - 2 * l1 * m + l2
