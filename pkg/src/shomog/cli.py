"""Command-line front end.

Presentation files::

    # comment
    field Q            (or: field F 2521)
    gens x1 y1 y2
    degree 3
    order y1 y2 x1     (optional, largest first)
    rel y1^3
    rel y1*x1^2 - x1*y1*x1

Potential files use ``potential <poly>`` instead of ``rel`` lines and may
add a ``sigma`` line followed by one matrix row per generator.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from sympy import nextprime
from sympy.ntheory import is_quad_residue

from .classify import classify_two_relations, nkoz_coefficient
from .duality import dual_gb, s_dual, veronese_bimodule, veronese_ring
from .errors import InputError, MathError, ShomogError
from .freealg import GeneratorSet, NcPolynomial, ParseError, Presentation, format_poly, parse_poly
from .groebner import truncated_groebner
from .hilbert import RationalSeries, count_normal_words, expand_rational
from .koszul import koszulity_verdict
from .linalg import QQ, Field, GF, Matrix
from .moduleclass import match_bimodule
from .potential import (TwistedPotential, build_potential_algebra, derived_relations, free_product, gen_potential_diag,
                        gen_potential_jordan, potential_exclusion_check)
from .quadclass import NeedsFieldExtension, classify_quadratic

SCHEMA = 1
ENV_DEGREE = "SHOMOG_DEGREE_BOUND"
EXIT_OK, EXIT_PARSE, EXIT_MATH = 0, 2, 3


@dataclass
class JobConfig:
    field: Field = QQ
    degree_bound: int | None = None
    order: list | None = None
    options: dict = dc_field(default_factory=dict)
    output: str = "json"


@dataclass
class ParsedFile:
    field: Field
    gens: GeneratorSet
    degree: int | None
    relations: list
    potential: NcPolynomial | None = None
    sigma: Matrix | None = None

    def presentation(self) -> Presentation:
        if self.potential is not None and not self.relations:
            return build_potential_algebra(self.potential)
        if self.degree is None and not self.relations:
            raise ParseError("a presentation needs a degree line or at least one relation")
        s = self.degree if self.degree is not None else len(next(iter(self.relations[0].terms)))
        return Presentation(self.gens, s, self.relations, self.field)


# ---------------------------------------------------------------- file format

def _parse_field(args, lineno):
    if args == ["Q"]:
        return QQ
    if len(args) == 2 and args[0] == "F" and args[1].isdigit():
        return GF(int(args[1]))
    raise ParseError("line %d: expected 'field Q' or 'field F <p>'" % lineno)


def parse_file(text: str) -> ParsedFile:
    field, names, order, degree = QQ, None, None, None
    rels, pot, sigma_rows = [], None, None
    pending = []  # (lineno, kind, body) parsed once gens and field are known
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno, raw = i + 1, lines[i].split("#", 1)[0].strip()
        i += 1
        if not raw:
            continue
        key, _, rest = raw.partition(" ")
        rest = rest.strip()
        if key == "field":
            field = _parse_field(rest.split(), lineno)
        elif key == "gens":
            names = rest.split()
        elif key == "order":
            order = rest.split()
        elif key == "degree":
            if not rest.isdigit():
                raise ParseError("line %d: degree must be a positive integer" % lineno)
            degree = int(rest)
        elif key in ("rel", "potential"):
            pending.append((lineno, key, rest))
        elif key == "sigma":
            if names is None:
                raise ParseError("line %d: sigma block before the gens line" % lineno)
            sigma_rows = []
            while len(sigma_rows) < len(names):
                if i >= len(lines):
                    raise ParseError("sigma block needs %d rows" % len(names))
                row = lines[i].split("#", 1)[0].split()
                i += 1
                if row:
                    sigma_rows.append((i, row))
        else:
            raise ParseError("line %d: unknown directive %r" % (lineno, key))
    if names is None:
        raise ParseError("missing gens line")
    try:
        gens = GeneratorSet(names, order)
    except InputError as e:
        raise ParseError(str(e)) from e
    for lineno, kind, body in pending:
        try:
            f = parse_poly(body, gens, field)
        except ParseError as e:
            err = ParseError("line %d: %s" % (lineno, e))
            err.pos = e.pos
            raise err from e
        if kind == "rel":
            rels.append(f)
        elif pot is not None:
            raise ParseError("line %d: more than one potential" % lineno)
        else:
            pot = f
    sigma = None
    if sigma_rows is not None:
        try:
            rows = [[field(Fraction(x)) for x in row] for _, row in sigma_rows]
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError("bad sigma entry: %s" % e) from e
        if any(len(r) != len(names) for r in rows):
            raise ParseError("sigma must be %d x %d" % (len(names), len(names)))
        sigma = Matrix(rows, field)
    return ParsedFile(field, gens, degree, rels, pot, sigma)


def format_file(field: Field, gens: GeneratorSet, degree: int | None, relations=(),
                potential: NcPolynomial | None = None, sigma: Matrix | None = None) -> str:
    out = ["field %s" % field.describe(), "gens %s" % " ".join(gens.names)]
    if degree is not None:
        out.append("degree %d" % degree)
    if gens.order != gens.names:
        out.append("order %s" % " ".join(gens.order))
    out += ["rel %s" % format_poly(r) for r in relations]
    if potential is not None:
        out.append("potential %s" % format_poly(potential))
    if sigma is not None:
        out.append("sigma")
        out += [" ".join(str(field.to_json(x)) for x in row) for row in sigma.rows]
    return "\n".join(out) + "\n"


def format_presentation(p: Presentation) -> str:
    return format_file(p.field, p.gens, p.s, p.relations)


def load_presentation(path: str, order=None) -> Presentation:
    p = _read(path).presentation()
    return p.with_order(order) if order else p


def _read(path: str) -> ParsedFile:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror)) from e
    return parse_file(text)


def _pres_json(p: Presentation) -> dict:
    return {"field": p.field.describe(), "gens": list(p.gens.names), "order": list(p.gens.order),
            "degree": p.s, "relations": [format_poly(r) for r in p.relations]}


# ---------------------------------------------------------------- commands

def _degree(args, p: Presentation | None = None, default=None):
    if getattr(args, "degree", None) is not None:
        D = args.degree
    elif os.environ.get(ENV_DEGREE):
        try:
            D = int(os.environ[ENV_DEGREE])
        except ValueError as e:
            raise InputError("%s must be an integer" % ENV_DEGREE) from e
    else:
        D = default
    if D is not None and p is not None and D < p.s:
        raise InputError("degree bound %d is below s = %d" % (D, p.s))
    return D


def cmd_dual(args):
    p = load_presentation(args.file)
    d = s_dual(p)
    return {"presentation": _pres_json(d)}, format_presentation(d)


def cmd_gb(args):
    p = load_presentation(args.file)
    D = _degree(args, p, default=max(3 * p.s, 12))
    g = truncated_groebner(p, D)
    return {"bound": D, "complete_to": g.complete_to, "closed": g.closed,
            "elements": [format_poly(e) for e in g.elements],
            "tips": sorted(p.gens.word_str(t) for t in g.tips)}, None


def _csv_ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ParseError("expected comma-separated integers, got %r" % text) from e


def cmd_hilbert(args):
    if args.rational:
        num, sep, den = args.rational.partition(";")
        if not sep:
            raise ParseError("--rational expects 'num;den' coefficient lists")
        D = args.degree if args.degree is not None else 10
        ser = expand_rational(RationalSeries(_csv_ints(num), _csv_ints(den)), D)
        return {"series": ser.to_json(), "degree": D}, ",".join(str(c) for c in ser.to_json())
    if not args.file:
        raise InputError("hilbert needs a presentation file or --rational")
    p = load_presentation(args.file)
    D = _degree(args, p, default=max(3 * p.s, 12))
    g = truncated_groebner(p, D)
    top = D if g.closed else min(D, g.complete_to)
    ser = count_normal_words(g.tips, p.n, top)
    return {"series": ser.to_json(), "degree": top}, ",".join(str(c) for c in ser.to_json())


def cmd_veronese(args):
    p = load_presentation(args.file)
    g = dual_gb(p, 2 * p.s + 2)
    qp = veronese_ring(g, p.s)
    c = classify_quadratic(qp)
    b = veronese_bimodule(g, p.s)
    bc = match_bimodule(b, c)
    F = p.field
    rels = [[[F.to_json(x) for x in row] for row in m] for m in qp.matrices()]
    return {"a_class": c.name, "ring_relations": rels,
            "ring_generators": [p.gens.word_str(w) for w in qp.basis_words],
            "bimodule": bc.to_json(F), "dim_M0": b.dim_M0, "dim_M1": b.dim_M1}, None


def cmd_classify(args):
    p = load_presentation(args.file)
    D = _degree(args, p)
    return classify_two_relations(p, D, koszul=not args.no_koszul).to_json(), None


def cmd_koszul(args):
    p = load_presentation(args.file)
    v = koszulity_verdict(p, _degree(args, p))
    return v.to_json(), v.label


def _potential_of(path: str) -> TwistedPotential:
    pf = _read(path)
    if pf.potential is None:
        raise ParseError("%s has no potential line" % path)
    sigma = pf.sigma if pf.sigma is not None else Matrix.identity(pf.gens.n, pf.field)
    return TwistedPotential(pf.potential, sigma)


def cmd_potential_check(args):
    pot = _potential_of(args.file)
    if not pot.w.is_homogeneous():
        raise MathError("potential is not homogeneous")
    out = {"degree": pot.N, "fixed": pot.is_fixed(), "relations_dim": derived_relations(pot.w).dim}
    if pot.V_dim == 2:
        out["exclusion_check"] = potential_exclusion_check(pot.w)
    return out, None


def _scalar(text, F):
    try:
        return F(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError("bad scalar %r" % text) from e


def cmd_potential_gen(args):
    F = _parse_field(args.field.split(), 0) if args.field else QQ
    if args.lam is not None:
        pot = gen_potential_jordan(_scalar(args.lam, F), args.s, F)
    elif args.lambda1 is not None and args.lambda2 is not None:
        pot = gen_potential_diag(_scalar(args.lambda1, F), _scalar(args.lambda2, F), args.s, F)
    else:
        raise InputError("give --lambda, or both --lambda1 and --lambda2")
    text = format_file(F, pot.w.gens, None, potential=pot.w, sigma=pot.sigma)
    return {"case": pot.case, "potential": format_poly(pot.w),
            "sigma": [[F.to_json(x) for x in row] for row in pot.sigma.rows],
            "relations": [format_poly(r) for r in pot.algebra().relations]}, text


def cmd_free_product(args):
    p = free_product(load_presentation(args.file1), load_presentation(args.file2))
    return {"presentation": _pres_json(p)}, format_presentation(p)


def cmd_nkoz(args):
    v = nkoz_coefficient(load_presentation(args.file))
    return {"nkoz": v}, str(v)


# ---------------------------------------------------------------- driver

def suggest_prime(minpoly, start: int = 1000) -> int | None:
    """Smallest prime above ``start`` over which the quadratic ``minpoly`` splits."""
    if not minpoly or len(minpoly) != 3:
        return None
    a, b, c = (Fraction(x) if not hasattr(x, "v") else None for x in minpoly)
    if a is None or b is None or c is None:
        return None
    den = a.denominator * b.denominator * c.denominator
    A, B, C = (int(x * den) for x in (a, b, c))
    disc = B * B - 4 * A * C
    p = start
    for _ in range(10000):
        p = nextprime(p)
        if A % p and (disc % p == 0 or is_quad_residue(disc % p, p)):
            return p
    return None


def _error_payload(e: ShomogError) -> dict:
    err = {"code": getattr(e, "code", "error"), "message": str(e)}
    if isinstance(e, NeedsFieldExtension) and e.minpoly is not None:
        err["minpoly"] = [str(x) for x in e.minpoly]
        sp = suggest_prime(e.minpoly)
        if sp is not None:
            err["suggested_field"] = "F %d" % sp
    if isinstance(e, ParseError) and e.pos is not None:
        err["column"] = e.pos + 1
    return err


def _render_text(payload) -> str:
    if isinstance(payload, dict):
        return "\n".join("%s: %s" % (k, json.dumps(v, sort_keys=True)) for k, v in payload.items()) + "\n"
    return "%s\n" % payload


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shomog", description="s-homogeneous algebras with two relations")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext, file=True, degree=False):
        sp = sub.add_parser(name, help=helptext, parents=[common])
        if file:
            sp.add_argument("file")
        if degree:
            sp.add_argument("--degree", "-D", type=int, default=None,
                            help="degree bound (default from %s)" % ENV_DEGREE)
        sp.set_defaults(fn=fn)
        return sp

    add("dual", cmd_dual, "s-homogeneous dual")
    add("gb", cmd_gb, "truncated Groebner basis", degree=True)
    h = add("hilbert", cmd_hilbert, "Hilbert series of a file, or expansion of a rational function",
            file=False, degree=True)
    h.add_argument("file", nargs="?")
    h.add_argument("--rational", help="'num;den' comma-separated coefficients")
    add("veronese", cmd_veronese, "Veronese ring class and bimodule")
    c = add("classify", cmd_classify, "condition number, parameters and Koszulity", degree=True)
    c.add_argument("--no-koszul", action="store_true")
    add("koszul", cmd_koszul, "Koszulity verdict", degree=True)
    add("potential-check", cmd_potential_check, "check a twisted potential file")
    g = add("potential-gen", cmd_potential_gen, "generate a twisted potential", file=False)
    g.add_argument("--s", type=int, required=True)
    g.add_argument("--lambda", dest="lam")
    g.add_argument("--lambda1")
    g.add_argument("--lambda2")
    g.add_argument("--field", help="'Q' or 'F <p>'")
    fp = add("free-product", cmd_free_product, "free product of two presentations", file=False)
    fp.add_argument("file1")
    fp.add_argument("file2")
    add("nkoz", cmd_nkoz, "2m^2 - 2 l1 m + l2 for the s-dual")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    command = args.command
    try:
        payload, text = args.fn(args)
    except ShomogError as e:
        code = EXIT_PARSE if isinstance(e, (ParseError, InputError)) else EXIT_MATH
        print("shomog %s: %s" % (command, e), file=sys.stderr)
        if args.format == "json":
            out = {"schema": SCHEMA, "command": command, "error": _error_payload(e)}
            sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
        return code
    if args.format == "json":
        out = {"schema": SCHEMA, "command": command, "result": payload}
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text if text is not None and text.endswith("\n")
                         else (text + "\n" if text is not None else _render_text(payload)))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
