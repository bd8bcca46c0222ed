"""Command-line frontend: ``rhpwn <subcommand> [options]``.

Output is JSON on stdout (CSV for tables with ``--format csv``).  Exit codes:
0 success, 1 validation error (error JSON on stdout), 2 internal invariant
breach.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from .errors import InvariantBreach, RhpwnError

SCHEMES = ("ivanov", "convolution", "winf")
RULES = ("strict", "gen1", "gen2")


class CliUsageError(RhpwnError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


# -- shared helpers ------------------------------------------------------------

def _rat(text: str) -> Fraction:
    from .exact import parse_rational

    try:
        return Fraction(str(parse_rational(text)))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliUsageError(f"not a rational number: {text!r}") from exc


def _scheme(args, default="ivanov"):
    from .algebras import scheme_from_config

    name = args.scheme or default
    return scheme_from_config({"scheme": name, "c": args.c})


def _rules(args, n=None):
    from .fock import rules_from_name

    return rules_from_name(args.rules or "strict", n)



def _poly_out(p) -> dict:
    from .serialize import poly_to_json

    return {"value": str(p), "json": poly_to_json(p)}


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue().rstrip("\n")


def _algebra(spec: str):
    """Named algebra, inline JSON structure table, or a path to one."""
    from . import cohomology as co
    from .finite import FiniteLieAlgebra

    named = {"heisenberg": co.heisenberg, "sl2": co.sl2, "oscillator": co.oscillator}
    if spec in named:
        return named[spec]()
    if spec.startswith("abelian"):
        return co.abelian(int(spec[len("abelian"):] or 2))
    text = spec
    if not spec.lstrip().startswith("{"):
        try:
            with open(spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliUsageError(f"unknown algebra {spec!r} (not a name, JSON or readable file)") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliUsageError(f"algebra JSON does not parse: {exc}") from exc
    try:
        return FiniteLieAlgebra.from_json(data)
    except (KeyError, ValueError) as exc:
        raise CliUsageError(f"invalid algebra: {exc}") from exc


def _matrix_json(m):
    from .serialize import scalar_to_json

    return [[scalar_to_json(x) for x in row] for row in m]


# -- subcommands ----------------------------------------------------------------

def cmd_bracket(args):
    from .parser import parse_element
    from .serialize import element_to_json

    rule = _scheme(args)
    x = parse_element(args.expr, rule)
    return {"result": str(x), "element": element_to_json(x)}


def cmd_axioms(args):
    from .acceptance import exhaustive_symbols, random_element
    from .algebras import scheme_from_config
    from .lie import all_triples, check_axioms

    names = [args.scheme] if args.scheme else list(SCHEMES)
    rng = random.Random(args.seed)
    out = {}
    ok = True
    for name in names:
        rule = scheme_from_config({"scheme": name, "c": args.c})
        kind = "winf" if name == "winf" else "wn"
        samples = list(all_triples(exhaustive_symbols(kind, args.max_index)))
        samples += [tuple(random_element(rng, kind, args.max_index) for _ in range(3))
                    for _ in range(args.random)]
        rep = check_axioms(rule, samples, max_witnesses=5)
        out[rule.name] = {"ok": rep["ok"], "checked": rep["checked"],
                          "violations": [{"axiom": v["axiom"], "residual": str(v["residual"])}
                                         for v in rep["violations"]]}
        ok = ok and rep["ok"]
    return {"ok": ok, "rules": out}


def cmd_expect(args):
    from .fock import vacuum_expectation
    from .parser import parse_element

    rules = _rules(args, args.sector_n)
    rule = _scheme(args, "ivanov" if (args.rules or "strict") == "strict" else "convolution")
    word = [parse_element(w, rule) for w in args.factors]
    value = vacuum_expectation(word, rule, rules)
    return {"scheme": rule.name, "rules": rules.name, **_poly_out(value)}


def cmd_gram(args):
    from .fock import gram
    from .parser import parse_word
    from .serialize import poly_to_json

    rules = _rules(args, args.sector_n)
    rule = _scheme(args, "ivanov" if (args.rules or "strict") == "strict" else "convolution")
    words = [parse_word(w, rule) for w in args.words]
    defects = []
    g = gram(words, rule, rules, completion="upper" if args.allow_non_hermitian else None, defects=defects)
    out = {"scheme": rule.name, "rules": rules.name, "size": len(g),
           "matrix": [[str(x) for x in row] for row in g],
           "json": [[poly_to_json(x) for x in row] for row in g]}
    if args.allow_non_hermitian:
        out["hermitian_defects"] = [{"i": i, "j": j, "upper": str(u), "lower": str(lo)} for i, j, u, lo in defects]
    if args.format == "csv":
        return _csv([[str(x) for x in row] for row in g], [f"w{j}" for j in range(len(g))])
    return out


def cmd_nogo(args):
    from .fock import ghost_scan

    rep = ghost_scan(args.n, args.degree, _rat(args.c or "1"), _rat(args.mu), args.rules or "strict",
                     _scheme(args) if args.scheme else None)
    if not args.full:
        rep.pop("gram", None)
    return rep


def cmd_kernel(args):
    import mpmath

    from .genfock import exp_kernel_report
    from .parser import parse_function

    f = parse_function(args.f)
    g = parse_function(args.g if args.g is not None else args.f)
    rep = exp_kernel_report(args.n, f, g, args.dps)
    v = rep["value"]
    return {"n": args.n, "value": mpmath.nstr(v, args.dps), "error_bound": mpmath.nstr(rep["error_bound"], 5),
            "dps": args.dps}


def cmd_action_check(args):
    import mpmath

    from .genfock import action_check
    from .parser import parse_function

    rep = action_check(args.n, parse_function(args.f), parse_function(args.g), parse_function(args.h),
                       _rat(args.step), args.dps)
    return {"n": rep["n"], "lhs": mpmath.nstr(rep["lhs"], 20), "rhs": mpmath.nstr(rep["rhs"], 20),
            "residual": mpmath.nstr(rep["residual"], 5), "step": rep["step"],
            "ok": bool(rep["residual"] < mpmath.mpf(args.tol))}


def cmd_mgf(args):
    from .processes import FieldProcessSpec, mgf_series

    s = mgf_series(FieldProcessSpec(args.n, _rat(args.t)), args.order)
    if args.format == "csv":
        return _csv([[i, str(c)] for i, c in enumerate(s.coeffs)], ["power", "coefficient"])
    return {"n": args.n, "t": args.t, "order": args.order, "series": str(s),
            "coefficients": [str(c) for c in s.coeffs]}


def cmd_moment(args):
    from .processes import FieldProcessSpec, moment

    spec = FieldProcessSpec(args.n, _rat(args.t))
    if args.m is not None:
        if args.format == "csv":
            return _csv([[args.m, str(moment(spec, args.m))]], ["m", "moment"])
        return str(moment(spec, args.m))
    rows = [[m, str(moment(spec, m))] for m in range(args.max_m + 1)]
    if args.format == "csv":
        return _csv(rows, ["m", "moment"])
    return {str(m): v for m, v in rows}


def cmd_density(args):
    from .processes import FieldProcessSpec, beta_density

    spec = FieldProcessSpec(args.n, _rat(args.t))
    lo, hi = float(_rat(args.x_min)), float(_rat(args.x_max))
    pts = args.points
    xs = [lo + (hi - lo) * i / (pts - 1) for i in range(pts)] if pts > 1 else [lo]
    rows = [[repr(x), repr(beta_density(spec, x, args.scale_corrected))] for x in xs]
    if args.format == "csv":
        return _csv(rows, ["x", "density"])
    return {"n": args.n, "t": args.t, "scale_corrected": args.scale_corrected,
            "samples": [{"x": float(x), "density": float(d)} for x, d in rows]}


def cmd_density_check(args):
    from .processes import FieldProcessSpec, density_moment_check

    return density_moment_check(FieldProcessSpec(args.n, _rat(args.t)), args.m)


def _classical(text: str, kind: str):
    """Parse ``2*f_{2,1} - i*f_{3,0}`` (or g_{n,k}) into a polynomial."""
    import re

    from .bridge import ComplexPoly, TrigPoly
    from .parser import parse_scalar

    cls, letter = (TrigPoly, "f") if kind == "trig" else (ComplexPoly, "g")
    total = cls()
    pattern = re.compile(r"\s*([+-]?)\s*(?:(\([^)]*\)|[^*+\-\s]+)\s*\*\s*)?" + letter
                         + r"_\{\s*(-?\d+)\s*,\s*(-?\d+)\s*\}")
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m:
            raise CliUsageError(f"cannot parse {kind} polynomial at {text[pos:]!r} (use {letter}_{{n,k}} terms)")
        sign, coeff, n, k = m.groups()
        c = parse_scalar(coeff) if coeff else parse_scalar("1")
        if sign == "-":
            c = -c
        mono = cls.f(int(n), int(k), c) if kind == "trig" else cls.g(int(n), int(k), c)
        total = total + mono
        pos = m.end()
    return total


def cmd_poisson(args):
    from .bridge import poisson_bracket

    p = _classical(args.p, args.kind)
    q = _classical(args.q, args.kind)
    r = poisson_bracket(p, q)
    from .serialize import scalar_to_json

    if args.kind == "trig":
        terms = [{"f": [m + 1, k], "coeff": scalar_to_json(c)} for (k, m), c in sorted(r.terms.items())]
    else:
        terms = [{"g": [a, b], "coeff": scalar_to_json(c)} for (a, b), c in sorted(r.terms.items())]
    return {"kind": args.kind, "result": str(r), "terms": terms}


def cmd_winf_expand(args):
    from .bridge import winf_expand, winf_series_to_json

    return {"n": args.n, "order": args.order, "terms": winf_series_to_json(winf_expand(args.n, args.order))}


def cmd_winf_check(args):
    from .bridge import winf_bracket_check

    return winf_bracket_check(args.n, args.N, args.order)


def cmd_invert(args):
    from .bridge import invert, rhpwn_generator
    from .serialize import element_to_json

    order = args.order if args.order is not None else args.n + args.k + 1
    x = invert(args.n, args.k, order, literal=args.literal)
    return {"n": args.n, "k": args.k, "order": order, "literal": args.literal, "result": str(x),
            "element": element_to_json(x), "equals_B^n_k": x == rhpwn_generator(args.n, args.k)}


def cmd_cocycle(args):
    from .cohomology import coboundary_space, cocycle_space

    L = _algebra(args.algebra)
    return {"basis": L.names, "cocycles": [_matrix_json(m) for m in cocycle_space(L)],
            "coboundaries": [_matrix_json(m) for m in coboundary_space(L)]}


def cmd_h2(args):
    from .cohomology import coboundary_space, cocycle_space, h2_dimension

    L = _algebra(args.algebra)
    return {"basis": L.names, "cocycles": len(cocycle_space(L)), "coboundaries": len(coboundary_space(L)),
            "h2": h2_dimension(L)}


def cmd_trivialize(args):
    from .cohomology import heisenberg, heisenberg_cocycle, trivialize
    from .parser import parse_scalar
    from .serialize import scalar_from_json, scalar_to_json

    if args.cocycle is not None:
        L = _algebra(args.algebra)
        try:
            phi = [[scalar_from_json(x) for x in row] for row in json.loads(args.cocycle)]
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise CliUsageError(f"cocycle must be a JSON matrix of scalars: {exc}") from exc
        if len(phi) != L.dim or any(len(r) != L.dim for r in phi):
            raise CliUsageError(f"cocycle must be {L.dim}x{L.dim}")
    else:
        L = heisenberg()
        phi = heisenberg_cocycle(parse_scalar(args.lam), parse_scalar(args.z))
    rep = trivialize(L, phi)
    if rep["trivial"]:
        return {"trivial": True, "f": {k: scalar_to_json(v) for k, v in rep["f"].items()}}
    cert = rep["certificate"]
    return {"trivial": False, "certificate": {"combination": {k: scalar_to_json(v) for k, v in cert["combination"].items()},
                                              "cocycle_value": scalar_to_json(cert["cocycle_value"])}}


def cmd_heis_ext(args):
    from .cohomology import heisenberg, heisenberg_cocycle, heisenberg_extension, trivialize
    from .parser import parse_scalar

    lam, z = parse_scalar(args.lam), parse_scalar(args.z)
    L = heisenberg_extension(lam, z)
    triv = trivialize(heisenberg(), heisenberg_cocycle(lam, z))["trivial"]
    return {"algebra": L.to_json(), "jacobi": not L.validate(), "star_compatible": L.star_compatible,
            "star_constraint": "conj(phi(x,y)) = phi(y*,x*) with E* = E; holds iff lambda is real",
            "trivial": triv}


def cmd_weyl(args):
    from .cohomology import find_heisenberg_realization
    from .serialize import scalar_to_json
    from .weyl import weyl_subalgebra_structure

    words = [w.strip() for w in args.words.split(",") if w.strip()]
    L = weyl_subalgebra_structure(words)
    out = {"algebra": L.to_json(), "jacobi": not L.validate()}
    if args.identify:
        real = find_heisenberg_realization(tuple(words))
        out["heisenberg_extension"] = None if real is None else {
            "lambda": scalar_to_json(real["lambda"]), "z": scalar_to_json(real["z"]), "images": real["images"],
            "star_preserved": real["star_preserved"], "nontrivial": bool(real["z"])}
    return out


def cmd_suite(args):
    from . import acceptance

    if args.name == "smoke":
        rep = acceptance.smoke()
        ok = all(v["ok"] for k, v in rep.items() if k != "seconds")
    elif args.name == "acceptance":
        rep = acceptance.run()
        ok = all(v["ok"] for v in rep.values())
    else:
        raise CliUsageError(f"unknown suite {args.name!r} (expected smoke or acceptance)")
    return _Outcome({"suite": args.name, "ok": ok, "checks": rep}, 0 if ok else 1)


class _Outcome:
    def __init__(self, payload, code):
        self.payload = payload
        self.code = code


# -- argument parsing ------------------------------------------------------------

def _globals(parser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--scheme", choices=SCHEMES, default=d, help="renormalization scheme")
    parser.add_argument("--c", default=d, help="Ivanov constant (rational); omit for a formal c")
    parser.add_argument("--rules", choices=RULES, default=d, help="vacuum rules")
    parser.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS if suppress else "json")
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    _globals(common, suppress=True)
    root = _Parser(prog="rhpwn", description="Exact engine for renormalized higher powers of white noise.")
    _globals(root, suppress=False)
    sub = root.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("bracket", cmd_bracket, "evaluate an element expression such as '[X, Y]'")
    p.add_argument("expr")
    p = add("axioms", cmd_axioms, "check antisymmetry, Jacobi and star compatibility")
    p.add_argument("--max-index", type=int, default=3)
    p.add_argument("--random", type=int, default=0, help="additional seeded random triples")
    p = add("expect", cmd_expect, "vacuum expectation of a word (factors left to right)")
    p.add_argument("factors", nargs="+")
    p.add_argument("--sector-n", type=int, default=None, help="creator power for gen2 rules")
    p = add("gram", cmd_gram, "Gram matrix of words (factors separated by ';')")
    p.add_argument("words", nargs="*")
    p.add_argument("--sector-n", type=int, default=None)
    p.add_argument("--allow-non-hermitian", action="store_true",
                   help="keep the upper triangle and report conjugate-symmetry defects")
    p = add("nogo", cmd_nogo, "exact ghost scan on (B^n_0)^a (B^2n_0)^b words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--full", action="store_true", help="include the Gram matrix")
    p = add("kernel", cmd_kernel, "exponential-vector kernel <psi_n(f), psi_n(g)>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", default=None)
    p.add_argument("--dps", type=int, default=30)
    p = add("action-check", cmd_action_check, "finite-difference check of B^0_n on exponential vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--step", default="1/1000000")
    p.add_argument("--dps", type=int, default=40)
    p.add_argument("--tol", type=float, default=1e-8)
    p = add("mgf", cmd_mgf, "vacuum moment generating function as a power series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--order", type=int, default=8)
    p = add("moment", cmd_moment, "exact vacuum moments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--max-m", type=int, default=8)
    p = add("density", cmd_density, "Beta density samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--x-min", default="-5")
    p.add_argument("--x-max", default="5")
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--scale-corrected", action="store_true")
    p = add("density-check", cmd_density_check, "quadrature moments vs exact moments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--m", type=int, default=2)
    p = add("poisson", cmd_poisson, "Poisson bracket of classical generators")
    p.add_argument("--kind", choices=("trig", "complex"), required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p = add("winf-expand", cmd_winf_expand, "w-infinity generator as a series in RHPWN generators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=2)
    p = add("winf-check", cmd_winf_check, "order-by-order w-infinity bracket check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--order", type=int, default=4)
    p = add("invert", cmd_invert, "recover B^n_k from the w-infinity series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--literal", action="store_true", help="use the transposed binomial ranges")
    p = add("cocycle", cmd_cocycle, "2-cocycle and coboundary bases")
    p.add_argument("--algebra", required=True)
    p = add("h2", cmd_h2, "dimension of the second cohomology")
    p.add_argument("--algebra", required=True)
    p = add("trivialize", cmd_trivialize, "find f with phi(x,y) = f([x,y]) or certify none exists")
    p.add_argument("--algebra", default="heisenberg")
    p.add_argument("--cocycle", default=None, help="JSON antisymmetric matrix")
    p.add_argument("--lam", default="0")
    p.add_argument("--z", default="0")
    p = add("heis-ext", cmd_heis_ext, "Heisenberg central extension with parameters lambda, z")
    p.add_argument("--lam", required=True)
    p.add_argument("--z", required=True)
    p = add("weyl", cmd_weyl, "Lie algebra spanned by Weyl-algebra words")
    p.add_argument("--words", default="q^2,q,p,1")
    p.add_argument("--identify", action="store_true", help="search an isomorphism with a Heisenberg extension")
    p = add("suite", cmd_suite, "run the smoke or acceptance bundle")
    p.add_argument("name")
    return root


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise CliUsageError("missing subcommand")
        result = args.func(args)
        code = 0
        if isinstance(result, _Outcome):
            result, code = result.payload, result.code
    except InvariantBreach as exc:
        stdout.write(json.dumps(exc.to_json(), ensure_ascii=False) + "\n")
        return 2
    except RhpwnError as exc:
        stdout.write(json.dumps(exc.to_json(), ensure_ascii=False) + "\n")
        return 1
    except (ValueError, TypeError, ZeroDivisionError, KeyError) as exc:
        payload = {"error": "invalid-input", "message": f"{type(exc).__name__}: {exc}"}
        stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")
        return 1
    if isinstance(result, str) and getattr(args, "format", "json") == "csv":
        stdout.write(result + "\n")
    else:
        stdout.write(json.dumps(result, ensure_ascii=False, indent=2, default=str) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
