"""Canonical JSON encodings (rationals always as strings)."""

from __future__ import annotations

from .exact import ExactScalar, parse_rational, scalar
from .lie import LieElement, Sym
from .poly import FormalPolynomial, mono_str, parse_mono
from .stepfn import StepFunction


def rational_to_json(x) -> str:
    return str(parse_rational(x))


def scalar_to_json(x) -> dict:
    x = scalar(x)
    return {"a": str(x.a), "b": str(x.b), "c": str(x.c), "d": str(x.d)}


def scalar_from_json(data) -> ExactScalar:
    if isinstance(data, dict):
        return ExactScalar(data.get("a", "0"), data.get("b", "0"), data.get("c", "0"), data.get("d", "0"))
    if isinstance(data, (str, int)):
        return scalar(parse_rational(data))
    raise ValueError(f"cannot decode scalar from {data!r}")


def stepfn_to_json(f: StepFunction) -> list:
    return [{"lo": str(lo), "hi": str(hi), "val": scalar_to_json(v)} for lo, hi, v in f.pieces]


def stepfn_from_json(data) -> StepFunction:
    return StepFunction([(p["lo"], p["hi"], scalar_from_json(p.get("val", "1"))) for p in data])


def poly_to_json(p: FormalPolynomial) -> dict:
    """{"poly": {monomial string ("1" for the constant): scalar}}.

    The wrapper keeps a polynomial such as ``c`` from being mistaken for a
    scalar, whose fields are also named a, b, c, d.
    """
    terms = sorted(p.terms.items(), key=lambda i: str(i[0]))
    return {"poly": {mono_str(m) or "1": scalar_to_json(c) for m, c in terms}}


def poly_from_json(data) -> FormalPolynomial:
    """Inverse of :func:`poly_to_json`; a bare scalar encoding is a constant."""
    if isinstance(data, dict) and "poly" in data:
        return FormalPolynomial({parse_mono(k): scalar_from_json(v) for k, v in data["poly"].items()})
    return FormalPolynomial.const(scalar_from_json(data))


def sym_to_json(s: Sym) -> dict:
    if s.kind == "wn":
        return {"kind": "wn", "n": s.n, "k": s.k, "f": stepfn_to_json(s.f)}
    if s.kind == "winf":
        k = s.k
        kj = int(k.constant_value().to_fraction()) if k.is_constant() else poly_to_json(k)
        return {"kind": "winf", "n": s.n, "k": kj, "f": stepfn_to_json(s.f)}
    return {"kind": s.kind, "name": s.name}


def sym_from_json(data) -> Sym:
    kind = data["kind"]
    if kind == "wn":
        return Sym("wn", int(data["n"]), int(data["k"]), stepfn_from_json(data["f"]))
    if kind == "winf":
        k = data["k"]
        k = k if isinstance(k, int) else poly_from_json(k)
        return Sym("winf", int(data["n"]), k, stepfn_from_json(data["f"]))
    return Sym(kind, name=data["name"])


def element_to_json(x: LieElement) -> dict:
    terms = []
    for sym, coeff in x.sorted_terms():
        c = coeff.constant_value() if coeff.is_constant() else None
        terms.append({"sym": sym_to_json(sym), "coeff": scalar_to_json(c) if c is not None else poly_to_json(coeff)})
    return {"terms": terms}


def element_from_json(data) -> LieElement:
    out = {}
    for term in data["terms"]:
        sym = sym_from_json(term["sym"])
        out[sym] = out.get(sym, FormalPolynomial()) + poly_from_json(term.get("coeff", "1"))
    return LieElement(out)
