"""Generic *-Lie algebra elements over a pluggable bracket rule.

A :class:`LieElement` is a finite combination of :class:`Sym` basis symbols
with :class:`FormalPolynomial` coefficients.  Smeared generators are stored in
a canonical form where every symbol carries the indicator of an interval and
the coefficient carries the value, so ``2 B^1_0(χ)`` and ``B^1_0(2χ)`` are the
same element and equality is structural.
"""

from __future__ import annotations

import itertools

from .errors import SymbolNotSupported
from .exact import ONE
from .poly import FormalPolynomial, ONE_POLY, ZERO_POLY, as_poly, poly
from .stepfn import StepFunction

KIND_ORDER = {"central": 0, "label": 1, "wn": 2, "winf": 3}


class Sym:
    """Basis symbol.

    ``kind`` is one of ``"wn"`` (B^n_k(f)), ``"winf"`` (hat B^n_k(f), k an
    integer or a formal polynomial), ``"label"`` (a named basis vector of a
    finite-dimensional algebra) or ``"central"`` (a named central unit).
    For wn/winf symbols ``f`` is the indicator of a single interval.
    """

    __slots__ = ("kind", "n", "k", "f", "name", "_key", "_hash")

    def __init__(self, kind, n=None, k=None, f=None, name=None):
        if kind not in KIND_ORDER:
            raise ValueError(f"unknown symbol kind {kind!r}")
        if kind == "winf":
            k = poly(k)
            if k.is_constant() and k.constant_value().is_rational():
                kv = k.constant_value().to_fraction()
                if kv.denominator != 1:
                    raise ValueError("w∞ index k must be an integer or a formal parameter")
        elif kind == "wn":
            if not (isinstance(n, int) and isinstance(k, int)) or n < 0 or k < 0:
                raise ValueError(f"B^n_k needs nonnegative integer indices, got ({n}, {k})")
        self.kind = kind
        self.n = n
        self.k = k
        self.f = f
        self.name = name
        if kind in ("wn", "winf"):
            kkey = k.sort_key() if kind == "winf" else k
            self._key = (KIND_ORDER[kind], n, kkey, f.sort_key(), "")
        else:
            self._key = (KIND_ORDER[kind], 0, 0, (), name)
        self._hash = hash(self._key)

    @property
    def head(self):
        return (self.kind, self.n, self.k)

    def k_int(self) -> int:
        """Integer value of a w∞ index (raises for formal indices)."""
        if self.kind == "wn":
            return self.k
        kv = self.k.constant_value().to_fraction()
        return int(kv)

    def with_f(self, f: StepFunction) -> "Sym":
        return Sym(self.kind, self.n, self.k, f, self.name)

    def __eq__(self, other):
        return isinstance(other, Sym) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        return f"Sym({self})"

    def __str__(self):
        if self.kind == "wn":
            return f"B^{self.n}_{self.k}({self.f})"
        if self.kind == "winf":
            ks = str(self.k)
            if len(self.k.terms) > 1:
                ks = "{" + ks + "}"
            return f"W^{self.n}_{ks}({self.f})"
        return self.name


def _canonicalize(terms: dict) -> dict:
    """Bring a symbol→coefficient map into canonical form (see module doc)."""
    groups = {}
    for sym, coeff in terms.items():
        if not coeff:
            continue
        if sym.kind in ("wn", "winf"):
            groups.setdefault(sym.head, []).append((sym, coeff))
        else:
            groups.setdefault(("_", sym), []).append((sym, coeff))
    out = {}
    for head, items in groups.items():
        if len(items) == 1 and (head[0] == "_" or items[0][0].f.is_indicator()):
            sym, coeff = items[0]
            out[sym] = coeff
            continue
        if head[0] == "_":
            total = ZERO_POLY
            for _, coeff in items:
                total = total + coeff
            if total:
                out[items[0][0]] = total
            continue
        points = set()
        for sym, _ in items:
            points.update(sym.f.breakpoints())
        points = sorted(points)
        atoms = {}
        for sym, coeff in items:
            for lo, hi, val in sym.f.refine(points):
                atoms[(lo, hi)] = atoms.get((lo, hi), ZERO_POLY) + coeff * val
        merged = []
        for (lo, hi) in sorted(atoms):
            c = atoms[(lo, hi)]
            if not c:
                continue
            if merged and merged[-1][1] == lo and merged[-1][2] == c:
                merged[-1] = (merged[-1][0], hi, c)
            else:
                merged.append((lo, hi, c))
        kind, n, k = head
        for lo, hi, c in merged:
            out[Sym(kind, n, k, StepFunction._from_canonical(((lo, hi, ONE),)))] = c
    return out


class LieElement:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None, _canonical=False):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            acc = {}
            for sym, coeff in terms:
                coeff = poly(coeff)
                acc[sym] = acc.get(sym, ZERO_POLY) + coeff
            terms = acc
        else:
            terms = {s: poly(c) for s, c in terms.items()}
        self.terms = terms if _canonical else _canonicalize(terms)
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def of(cls, sym: Sym, coeff=1) -> "LieElement":
        return cls({sym: poly(coeff)})

    # -- vector space -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        clash = False
        heads = {s.head for s in self.terms if s.kind in ("wn", "winf")}
        for sym, coeff in other.terms.items():
            cur = out.get(sym)
            if cur is None:
                if sym.kind in ("wn", "winf") and sym.head in heads:
                    clash = True
                out[sym] = coeff
            else:
                out[sym] = cur + coeff
        if clash:
            return LieElement._raw(_canonicalize(out))
        return LieElement._raw({s: c for s, c in out.items() if c})

    def __neg__(self):
        return LieElement._raw({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar_or_poly):
        p = as_poly(scalar_or_poly)
        if p is None:
            return NotImplemented
        if not p:
            return ZERO_ELEMENT
        out = {}
        for s, c in self.terms.items():
            cp = c * p
            if cp:
                out[s] = cp
        return LieElement._raw(out)

    __rmul__ = __mul__

    def subs(self, assignment: dict) -> "LieElement":
        return LieElement({s: c.subs(assignment) for s, c in self.terms.items()})

    def coeff(self, sym: Sym) -> FormalPolynomial:
        return self.terms.get(sym, ZERO_POLY)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0]._key)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"LieElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for sym, c in self.sorted_terms():
            if c == ONE_POLY:
                parts.append(str(sym))
            elif c == -ONE_POLY:
                parts.append(f"-{sym}")
            else:
                cs = str(c)
                if len(c.terms) > 1 or ("+" in cs[1:] or "-" in cs[1:]):
                    cs = f"({cs})"
                parts.append(f"{cs}*{sym}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO_ELEMENT = LieElement._raw({})


def generator(n: int, k: int, f: StepFunction, coeff=1) -> LieElement:
    """The smeared RHPWN generator B^n_k(f), as a canonical LieElement."""
    return _smeared("wn", n, k, f, coeff)


def winf_generator(n: int, k, f: StepFunction, coeff=1) -> LieElement:
    """The smeared w∞ generator hat B^n_k(f)."""
    if n < 2:
        raise ValueError("w∞ generators need n ≥ 2")
    return _smeared("winf", n, k, f, coeff)


def _smeared(kind, n, k, f, coeff):
    if f.is_zero():
        return ZERO_ELEMENT
    template = Sym(kind, n, k, StepFunction.indicator(0, 1))
    terms = {}
    for lo, hi, val in f.pieces:
        terms[template.with_f(StepFunction._from_canonical(((lo, hi, ONE),)))] = poly(coeff) * val
    return LieElement(terms)


def label(name: str, coeff=1) -> LieElement:
    return LieElement.of(Sym("label", name=name), coeff)


def central(name: str = "E", coeff=1) -> LieElement:
    return LieElement.of(Sym("central", name=name), coeff)


class BracketRule:
    """Base class: subclasses implement ``bracket_symbols`` and ``star_symbol``.

    Symbol-level results are memoized per rule instance.
    """

    name = "abstract"

    def __init__(self):
        self._bracket_cache = {}
        self._star_cache = {}

    def supports(self, sym: Sym) -> bool:
        return sym.kind == "central"

    def check(self, sym: Sym) -> None:
        if not self.supports(sym):
            raise SymbolNotSupported(f"{self.name} rule does not accept {sym}", symbol=str(sym))

    def bracket_symbols(self, a: Sym, b: Sym) -> LieElement:
        raise NotImplementedError

    def star_symbol(self, a: Sym) -> LieElement:
        raise NotImplementedError

    def sym_bracket(self, a: Sym, b: Sym) -> LieElement:
        key = (a, b)
        hit = self._bracket_cache.get(key)
        if hit is None:
            self.check(a)
            self.check(b)
            if a.kind == "central" or b.kind == "central":
                hit = ZERO_ELEMENT
            else:
                hit = self.bracket_symbols(a, b)
            self._bracket_cache[key] = hit
        return hit

    def sym_star(self, a: Sym) -> LieElement:
        hit = self._star_cache.get(a)
        if hit is None:
            self.check(a)
            hit = LieElement.of(a) if a.kind == "central" else self.star_symbol(a)
            self._star_cache[a] = hit
        return hit

    def __repr__(self):
        return f"<{self.name} rule>"


def bracket(rule: BracketRule, x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of the rule's symbol bracket."""
    acc = {}
    clash = False
    for sa, ca in x.terms.items():
        for sb, cb in y.terms.items():
            res = rule.sym_bracket(sa, sb)
            if not res.terms:
                continue
            w = ca * cb
            for s, c in res.terms.items():
                cur = acc.get(s)
                if cur is None:
                    acc[s] = c * w
                else:
                    acc[s] = cur + c * w
    heads = {}
    for s in acc:
        if s.kind in ("wn", "winf"):
            prev = heads.setdefault(s.head, s)
            if prev is not s and prev.f != s.f:
                clash = True
    if clash:
        return LieElement._raw(_canonicalize(acc))
    return LieElement._raw({s: c for s, c in acc.items() if c})


def involute(rule: BracketRule, x: LieElement) -> LieElement:
    """Antilinear extension of the rule's star map."""
    out = ZERO_ELEMENT
    for sym, coeff in x.terms.items():
        out = out + rule.sym_star(sym) * coeff.conjugate()
    return out


def check_axioms(rule: BracketRule, samples, max_witnesses: int | None = None) -> dict:
    """Check antisymmetry, Jacobi and the star anti-homomorphism on triples.

    ``samples`` is an iterable of triples of LieElements (or Syms).  Violations
    are returned as data: each entry names the axiom, the triple and the
    nonzero residual.
    """
    violations = []
    checked = 0
    for triple in samples:
        x, y, z = (LieElement.of(e) if isinstance(e, Sym) else e for e in triple)
        checked += 1
        xy = bracket(rule, x, y)
        yz = bracket(rule, y, z)
        zx = bracket(rule, z, x)
        for a, b, ab in ((x, y, xy), (y, z, yz), (z, x, zx)):
            anti = ab + bracket(rule, b, a)
            if anti:
                violations.append({"axiom": "antisymmetry", "triple": (a, b), "residual": anti})
            star = involute(rule, ab) - bracket(rule, involute(rule, b), involute(rule, a))
            if star:
                violations.append({"axiom": "star", "triple": (a, b), "residual": star})
        jac = bracket(rule, xy, z) + bracket(rule, yz, x) + bracket(rule, zx, y)
        if jac:
            violations.append({"axiom": "jacobi", "triple": (x, y, z), "residual": jac})
        inv = involute(rule, involute(rule, x)) - x
        if inv:
            violations.append({"axiom": "involution", "triple": (x,), "residual": inv})
        if max_witnesses is not None and len(violations) >= max_witnesses:
            break
    return {"rule": rule.name, "checked": checked, "violations": violations, "ok": not violations}


def all_triples(symbols):
    """Unordered triples with repetition; enough for antisymmetric checks
    because Jacobi is invariant under permutations once antisymmetry holds."""
    return itertools.combinations_with_replacement(symbols, 3)


__all__ = ["Sym", "LieElement", "BracketRule", "bracket", "involute", "check_axioms", "generator",
           "winf_generator", "label", "central", "ZERO_ELEMENT", "all_triples"]
