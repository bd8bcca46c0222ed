"""Polynomials in a fixed set of named parameters with ExactScalar coefficients.

Parameters are treated as real symbols: conjugation acts on coefficients only.
A monomial is a tuple of ``(name, exponent)`` pairs sorted by :data:`VARIABLES`
order, with the empty tuple standing for the constant monomial.
"""

from __future__ import annotations

from .exact import ExactScalar, ONE, ZERO, as_scalar, scalar

VARIABLES = ("c", "k", "K", "z", "λ", "μ", "t", "s")
ALIASES = {"lam": "λ", "lambda": "λ", "mu": "μ"}
_ORDER = {v: i for i, v in enumerate(VARIABLES)}


def canonical_var(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in _ORDER:
        raise ValueError(f"unknown parameter {name!r}; expected one of {VARIABLES}")
    return name


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: _ORDER[item[0]]))


class FormalPolynomial:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = scalar(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "FormalPolynomial":
        value = scalar(value)
        return cls._raw({(): value} if value else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "FormalPolynomial":
        name = canonical_var(name)
        if power < 0:
            raise ValueError("negative exponent")
        mono = ((name, power),) if power else ()
        return cls._raw({mono: ONE})

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> ExactScalar:
        """Value of a constant polynomial; raises if any parameter appears."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), ZERO)

    def variables(self) -> set:
        return {v for mono in self.terms for v, _ in mono}

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e for _, e in mono) for mono in self.terms)
        var = canonical_var(var)
        return max(dict(mono).get(var, 0) for mono in self.terms)

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        o = as_poly(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for mono, coeff in o.terms.items():
            cur = out.get(mono)
            if cur is None:
                out[mono] = coeff
            else:
                s = cur + coeff
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return FormalPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return FormalPolynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_poly(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return ZERO_POLY
        if len(o.terms) == 1 and () in o.terms:
            s = o.terms[()]
            return FormalPolynomial._raw({m: c * s for m, c in self.terms.items()})
        if len(self.terms) == 1 and () in self.terms:
            s = self.terms[()]
            return FormalPolynomial._raw({m: c * s for m, c in o.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = _mono_mul(m1, m2)
                cur = out.get(mono)
                out[mono] = c1 * c2 if cur is None else cur + c1 * c2
        return FormalPolynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = ONE_POLY
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        s = as_scalar(other)
        if s is None:
            if isinstance(other, FormalPolynomial) and other.is_constant():
                s = other.constant_value()
            else:
                return NotImplemented
        inv = s.inverse()
        return FormalPolynomial._raw({m: c * inv for m, c in self.terms.items()})

    def conjugate(self) -> "FormalPolynomial":
        return FormalPolynomial._raw({m: c.conjugate() for m, c in self.terms.items()})

    # -- evaluation / substitution --------------------------------------
    def subs(self, assignment: dict) -> "FormalPolynomial":
        """Substitute parameters by scalars or polynomials."""
        values = {canonical_var(k): as_poly(v) if as_poly(v) is not None else FormalPolynomial.const(v)
                  for k, v in assignment.items()}
        out = ZERO_POLY
        for mono, coeff in self.terms.items():
            term = FormalPolynomial._raw({(): coeff})
            rest = []
            for v, e in mono:
                if v in values:
                    term = term * values[v] ** e
                else:
                    rest.append((v, e))
            if rest:
                term = term * FormalPolynomial._raw({tuple(rest): ONE})
            out = out + term
        return out

    def evaluate(self, assignment: dict) -> ExactScalar:
        result = self.subs(assignment)
        if not result.is_constant():
            missing = sorted(result.variables(), key=_ORDER.get)
            raise ValueError(f"unassigned parameters: {missing}")
        return result.constant_value()

    def coefficient(self, powers: dict) -> "FormalPolynomial":
        """Coefficient of the monomial ``prod v**e`` viewed as a polynomial in
        the named variables only (other parameters stay in the result)."""
        powers = {canonical_var(v): e for v, e in powers.items()}
        out = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            if all(exps.get(v, 0) == e for v, e in powers.items()):
                rest = tuple((v, e) for v, e in mono if v not in powers)
                out[rest] = out.get(rest, ZERO) + coeff
        return FormalPolynomial(out)

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        o = as_poly(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.terms.get((), ZERO))
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self):
        return tuple(sorted((_mono_key(m), c._key()) for m, c in self.terms.items()))

    # -- printing -------------------------------------------------------
    def __repr__(self):
        return f"FormalPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_key):
            coeff = self.terms[mono]
            m = mono_str(mono)
            cs = str(coeff)
            if not m:
                parts.append(cs)
            elif coeff == ONE:
                parts.append(m)
            elif coeff == -ONE:
                parts.append("-" + m)
            else:
                if not (coeff.is_rational() or (coeff.a == 0 and coeff.b == 0 and (coeff.c == 0 or coeff.d == 0))):
                    cs = f"({cs})"
                parts.append(f"{cs}*{m}")
        return " + ".join(parts).replace("+ -", "- ")


def _mono_key(mono):
    return (sum(e for _, e in mono), tuple((_ORDER[v], e) for v, e in mono))


def mono_str(mono) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


def parse_mono(text: str):
    """Inverse of :func:`mono_str` (``"1"`` or ``""`` for the constant)."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    exps = {}
    for factor in text.split("*"):
        name, _, power = factor.partition("^")
        name = canonical_var(name.strip())
        exps[name] = exps.get(name, 0) + (int(power) if power else 1)
    return tuple(sorted(exps.items(), key=lambda item: _ORDER[item[0]]))


def as_poly(value) -> FormalPolynomial | None:
    if isinstance(value, FormalPolynomial):
        return value
    s = as_scalar(value)
    if s is None:
        return None
    return FormalPolynomial._raw({(): s} if s else {})


def poly(value) -> FormalPolynomial:
    p = as_poly(value)
    if p is None:
        if isinstance(value, str):
            return FormalPolynomial.const(value)
        raise TypeError(f"cannot interpret {value!r} as a polynomial")
    return p


ZERO_POLY = FormalPolynomial._raw({})
ONE_POLY = FormalPolynomial._raw({(): ONE})


def var(name: str) -> FormalPolynomial:
    return FormalPolynomial.var(name)


__all__ = ["FormalPolynomial", "VARIABLES", "as_poly", "poly", "var", "ZERO_POLY", "ONE_POLY",
           "mono_str", "parse_mono", "canonical_var"]
