"""Recursive-descent parser for human-typed inputs.

Grammar (whitespace is insignificant)::

    element  := term (('+' | '-') term)*
    term     := '-' term | factors? '*'? atom
    atom     := generator | '[' element ',' element ']'
    generator:= ('B' | 'W') '^' INT '_' index '(' function ')'
    index    := ['-'] INT | '{' ['-'] INT '}' | NAME           (NAME only for W)
    function := fterm (('+' | '-') fterm)*
    fterm    := factors? '*'? ('χ' | 'chi') '_' ['{'] interval ['}']
    interval := ('[' | '(') RAT ',' RAT (']' | ')')
    factors  := factor ('*'? factor)*
    factor   := RAT | 'i' | '√2' | 'sqrt2' | NAME ['^' INT] | '(' poly ')'

Coefficients are polynomials in the formal parameters (c, k, K, z, λ, μ, t,
s) over Q(i, √2).  Intervals may be written with any bracket style: test
functions are taken up to null sets and stored as left-open intervals.
Brackets ``[X, Y]`` are evaluated with the rule given to :func:`parse_element`
(the w∞ rule is used automatically when both sides are w∞ elements).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .exact import I, ONE, SQRT2
from .lie import ZERO_ELEMENT, LieElement, Sym, bracket
from .poly import ALIASES, ONE_POLY, VARIABLES, ZERO_POLY, FormalPolynomial, poly
from .stepfn import ZERO_FN, StepFunction

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<sqrt>√2|sqrt2)
  | (?P<chi>χ|chi)
  | (?P<name>[A-Za-zλμ]+)
  | (?P<op>[-+*/^_(){}\[\],])
""", re.VERBOSE)

_NAMES = set(VARIABLES) | set(ALIASES)


def tokenize(text: str) -> list:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}", position=pos)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            if kind == "name":
                out.extend(_split_name(val, m.start()))
            else:
                out.append((kind, val, m.start()))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _split_name(word: str, start: int) -> list:
    """Split runs like ``ci`` or ``Bk`` into single-letter names, keeping
    known multi-letter aliases (mu, lam, lambda) whole."""
    out = []
    i = 0
    while i < len(word):
        for alias in sorted(ALIASES, key=len, reverse=True):
            if word.startswith(alias, i):
                out.append(("name", alias, start + i))
                i += len(alias)
                break
        else:
            out.append(("name", word[i], start + i))
            i += 1
    return out


class _Parser:
    def __init__(self, text: str, rule=None):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.rule = rule

    # -- helpers ----------------------------------------------------------------
    def peek(self, offset: int = 0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, value: str, offset: int = 0) -> bool:
        kind, val, _ = self.peek(offset)
        return kind != "end" and val == value

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind) or tok[0] == "end" and (value or kind):
            want = value or kind
            raise ParseError(f"expected {want!r} at {tok[2]}, found {tok[1] or 'end of input'!r}",
                             position=tok[2], text=self.text)
        self.pos += 1
        return tok

    def done(self):
        if self.peek()[0] != "end":
            tok = self.peek()
            raise ParseError(f"unexpected {tok[1]!r} at {tok[2]}", position=tok[2], text=self.text)

    # -- scalars and polynomials ------------------------------------------------
    def _starts_factor(self) -> bool:
        kind, val, _ = self.peek()
        if kind in ("num", "sqrt"):
            return True
        if kind == "name":
            return val == "i" or val in _NAMES
        return val == "("

    def rational(self) -> Fraction:
        sign = -1 if self.at("-") else 1
        if self.at("-") or self.at("+"):
            self.pos += 1
        num = Fraction(self.take(kind="num")[1])
        if self.at("/"):
            self.pos += 1
            den = Fraction(self.take(kind="num")[1])
            if not den:
                raise ParseError("zero denominator", text=self.text)
            num /= den
        return sign * num

    def integer(self) -> int:
        sign = 1
        if self.at("-"):
            self.pos += 1
            sign = -1
        return sign * int(self.take(kind="num")[1])

    def factor(self) -> FormalPolynomial:
        kind, val, _ = self.peek()
        if kind == "num":
            self.pos += 1
            value = Fraction(val)
            if self.at("/") and self.peek(1)[0] == "num":
                self.pos += 1
                den = Fraction(self.take(kind="num")[1])
                if not den:
                    raise ParseError("zero denominator", text=self.text)
                value /= den
            return poly(value)
        if kind == "sqrt":
            self.pos += 1
            return poly(SQRT2)
        if kind == "name" and val == "i":
            self.pos += 1
            return poly(I)
        if kind == "name" and val in _NAMES:
            self.pos += 1
            power = 1
            if self.at("^"):
                self.pos += 1
                power = int(self.take(kind="num")[1])
            return FormalPolynomial.var(val, power)
        if val == "(":
            self.pos += 1
            p = self.poly_expr()
            self.take(")")
            return p
        raise ParseError(f"expected a coefficient at {self.peek()[2]}", position=self.peek()[2], text=self.text)

    def factors(self) -> FormalPolynomial:
        p = self.factor()
        while True:
            if self.at("*") and self._factor_follows(1):
                self.pos += 1
                p = p * self.factor()
            elif self.at("/") and self.peek(1)[0] == "num":
                self.pos += 1
                p = p / Fraction(self.take(kind="num")[1])
            elif self._starts_factor():
                p = p * self.factor()
            else:
                return p

    def _factor_follows(self, offset: int) -> bool:
        kind, val, _ = self.peek(offset)
        return kind in ("num", "sqrt") or (kind == "name" and (val == "i" or val in _NAMES)) or val == "("

    def poly_expr(self) -> FormalPolynomial:
        sign = ONE_POLY
        if self.at("-"):
            self.pos += 1
            sign = -ONE_POLY
        elif self.at("+"):
            self.pos += 1
        total = sign * self.factors()
        while self.at("+") or self.at("-"):
            s = self.take()[1]
            term = self.factors()
            total = total + term if s == "+" else total - term
        return total

    # -- test functions -----------------------------------------------------------
    def interval(self):
        if not (self.at("[") or self.at("(")):
            raise ParseError(f"expected an interval at {self.peek()[2]}", position=self.peek()[2], text=self.text)
        self.pos += 1
        lo = self.rational()
        self.take(",")
        hi = self.rational()
        if not (self.at("]") or self.at(")")):
            raise ParseError(f"expected ']' or ')' at {self.peek()[2]}", position=self.peek()[2], text=self.text)
        self.pos += 1
        if not lo < hi:
            raise ParseError(f"empty interval ({lo}, {hi})", text=self.text)
        return lo, hi

    def chi(self) -> StepFunction:
        self.take(kind="chi")
        self.take("_")
        braced = self.at("{")
        if braced:
            self.pos += 1
        lo, hi = self.interval()
        if braced:
            self.take("}")
        return StepFunction.indicator(lo, hi)

    def function(self) -> StepFunction:
        total = ZERO_FN
        sign = 1
        first = True
        while True:
            if self.at("-"):
                self.pos += 1
                sign = -1
            elif self.at("+") and not first:
                self.pos += 1
            coeff = ONE_POLY
            if self.peek()[0] != "chi":
                coeff = self.factors()
                if self.at("*"):
                    self.pos += 1
            if not coeff.is_constant():
                raise ParseError("test-function coefficients must be numbers", text=self.text)
            total = total + self.chi() * (coeff.constant_value() * sign)
            sign = 1
            first = False
            if not (self.at("+") or self.at("-")):
                return total

    # -- Lie elements ----------------------------------------------------------------
    def generator(self) -> LieElement:
        head = self.take(kind="name")[1]
        self.take("^")
        n = self.integer() if not self.at("{") else self._braced_int()
        self.take("_")
        if head == "B":
            k = self._braced_int() if self.at("{") else self.integer()
        else:
            if self.at("{"):
                self.pos += 1
                k = self.poly_expr()
                self.take("}")
            elif self.peek()[0] == "name":
                k = FormalPolynomial.var(self.take()[1])
            else:
                k = poly(self.integer())
        self.take("(")
        f = self.function()
        self.take(")")
        if head == "B":
            if n < 0 or k < 0:
                raise ParseError(f"B^n_k needs nonnegative indices, got ({n}, {k})", text=self.text)
            return _smeared(Sym("wn", n, k, StepFunction.indicator(0, 1)), f)
        if n < 2:
            raise ParseError("w∞ generators need n >= 2", text=self.text)
        return _smeared(Sym("winf", n, k, StepFunction.indicator(0, 1)), f)

    def _braced_int(self) -> int:
        self.take("{")
        v = self.integer()
        self.take("}")
        return v

    def atom(self) -> LieElement:
        if self.at("["):
            self.pos += 1
            x = self.element()
            self.take(",")
            y = self.element()
            self.take("]")
            return self._bracket(x, y)
        kind, val, where = self.peek()
        if kind == "name" and val in ("B", "W"):
            return self.generator()
        raise ParseError(f"expected a generator or bracket at {where}", position=where, text=self.text)

    def _bracket(self, x, y):
        from .algebras import WinfRule

        rule = self.rule
        kinds = {s.kind for s in list(x.terms) + list(y.terms) if s.kind != "central"}
        if kinds == {"winf"} and (rule is None or rule.name != "winf"):
            rule = WinfRule()
        if rule is None:
            raise ParseError("a bracket needs a renormalization scheme", text=self.text)
        return bracket(rule, x, y)

    def term(self) -> LieElement:
        if self.at("-"):
            self.pos += 1
            return -self.term()
        coeff = ONE_POLY
        if self._starts_factor() and not self._atom_here():
            coeff = self.factors()
            if self.at("*"):
                self.pos += 1
        return self.atom() * coeff

    def _atom_here(self) -> bool:
        kind, val, _ = self.peek()
        return val == "[" or (kind == "name" and val in ("B", "W"))

    def element(self) -> LieElement:
        if self.at("0") and self.peek(1)[1] in ("", ",", "]"):
            self.pos += 1
            return ZERO_ELEMENT
        total = self.term()
        while self.at("+") or self.at("-"):
            s = self.take()[1]
            t = self.term()
            total = total + t if s == "+" else total - t
        return total


def _smeared(template: Sym, f: StepFunction) -> LieElement:
    terms = {}
    for lo, hi, val in f.pieces:
        terms[template.with_f(StepFunction._from_canonical(((lo, hi, ONE),)))] = poly(val)
    return LieElement(terms) if terms else ZERO_ELEMENT


def parse_element(text: str, rule=None) -> LieElement:
    p = _Parser(text, rule)
    out = p.element()
    p.done()
    return out


def parse_function(text: str) -> StepFunction:
    text = text.strip()
    if text == "0":
        return ZERO_FN
    p = _Parser(text)
    out = p.function()
    p.done()
    return out


def parse_poly(text: str) -> FormalPolynomial:
    p = _Parser(text)
    if p.at("0") and p.peek(1)[0] == "end":
        return ZERO_POLY
    out = p.poly_expr()
    p.done()
    return out


def parse_scalar(text: str):
    """An exact scalar such as ``3/4``, ``-i``, ``1+2i`` or ``√2/2``."""
    p = parse_poly(text)
    if not p.is_constant():
        raise ParseError(f"{text!r} is not a number", text=text)
    return p.constant_value()


def parse_word(text: str, rule=None) -> list:
    """A product of elements separated by ';' (leftmost acts last)."""
    parts = [s for s in text.split(";") if s.strip()]
    if not parts:
        raise ParseError("empty word", text=text)
    return [parse_element(s, rule) for s in parts]


__all__ = ["parse_element", "parse_function", "parse_poly", "parse_scalar", "parse_word", "tokenize"]
