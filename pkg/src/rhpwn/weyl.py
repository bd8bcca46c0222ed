"""One-mode Weyl algebra: polynomials in q, p with [q, p] = i.

Normal form is a combination of q^a p^b.  Products are normal-ordered by
repeated rewriting p q -> q p - i on letter words; the closed-form
commutator :func:`hoccr` is kept separate so the two can check each other.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import NotClosed
from .exact import I, ONE, ZERO, scalar
from .linalg import solve

MINUS_I = -I


@lru_cache(maxsize=None)
def _normal_order_word(word: tuple) -> tuple:
    """Normal form of a word in letters 'q', 'p' as ((a, b), coeff) pairs."""
    for pos in range(len(word) - 1):
        if word[pos] == "p" and word[pos + 1] == "q":
            swapped = word[:pos] + ("q", "p") + word[pos + 2:]
            dropped = word[:pos] + word[pos + 2:]
            acc = dict(_normal_order_word(swapped))
            for mono, c in _normal_order_word(dropped):
                acc[mono] = acc.get(mono, ZERO) + c * MINUS_I
            return tuple((m, c) for m, c in sorted(acc.items()) if c)
    a = word.count("q")
    return (((a, len(word) - a), ONE),)


class WeylPoly:
    """Immutable normal-ordered element sum c_{ab} q^a p^b."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for mono, c in (terms or {}).items():
            c = scalar(c)
            if c:
                self.terms[tuple(mono)] = c

    @classmethod
    def word(cls, letters: str) -> "WeylPoly":
        """Normal-order a word such as ``"pqqp"``."""
        letters = tuple(letters.replace(" ", ""))
        if any(ch not in "qp" for ch in letters):
            raise ValueError(f"Weyl words use letters q and p only: {letters!r}")
        return cls(dict(_normal_order_word(letters)))

    @classmethod
    def mono(cls, a: int, b: int, coeff=1) -> "WeylPoly":
        return cls({(a, b): coeff})

    @classmethod
    def unit(cls) -> "WeylPoly":
        return cls({(0, 0): ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return WeylPoly(out)

    def __neg__(self):
        return WeylPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "WeylPoly":
        s = scalar(s)
        return WeylPoly({m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeylPoly):
            return self.scale(other)
        out = {}
        for (a, b), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                letters = ("q",) * a + ("p",) * b + ("q",) * a2 + ("p",) * b2
                for mono, c in _normal_order_word(letters):
                    out[mono] = out.get(mono, ZERO) + c * c1 * c2
        return WeylPoly(out)

    def __rmul__(self, s):
        return self.scale(s)

    def star(self) -> "WeylPoly":
        """Adjoint with q, p self-adjoint: (c q^a p^b)* = conj(c) p^b q^a."""
        out = WeylPoly()
        for (a, b), c in self.terms.items():
            out = out + WeylPoly.word("p" * b + "q" * a).scale(c.conjugate())
        return out

    def __eq__(self, other):
        return isinstance(other, WeylPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"WeylPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda item: (-sum(item[0]), item[0])):
            mono = "".join(f"{x}^{e}" if e > 1 else x for x, e in (("q", a), ("p", b)) if e)
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                cs = str(c)
                if "+" in cs or "-" in cs[1:]:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def weyl_bracket(x: WeylPoly, y: WeylPoly) -> WeylPoly:
    return x * y - y * x


def weyl_normal_order(word) -> WeylPoly:
    """Normal form of a word (string of q/p letters) or of a WeylPoly."""
    if isinstance(word, WeylPoly):
        return word
    return WeylPoly.word(word)


def hoccr(n: int, k: int) -> WeylPoly:
    """Closed form [p^n, q^k] = sum_{h>=1} (-i)^h C(n,h) k^(h) q^{k-h} p^{n-h}."""
    from .algebras import pochhammer

    out = {}
    for h in range(1, min(n, k) + 1):
        out[(k - h, n - h)] = MINUS_I ** h * (comb(n, h) * pochhammer(k, h))
    return WeylPoly(out)


def q() -> WeylPoly:
    return WeylPoly.mono(1, 0)


def p() -> WeylPoly:
    return WeylPoly.mono(0, 1)


def parse_weyl(text: str) -> WeylPoly:
    """Parse a product word like ``"q^2"``, ``"qp"``, ``"1"`` or ``"p q^3"``."""
    text = text.replace(" ", "").replace("*", "")
    if text in ("1", ""):
        return WeylPoly.unit()
    letters = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch not in "qp":
            raise ValueError(f"unexpected {ch!r} in Weyl word {text!r}")
        i += 1
        power = 1
        if i < len(text) and text[i] == "^":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            power = int(text[i + 1:j])
            i = j
        letters.append(ch * power)
    return WeylPoly.word("".join(letters))


def span_coordinates(basis: list, target: WeylPoly):
    """Coordinates of target in the span of basis (None if outside)."""
    monos = sorted({m for b in basis for m in b.terms} | set(target.terms))
    a = [[b.terms.get(m, ZERO) for b in basis] for m in monos]
    rhs = [target.terms.get(m, ZERO) for m in monos]
    return solve(a, rhs) if basis else (None if target else [])


def weyl_subalgebra_structure(words: list, names: list | None = None):
    """Structure constants of the Lie algebra spanned by ``words`` (plus the
    unit, appended when not already in the span).  Raises NotClosed with the
    offending pair and residual when a bracket leaves the span."""
    from .finite import FiniteLieAlgebra

    words = [parse_weyl(w) if isinstance(w, str) else w for w in words]
    names = list(names) if names else [str(w) for w in words]
    if span_coordinates(words, WeylPoly.unit()) is None:
        words = words + [WeylPoly.unit()]
        names = names + ["1"]
    if any(span_coordinates(words[:i], w) is not None for i, w in enumerate(words) if i):
        raise ValueError("Weyl words are linearly dependent")
    d = len(words)
    table = {}
    for i in range(d):
        for j in range(i + 1, d):
            br = weyl_bracket(words[i], words[j])
            coords = span_coordinates(words, br)
            if coords is None:
                raise NotClosed(f"[{names[i]}, {names[j]}] = {br} is outside the span",
                                pair=f"{names[i]},{names[j]}", residual=str(br))
            row = {names[g]: c for g, c in enumerate(coords) if c}
            if row:
                table[(names[i], names[j])] = row
    star = {}
    for i, w in enumerate(words):
        coords = span_coordinates(words, w.star())
        if coords is None:
            star = None
            break
        star[names[i]] = {names[g]: c for g, c in enumerate(coords) if c}
    return FiniteLieAlgebra(names, table, star=star)


def schrodinger_words():
    """a+, a, a+^2, a^2, a+a, 1 with a = (q + i p)/sqrt2, a+ = (q - i p)/sqrt2."""
    from .exact import SQRT2

    inv = SQRT2.inverse()
    a = (q() + p().scale(I)).scale(inv)
    ad = (q() - p().scale(I)).scale(inv)
    return ([ad, a, ad * ad, a * a, ad * a, WeylPoly.unit()],
            ["a+", "a", "a+^2", "a^2", "a+a", "1"])


__all__ = ["WeylPoly", "weyl_bracket", "weyl_normal_order", "hoccr", "weyl_subalgebra_structure",
           "parse_weyl", "schrodinger_words", "q", "p"]
