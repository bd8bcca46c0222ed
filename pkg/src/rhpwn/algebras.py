"""Concrete bracket rules: Ivanov- and convolution-renormalized RHPWN, and w∞.

All three share one orientation: ``bracket(rule, X, Y)`` is [X, Y] with X on
the left.  For X = B^N_K(g), Y = B^n_k(f) the lowest-order coefficient in both
RHPWN rules is K*n - k*N, so the Ivanov rule reduces to the convolution rule
on its c^0 part without any sign adapter.
"""

from __future__ import annotations

from math import comb

from .errors import BoundaryConditionViolated
from .lie import BracketRule, LieElement, Sym, ZERO_ELEMENT, bracket
from .poly import FormalPolynomial, poly, var


def pochhammer(x: int, y: int) -> int:
    """Falling factorial x(x-1)...(x-y+1), with x^(0) = 1."""
    if y < 0:
        raise ValueError("pochhammer needs y >= 0")
    out = 1
    for i in range(y):
        out *= x - i
        if out == 0:
            break
    return out


def _eps(a: int, b: int) -> int:
    return 0 if a == b else 1


def theta(L: int, N: int, K: int, n: int, k: int) -> int:
    """Structure coefficient θ_L(N,K; n,k) of the Ivanov-renormalized bracket.

    Follows the defining formula literally, including the edge factors
    ε_{K,0}ε_{n,0} and ε_{k,0}ε_{N,0}.  Those factors never change the value
    (C(0, L) = 0 and 0^(L) = 0 for L >= 1); the tests pin that down.
    """
    if L < 1:
        return 0
    return (_eps(K, 0) * _eps(n, 0) * comb(K, L) * pochhammer(n, L)
            - _eps(k, 0) * _eps(N, 0) * comb(k, L) * pochhammer(N, L))


def _wn(n, k, f):
    return Sym("wn", n, k, f)


class IvanovRule(BracketRule):
    """RHPWN with δ² = c δ.  ``c`` may be a rational or a FormalPolynomial
    (the default is the formal parameter ``c``)."""

    def __init__(self, c=None):
        super().__init__()
        self.c = var("c") if c is None else poly(c)
        self.name = f"ivanov(c={self.c})"

    def supports(self, sym):
        return sym.kind in ("wn", "central")

    def bracket_symbols(self, a: Sym, b: Sym) -> LieElement:
        N, K, n, k = a.n, a.k, b.n, b.k
        f = a.f * b.f
        if f.is_zero():
            return ZERO_ELEMENT
        top = max(min(K, n), min(k, N))
        terms = {}
        cpow = poly(1)
        for L in range(1, top + 1):
            th = theta(L, N, K, n, k)
            if th:
                terms[_wn(N + n - L, K + k - L, f)] = cpow * th
            cpow = cpow * self.c
        return LieElement._raw(terms)

    def star_symbol(self, a: Sym) -> LieElement:
        return LieElement.of(_wn(a.k, a.n, a.f.conjugate()))


class ConvolutionRule(BracketRule):
    """RHPWN with δ^L(t-s) = δ(s)δ(t-s); test functions must vanish at 0."""

    name = "convolution"

    def supports(self, sym):
        return sym.kind in ("wn", "central")

    def check(self, sym):
        super().check(sym)
        if sym.kind == "wn" and not sym.f.vanishes_at_zero():
            raise BoundaryConditionViolated(
                f"convolution renormalization needs f(0) = 0, got {sym}", symbol=str(sym))

    def bracket_symbols(self, a: Sym, b: Sym) -> LieElement:
        n, k, N, K = a.n, a.k, b.n, b.k
        coeff = k * N - K * n
        if coeff == 0:
            return ZERO_ELEMENT
        f = a.f * b.f
        if f.is_zero():
            return ZERO_ELEMENT
        return LieElement._raw({_wn(n + N - 1, k + K - 1, f): poly(coeff)})

    def star_symbol(self, a: Sym) -> LieElement:
        return LieElement.of(_wn(a.k, a.n, a.f.conjugate()))


class WinfRule(BracketRule):
    """w∞: [W^n_k, W^N_K] = (k(N-1) - K(n-1)) W^{n+N-2}_{k+K}, star k -> -k."""

    name = "winf"

    def supports(self, sym):
        return sym.kind in ("winf", "central")

    def bracket_symbols(self, a: Sym, b: Sym) -> LieElement:
        n, k, N, K = a.n, a.k, b.n, b.k
        coeff = k * (N - 1) - K * (n - 1)
        if not coeff:
            return ZERO_ELEMENT
        f = a.f * b.f
        if f.is_zero():
            return ZERO_ELEMENT
        return LieElement._raw({Sym("winf", n + N - 2, k + K, f): coeff})

    def star_symbol(self, a: Sym) -> LieElement:
        return LieElement.of(Sym("winf", a.n, -a.k, a.f.conjugate()))


def scheme_from_config(config: dict) -> BracketRule:
    """``{"scheme": "ivanov", "c": "1"}`` or ``{"scheme": "convolution"}``."""
    name = config.get("scheme", "ivanov")
    if name == "ivanov":
        c = config.get("c")
        return IvanovRule(None if c in (None, "c") else FormalPolynomial.const(c))
    if name == "convolution":
        return ConvolutionRule()
    if name == "winf":
        return WinfRule()
    raise ValueError(f"unknown scheme {name!r}")


def bracket_ivanov(a: LieElement, b: LieElement, c=None) -> LieElement:
    return bracket(IvanovRule(c), a, b)


def bracket_convolution(a: LieElement, b: LieElement) -> LieElement:
    return bracket(ConvolutionRule(), a, b)


def bracket_winf(a: LieElement, b: LieElement) -> LieElement:
    return bracket(WinfRule(), a, b)
