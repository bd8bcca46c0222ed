"""Classical Poisson-bracket representations and the formal series bridge
between w∞ generators and RHPWN generators."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .algebras import ConvolutionRule
from .errors import MixedKindOperands, OrderTooSmall
from .exact import I, SQRT2, ZERO, ExactScalar, scalar
from .lie import ZERO_ELEMENT, LieElement, Sym, bracket
from .poly import ZERO_POLY, FormalPolynomial, poly, var
from .stepfn import chi


class _MonomialPoly:
    """Sparse polynomial: exponent key -> ExactScalar."""

    __slots__ = ("terms",)
    kind = ""

    def __init__(self, terms=None):
        out = {}
        for key, c in (terms or {}).items():
            c = scalar(c)
            if c:
                out[tuple(key)] = c
        self.terms = out

    def _new(self, terms):
        return type(self)(terms)

    def __add__(self, other):
        self._same_kind(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ZERO) + c
        return self._new(out)

    def __neg__(self):
        return self._new({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "_MonomialPoly":
        s = scalar(s)
        return self._new({key: c * s for key, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _MonomialPoly):
            return self.scale(other)
        self._same_kind(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = self._key_mul(k1, k2)
                out[key] = out.get(key, ZERO) + c1 * c2
        return self._new(out)

    __rmul__ = scale

    def _same_kind(self, other):
        if not isinstance(other, _MonomialPoly) or other.kind != self.kind:
            raise MixedKindOperands(f"cannot combine {self.kind} with {getattr(other, 'kind', type(other).__name__)}")

    def __eq__(self, other):
        if not isinstance(other, _MonomialPoly):
            return NotImplemented
        return self.kind == other.kind and self.terms == other.terms

    def __hash__(self):
        return hash((self.kind, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class TrigPoly(_MonomialPoly):
    """Combination of e^{ikx} y^m, keyed by (k, m)."""

    kind = "trig"

    @classmethod
    def f(cls, n: int, k: int, coeff=1) -> "TrigPoly":
        """f_{n,k} = e^{ikx} y^{n-1}."""
        if n < 1:
            raise ValueError("f_{n,k} needs n >= 1")
        return cls({(k, n - 1): coeff})

    @staticmethod
    def _key_mul(a, b):
        return (a[0] + b[0], a[1] + b[1])

    def dx(self) -> "TrigPoly":
        return TrigPoly({(k, m): c * I * k for (k, m), c in self.terms.items()})

    def dy(self) -> "TrigPoly":
        return TrigPoly({(k, m - 1): c * m for (k, m), c in self.terms.items() if m})

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*e^(i{k}x)y^{m}" for (k, m), c in sorted(self.terms.items()))


class ComplexPoly(_MonomialPoly):
    """Combination of u^a v^b with u = (x+iy)/√2, v = (x-iy)/√2, keyed by (a, b)."""

    kind = "complex"

    @classmethod
    def g(cls, n: int, k: int, coeff=1) -> "ComplexPoly":
        """g_{n,k} = u^n v^k."""
        if n < 0 or k < 0:
            raise ValueError("g_{n,k} needs n, k >= 0")
        return cls({(n, k): coeff})

    @staticmethod
    def _key_mul(a, b):
        return (a[0] + b[0], a[1] + b[1])

    def du(self) -> "ComplexPoly":
        return ComplexPoly({(a - 1, b): c * a for (a, b), c in self.terms.items() if a})

    def dv(self) -> "ComplexPoly":
        return ComplexPoly({(a, b - 1): c * b for (a, b), c in self.terms.items() if b})

    def dx(self) -> "ComplexPoly":
        # x = (u+v)/√2, y = (u-v)/(i√2), so ∂x = (∂u + ∂v)/√2
        return (self.du() + self.dv()).scale(SQRT2.inverse())

    def dy(self) -> "ComplexPoly":
        # ∂y = i(∂u - ∂v)/√2
        return (self.du() - self.dv()).scale(I * SQRT2.inverse())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*u^{a}v^{b}" for (a, b), c in sorted(self.terms.items()))


def poisson_bracket(p: _MonomialPoly, q: _MonomialPoly) -> _MonomialPoly:
    """{p, q} = ∂x p ∂y q - ∂y p ∂x q by exact differentiation."""
    p._same_kind(q)
    return p.dx() * q.dy() - p.dy() * q.dx()


def trig_structure_constant(n: int, k: int, N: int, K: int) -> ExactScalar:
    """{f_{n,k}, f_{N,K}} = i(k(N-1) - K(n-1)) f_{n+N-2,k+K}."""
    return I * (k * (N - 1) - K * (n - 1))


def complex_structure_constant(n: int, k: int, N: int, K: int) -> ExactScalar:
    """{g_{n,k}, g_{N,K}} = i(kN - nK) g_{n+N-1,k+K-1}."""
    return I * (k * N - n * K)


# -- series bridge -----------------------------------------------------------------

BRIDGE_FN = chi(0, 1)
"""The spectator test function: idempotent and vanishing at 0."""


def _wn(a: int, b: int) -> Sym:
    return Sym("wn", a, b, BRIDGE_FN)


def winf_expand(n: int, order: int, variable: str = "k") -> LieElement:
    """Truncation of hat B^n_k as an RHPWN combination with coefficients
    polynomial in the formal index:

    (1/2^{n-1}) sum_m C(n-1, m) sum_{p+q <= order} (-1)^p k^{p+q}/(p! q!) B^{m+p}_{n-1-m+q}.

    Terms of k-degree <= ``order`` are complete.  n = 0 gives 0.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return ZERO_ELEMENT
    kv = var(variable)
    terms = {}
    pref = Fraction(1, 2 ** (n - 1))
    for m in range(n):
        base = pref * comb(n - 1, m)
        for p in range(order + 1):
            for q in range(order + 1 - p):
                c = poly(base * (-1) ** p / (factorial(p) * factorial(q))) * kv ** (p + q)
                sym = _wn(m + p, n - 1 - m + q)
                terms[sym] = terms.get(sym, ZERO_POLY) + c
    return LieElement({s: c for s, c in terms.items() if c})


def winf_series_to_json(x: LieElement) -> dict:
    """{"B^a_b": "polynomial in k"} with keys in canonical order."""
    return {f"B^{s.n}_{s.k}": str(c) for s, c in x.sorted_terms()}


def _truncate(x: LieElement, order: int, variables=("k", "K")) -> LieElement:
    out = {}
    for s, c in x.terms.items():
        kept = FormalPolynomial({m: v for m, v in c.terms.items()
                                 if sum(e for name, e in m if name in variables) <= order})
        if kept:
            out[s] = kept
    return LieElement(out)


def _monomials(order: int):
    for total in range(order + 1):
        for i in range(total, -1, -1):
            yield i, total - i


def winf_bracket_check(n: int, N: int, order: int) -> dict:
    """Compare [hat B^n_k, hat B^N_K] with (k(N-1) - K(n-1)) hat B^{n+N-2}_{k+K}
    coefficient by coefficient in k^i K^j, i + j <= order.

    The left side is computed termwise with the convolution bracket on the
    common test function; this is a formal (order-by-order) identity.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if n < 1 or N < 1:
        raise ValueError("n, N must be >= 1")
    rule = ConvolutionRule()
    left = bracket(rule, winf_expand(n, order, "k"), winf_expand(N, order, "K"))
    left = _truncate(left, order)
    k, K = var("k"), var("K")
    factor = k * (N - 1) - K * (n - 1)
    right = winf_expand(n + N - 2, order, "k").subs({"k": k + K}) * factor
    right = _truncate(right, order)
    syms = sorted(set(left.terms) | set(right.terms), key=lambda s: s._key)
    monomials = {}
    ok = True
    for i, j in _monomials(order):
        powers = {"k": i, "K": j}
        lhs = {f"B^{s.n}_{s.k}": left.coeff(s).coefficient(powers) for s in syms}
        rhs = {f"B^{s.n}_{s.k}": right.coeff(s).coefficient(powers) for s in syms}
        lhs = {key: str(v) for key, v in lhs.items() if v}
        rhs = {key: str(v) for key, v in rhs.items() if v}
        match = lhs == rhs
        ok = ok and match
        monomials[f"k^{i} K^{j}"] = {"match": match, "lhs": lhs, "rhs": rhs}
    return {"n": n, "N": N, "order": order, "ok": ok, "monomials": monomials,
            "statement": "formal order-by-order identity"}


def _z_derivative(m: int, order: int, j: int) -> LieElement:
    """d^j/dz^j at z = 0 of hat B^m_z, i.e. j! times the z^j coefficient."""
    expansion = winf_expand(m, order, "z")
    out = {}
    for s, c in expansion.terms.items():
        v = c.coefficient({"z": j})
        if v:
            out[s] = v * factorial(j)
    return LieElement(out)


def invert(n: int, k: int, order: int, literal: bool = False) -> LieElement:
    """Recover B^n_k from the w∞ expansion:

    sum_{ρ<=n, σ<=k} C(n,ρ) C(k,σ) (-1)^ρ / 2^{ρ+σ} ∂_z^{ρ+σ}|_0 hat B^{n+k+1-ρ-σ}_z.

    With ``literal`` the binomial ranges are swapped (ρ <= k, σ <= n); that
    ordering produces B^k_n instead.
    """
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    if order < n + k + 1:
        raise OrderTooSmall(f"order {order} < n + k + 1 = {n + k + 1}", order=order, needed=n + k + 1)
    rho_max, sigma_max = (k, n) if literal else (n, k)
    total = ZERO_ELEMENT
    for rho in range(rho_max + 1):
        for sigma in range(sigma_max + 1):
            coeff = Fraction(comb(rho_max, rho) * comb(sigma_max, sigma) * (-1) ** rho, 2 ** (rho + sigma))
            total = total + _z_derivative(n + k + 1 - rho - sigma, order, rho + sigma) * coeff
    return total


def rhpwn_generator(n: int, k: int) -> LieElement:
    """B^n_k on the bridge test function."""
    return LieElement.of(_wn(n, k))
