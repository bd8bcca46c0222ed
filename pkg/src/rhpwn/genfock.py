"""Closed-form structures of the generalized Fock representation.

One mode: the vectors |k> = (B^n_0(χ_I))^k Φ with μ = |I|.  B^n_0 raises,
B^0_n lowers, B^{n-1}_{n-1} is diagonal.  The lowering coefficient is not
taken from a table: it is summed from the diagonal eigenvalues using
[B^0_n, B^n_0] = n^2 B^{n-1}_{n-1} and B^0_n Φ = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath

from .errors import DomainViolation
from .exact import ExactScalar, scalar
from .stepfn import StepFunction


def gen_fock_inner(n: int, j: int, m: int, mu) -> Fraction:
    """<(B^n_0)^j Φ, (B^n_0)^m Φ> = δ_jm j! n^j prod_{i<j} (μ + n^2(n-1) i / 2)."""
    if n < 1 or j < 0 or m < 0:
        raise ValueError("need n >= 1 and j, m >= 0")
    if j != m:
        return Fraction(0)
    mu = Fraction(mu)
    out = Fraction(factorial(j) * n ** j)
    for i in range(j):
        out *= mu + Fraction(n * n * (n - 1) * i, 2)
    return out


def diag_eigenvalue(n: int, mu, k: int) -> Fraction:
    """B^{n-1}_{n-1} |k> = (μ/n + k n (n-1)) |k>."""
    return Fraction(mu) / n + k * n * (n - 1)


def lower_coefficient(n: int, mu, k: int) -> Fraction:
    """λ_k with B^0_n |k> = λ_k |k-1>, derived as sum_{j<k} n^2 diag(j)."""
    return sum((n * n * diag_eigenvalue(n, mu, j) for j in range(k)), Fraction(0))


def lower_coefficient_closed(n: int, mu, k: int) -> Fraction:
    """k n μ + n^3 (n-1) k (k-1) / 2 (kept only to test the derivation)."""
    return k * n * Fraction(mu) + Fraction(n ** 3 * (n - 1) * k * (k - 1), 2)


@dataclass(frozen=True)
class LadderState:
    n: int
    mu: Fraction
    amplitudes: dict = field(default_factory=dict)

    @classmethod
    def basis(cls, n: int, mu, k: int) -> "LadderState":
        return cls(n, Fraction(mu), {k: Fraction(1)})

    def clean(self) -> "LadderState":
        return LadderState(self.n, self.mu, {k: a for k, a in self.amplitudes.items() if a})

    def __add__(self, other):
        out = dict(self.amplitudes)
        for k, a in other.amplitudes.items():
            out[k] = out.get(k, 0) + a
        return LadderState(self.n, self.mu, out).clean()

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s) -> "LadderState":
        return LadderState(self.n, self.mu, {k: a * s for k, a in self.amplitudes.items()}).clean()


def ladder_apply(which: str, s: LadderState) -> LadderState:
    out = {}
    for k, a in s.amplitudes.items():
        if which == "raise":
            out[k + 1] = out.get(k + 1, 0) + a
        elif which == "diag":
            out[k] = out.get(k, 0) + a * diag_eigenvalue(s.n, s.mu, k)
        elif which == "lower":
            if k > 0:
                out[k - 1] = out.get(k - 1, 0) + a * lower_coefficient(s.n, s.mu, k)
        else:
            raise ValueError(f"unknown ladder operator {which!r}")
    return LadderState(s.n, s.mu, out).clean()


def ladder_inner(u: LadderState, v: LadderState) -> Fraction:
    """<u, v> computed by lowering: <|j>, |m>> = <Φ, lower^j |m>>."""
    total = Fraction(0)
    for j, a in u.amplitudes.items():
        state = v
        for _ in range(j):
            state = ladder_apply("lower", state)
        total += Fraction(a) * state.amplitudes.get(0, 0)
    return total


def ladder_moment(n: int, mu, m: int) -> Fraction:
    """<Φ, (B^n_0 + B^0_n)^m Φ> in the ladder representation."""
    state = LadderState.basis(n, mu, 0)
    for _ in range(m):
        state = ladder_apply("raise", state) + ladder_apply("lower", state)
    return state.amplitudes.get(0, Fraction(0))


# -- exponential vectors -------------------------------------------------------

def domain_bound_sq(n: int) -> Fraction:
    """Square of the sup-norm bound (1/n) sqrt(2/(n(n-1)))."""
    return Fraction(2, n ** 3 * (n - 1))


def _check_domain(n: int, *fs: StepFunction) -> None:
    if n < 2:
        return
    bound = domain_bound_sq(n)
    for f in fs:
        if not f.sup_abs2() < scalar(bound):
            raise DomainViolation(f"sup|f|^2 = {f.sup_abs2()} is not below {bound} for n = {n}",
                                  n=n, bound_sq=str(bound))


def _mp(x: ExactScalar):
    r2 = mpmath.sqrt(2)
    re = mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * r2
    im = mpmath.mpf(x.c.numerator) / x.c.denominator + mpmath.mpf(x.d.numerator) / x.d.denominator * r2
    return mpmath.mpc(re, im) if im else re


def _log_kernel(n: int, f: StepFunction, g: StepFunction):
    prod = f.conjugate() * g
    if n == 1:
        return _mp(prod.integral())
    a = mpmath.mpf(n ** 3 * (n - 1)) / 2
    total = mpmath.mpf(0)
    for lo, hi, val in prod.pieces:
        length = mpmath.mpf(hi.numerator) / hi.denominator - mpmath.mpf(lo.numerator) / lo.denominator
        total += length * mpmath.log(1 - a * _mp(val))
    return -mpmath.mpf(2) / (n * n * (n - 1)) * total


def exp_kernel(n: int, f: StepFunction, g: StepFunction, dps: int = 30):
    """<ψ_n(f), ψ_n(g)> as an mpmath number at ``dps`` decimal digits."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_domain(n, f, g)
    with mpmath.workdps(dps):
        return +mpmath.exp(_log_kernel(n, f, g))


def exp_kernel_report(n: int, f: StepFunction, g: StepFunction, dps: int = 30) -> dict:
    """Kernel value with an error estimate from a recomputation at higher precision."""
    value = exp_kernel(n, f, g, dps)
    ref = exp_kernel(n, f, g, dps + 20)
    with mpmath.workdps(dps + 20):
        err = abs(ref - value)
        bound = err + abs(ref) * mpmath.mpf(10) ** (-dps)
    return {"value": value, "error_bound": bound, "dps": dps}


def action_check(n: int, f: StepFunction, g: StepFunction, h: StepFunction, step=Fraction(1, 10 ** 6),
                 dps: int = 40) -> dict:
    """Check <ψ(h), B^0_n(f) ψ(g)> against the stated action on exponential vectors.

    LHS: the adjoint of B^0_n(f) is B^n_0(f̄), which differentiates ψ(h) in the
    direction f̄, so LHS = d/dε K(h + ε f̄, g).
    RHS: n ∫ f g K(h, g) + (n^3 (n-1)/2) d/dε K(h, g + ε f g^2).
    Derivatives are central differences evaluated in extended precision.
    """
    step = Fraction(step)
    fbar = f.conjugate()
    fg2 = f * g * g
    _check_domain(n, f, g, h)

    def shifted(base, direction, eps):
        return base + direction * eps

    def deriv(kernel_of):
        plus = kernel_of(step)
        minus = kernel_of(-step)
        return (plus - minus) / (2 * mpmath.mpf(step.numerator) / step.denominator)

    with mpmath.workdps(dps):
        lhs = deriv(lambda e: exp_kernel(n, shifted(h, fbar, e), g, dps))
        k_hg = exp_kernel(n, h, g, dps)
        rhs = n * _mp((f * g).integral()) * k_hg
        coef = mpmath.mpf(n ** 3 * (n - 1)) / 2
        if coef:
            rhs += coef * deriv(lambda e: exp_kernel(n, h, shifted(g, fg2, e), dps))
        residual = abs(lhs - rhs)
    return {"n": n, "lhs": lhs, "rhs": rhs, "residual": residual, "step": str(step)}


def exp_vector_gram(n: int, functions, dps: int = 30):
    """Matrix of exponential-vector inner products as complex numbers."""
    return [[complex(exp_kernel(n, f, g, dps)) for g in functions] for f in functions]
