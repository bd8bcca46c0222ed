"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class PowerSeries:
    """c_0 + c_1 s + ... + c_order s^order, arithmetic exact up to ``order``."""

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs, order: int | None = None, var: str = "s"):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        self.coeffs = tuple(coeffs)
        self.order = order
        self.var = var

    @classmethod
    def constant(cls, c, order: int, var: str = "s") -> "PowerSeries":
        return cls([c], order, var)

    @classmethod
    def monomial(cls, c, power: int, order: int, var: str = "s") -> "PowerSeries":
        coeffs = [Fraction(0)] * (order + 1)
        if power <= order:
            coeffs[power] = Fraction(c)
        return cls(coeffs, order, var)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.order, self.var)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.order else Fraction(0)

    def __add__(self, other):
        o = self._coerce(other)
        order = min(self.order, o.order)
        return PowerSeries([self[i] + o[i] for i in range(order + 1)], order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = Fraction(other)
            return PowerSeries([x * c for x in self.coeffs], self.order, self.var)
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a:
                for j in range(order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return PowerSeries(out, order, self.var)

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries([0], 0, self.var)
        return PowerSeries([i * self.coeffs[i] for i in range(1, self.order + 1)], self.order - 1, self.var)

    def integral(self) -> "PowerSeries":
        """Antiderivative with zero constant term (order grows by one)."""
        return PowerSeries([0] + [self.coeffs[i] / (i + 1) for i in range(self.order + 1)],
                           self.order + 1, self.var)

    def reciprocal(self) -> "PowerSeries":
        if not self.coeffs[0]:
            raise ZeroDivisionError("reciprocal needs a nonzero constant term")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / self.coeffs[0]
        for m in range(1, self.order + 1):
            acc = sum((self.coeffs[i] * out[m - i] for i in range(1, m + 1)), Fraction(0))
            out[m] = -acc / self.coeffs[0]
        return PowerSeries(out, self.order, self.var)

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def exp(self) -> "PowerSeries":
        """exp of a series with zero constant term, via E' = f' E."""
        if self.coeffs[0]:
            raise ValueError("exp needs a zero constant term to stay rational")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = Fraction(1)
        d = [i * self.coeffs[i] for i in range(self.order + 1)]
        for m in range(1, self.order + 1):
            out[m] = sum((d[i] * out[m - i] for i in range(1, m + 1)), Fraction(0)) / m
        return PowerSeries(out, self.order, self.var)

    def log(self) -> "PowerSeries":
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        if self.order == 0:
            return PowerSeries([0], 0, self.var)
        quotient = self.derivative() * self.reciprocal()
        return quotient.integral()

    def pow(self, alpha) -> "PowerSeries":
        """self**alpha for rational alpha and constant term 1, as exp(alpha log)."""
        return (self.log() * Fraction(alpha)).exp()

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return all(self[i] == other[i] for i in range(order + 1))

    def __repr__(self):
        return f"PowerSeries({self})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                parts.append(mono if c == 1 else f"({c})*{mono}")
        parts.append(f"O({self.var}^{self.order + 1})")
        return " + ".join(parts)


def exp_series(order: int, var: str = "s") -> PowerSeries:
    return PowerSeries([Fraction(1, factorial(i)) for i in range(order + 1)], order, var)


def cos_series(scale_sq, order: int, var: str = "s") -> PowerSeries:
    """cos(C s) where only C^2 = ``scale_sq`` is needed (even powers only)."""
    scale_sq = Fraction(scale_sq)
    out = [Fraction(0)] * (order + 1)
    for j in range(order // 2 + 1):
        out[2 * j] = (-1) ** j * scale_sq ** j / factorial(2 * j)
    return PowerSeries(out, order, var)
