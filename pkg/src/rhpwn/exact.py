"""Exact scalars in the field Q(i, sqrt 2).

A value is stored as four rationals ``(a, b, c, d)`` meaning
``a + b*sqrt2 + (c + d*sqrt2)*i``.  Every constant the algebra engines need
(Pochhammer products, the 1/sqrt2 of the complex coordinates, complex test
function values) lives here, so nothing downstream touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

# gmpy2's mpq is a drop-in exact rational (compares and hashes like Fraction)
# and several times faster, which matters for the exhaustive axiom sweeps.
RAT = type(mpq(0))

__all__ = ["ExactScalar", "Q", "ZERO", "ONE", "I", "SQRT2", "as_scalar", "parse_rational"]


def parse_rational(value):
    """Coerce ints, Fractions and strings like ``"3/4"`` to an exact rational.

    Floats are rejected: silently importing binary rounding would defeat the
    point of the exact engine.
    """
    if isinstance(value, RAT):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Rational):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return mpq(Fraction(text))
        except ValueError as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


Q = parse_rational

_F0 = mpq(0)
_F1 = mpq(1)


def _sqrt2_sign(p, q) -> int:
    """Sign of p + q*sqrt2."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if (p > 0) == (q > 0):
        return 1 if p > 0 else -1
    # opposite signs: compare p^2 with 2 q^2
    if p * p > 2 * q * q:
        return 1 if p > 0 else -1
    return 1 if q > 0 else -1


class ExactScalar:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = parse_rational(a)
        self.b = parse_rational(b)
        self.c = parse_rational(c)
        self.d = parse_rational(d)

    @classmethod
    def _raw(cls, a, b, c, d) -> "ExactScalar":
        obj = object.__new__(cls)
        obj.a, obj.b, obj.c, obj.d = a, b, c, d
        return obj

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_real(self) -> bool:
        return not (self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = as_scalar(other)
        if o is None:
            return NotImplemented
        if not (self.b or self.c or self.d or o.b or o.c or o.d):
            return ExactScalar._raw(self.a + o.a, _F0, _F0, _F0)
        return ExactScalar._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.a, -self.b, -self.c, -self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = as_scalar(other)
        if o is None:
            return NotImplemented
        return ExactScalar._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = as_scalar(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = as_scalar(other)
        if o is None:
            return NotImplemented
        if not (o.b or o.c or o.d):
            r = o.a
            if not (self.b or self.c or self.d):
                return ExactScalar._raw(self.a * r, _F0, _F0, _F0)
            return ExactScalar._raw(self.a * r, self.b * r, self.c * r, self.d * r)
        if not (self.b or self.c or self.d):
            r = self.a
            return ExactScalar._raw(o.a * r, o.b * r, o.c * r, o.d * r)
        # (x1 + y1 i)(x2 + y2 i), x and y in Q(sqrt2)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        re_a = a1 * a2 + 2 * b1 * b2 - (c1 * c2 + 2 * d1 * d2)
        re_b = a1 * b2 + b1 * a2 - (c1 * d2 + d1 * c2)
        im_a = a1 * c2 + 2 * b1 * d2 + c1 * a2 + 2 * d1 * b2
        im_b = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return ExactScalar._raw(re_a, re_b, im_a, im_b)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.is_rational():
            return ExactScalar._raw(1 / self.a, _F0, _F0, _F0)
        # |z|^2 = x^2 + y^2 = p + q sqrt2
        p = self.a * self.a + 2 * self.b * self.b + self.c * self.c + 2 * self.d * self.d
        q = 2 * self.a * self.b + 2 * self.c * self.d
        den = p * p - 2 * q * q
        inv_norm = ExactScalar._raw(p / den, -q / den, _F0, _F0)
        return self.conjugate() * inv_norm

    def __truediv__(self, other):
        o = as_scalar(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_scalar(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._raw(self.a, self.b, -self.c, -self.d)

    def real(self) -> "ExactScalar":
        return ExactScalar._raw(self.a, self.b, _F0, _F0)

    def imag(self) -> "ExactScalar":
        return ExactScalar._raw(self.c, self.d, _F0, _F0)

    def abs2(self) -> "ExactScalar":
        """|z|^2 as a real scalar."""
        return (self * self.conjugate()).real()

    def sign(self) -> int:
        """Sign of a real scalar; raises for non-real input."""
        if not self.is_real():
            raise ValueError(f"sign of non-real scalar {self}")
        return _sqrt2_sign(self.a, self.b)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(int(self.a.numerator), int(self.a.denominator))

    def __complex__(self) -> complex:
        r2 = 2 ** 0.5
        return complex(float(self.a) + float(self.b) * r2, float(self.c) + float(self.d) * r2)

    def __float__(self) -> float:
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return float(self.a) + float(self.b) * 2 ** 0.5

    # -- comparison / hashing -------------------------------------------
    def _key(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        o = as_scalar(other)
        if o is None:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        if not (self.b or self.c or self.d):
            return hash(self.a)
        return hash(self._key())

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- printing -------------------------------------------------------
    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        def part(p, q) -> str:
            bits = []
            if p:
                bits.append(str(p))
            if q:
                if q == 1:
                    bits.append("√2")
                elif q == -1:
                    bits.append("-√2")
                else:
                    bits.append(f"{q}√2")
            return "+".join(bits).replace("+-", "-")

        re = part(self.a, self.b)
        im = part(self.c, self.d)
        if not im:
            return re or "0"
        if (self.c == 0) != (self.d == 0):
            im_s = {"1": "i", "-1": "-i"}.get(im, f"{im}i")
        else:
            im_s = f"({im})i"
        if not re:
            return im_s
        return f"{re}+{im_s}".replace("+-", "-")


def as_scalar(value) -> ExactScalar | None:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, RAT):
        return ExactScalar._raw(value, _F0, _F0, _F0)
    if isinstance(value, int) and not isinstance(value, bool):
        return ExactScalar._raw(mpq(value), _F0, _F0, _F0)
    if isinstance(value, Rational):
        return ExactScalar._raw(mpq(value.numerator, value.denominator), _F0, _F0, _F0)
    return None


def scalar(value) -> ExactScalar:
    """Like :func:`as_scalar` but raising on unsupported input."""
    s = as_scalar(value)
    if s is None:
        if isinstance(value, str):
            return ExactScalar(value)
        raise TypeError(f"cannot interpret {value!r} as an exact scalar")
    return s


ZERO = ExactScalar()
ONE = ExactScalar(1)
I = ExactScalar(0, 0, 1, 0)
SQRT2 = ExactScalar(0, 1)
