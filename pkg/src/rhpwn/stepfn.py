"""Complex step functions on the real line with rational breakpoints.

Pieces are left-open intervals ``(lo, hi]``.  Up to a null set this is the same
test-function space as any other half-open convention, but it makes the
indicator of ``(0, 1]`` vanish at the origin, which is what the convolution
renormalization's boundary condition f(0) = 0 asks for.
"""

from __future__ import annotations

from bisect import bisect_left

from .exact import ExactScalar, ZERO, parse_rational, scalar


class StepFunction:
    """Immutable canonical step function: sorted disjoint pieces, nonzero
    values, adjacent pieces with equal values merged."""

    __slots__ = ("pieces", "_hash")

    def __init__(self, pieces=()):
        raw = []
        for lo, hi, val in pieces:
            lo, hi, val = parse_rational(lo), parse_rational(hi), scalar(val)
            if hi < lo:
                raise ValueError(f"empty interval ({lo}, {hi}]")
            if hi > lo and val:
                raw.append((lo, hi, val))
        self.pieces = _canonical(raw)
        self._hash = None

    @classmethod
    def _from_canonical(cls, pieces):
        obj = object.__new__(cls)
        obj.pieces = tuple(pieces)
        obj._hash = None
        return obj

    @classmethod
    def indicator(cls, lo, hi, value=1) -> "StepFunction":
        return cls([(lo, hi, value)])

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.pieces

    def __bool__(self):
        return bool(self.pieces)

    def __call__(self, x) -> ExactScalar:
        x = parse_rational(x)
        for lo, hi, val in self.pieces:
            if lo < x <= hi:
                return val
        return ZERO

    def vanishes_at_zero(self) -> bool:
        return self(0).is_zero()

    def breakpoints(self) -> list:
        pts = set()
        for lo, hi, _ in self.pieces:
            pts.add(lo)
            pts.add(hi)
        return sorted(pts)

    def support_measure(self):
        return sum((hi - lo for lo, hi, _ in self.pieces), parse_rational(0))

    def is_indicator(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0][2] == 1

    def sup_abs2(self) -> ExactScalar:
        """max |f|^2 over the pieces (0 for the zero function)."""
        best = ZERO
        for _, _, val in self.pieces:
            a = val.abs2()
            if a > best:
                best = a
        return best

    def disjoint_from(self, other: "StepFunction") -> bool:
        return (self * other).is_zero()

    # -- algebra ----------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, StepFunction):
            s = scalar(other)
            if not s:
                return ZERO_FN
            return StepFunction._from_canonical((lo, hi, v * s) for lo, hi, v in self.pieces)
        out = []
        j = 0
        other_pieces = other.pieces
        for lo, hi, v in self.pieces:
            while j < len(other_pieces) and other_pieces[j][1] <= lo:
                j += 1
            m = j
            while m < len(other_pieces) and other_pieces[m][0] < hi:
                olo, ohi, ov = other_pieces[m]
                a, b = max(lo, olo), min(hi, ohi)
                if a < b:
                    out.append((a, b, v * ov))
                m += 1
        return StepFunction._from_canonical(_canonical(out))

    __rmul__ = __mul__

    def __add__(self, other: "StepFunction"):
        if not isinstance(other, StepFunction):
            return NotImplemented
        pts = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        out = []
        for lo, hi in zip(pts, pts[1:]):
            v = self(hi) + other(hi)
            if v:
                out.append((lo, hi, v))
        return StepFunction._from_canonical(_canonical(out))

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def conjugate(self) -> "StepFunction":
        return StepFunction._from_canonical((lo, hi, v.conjugate()) for lo, hi, v in self.pieces)

    def integral(self) -> ExactScalar:
        total = ZERO
        for lo, hi, v in self.pieces:
            total = total + v * (hi - lo)
        return total

    def restrict(self, lo, hi) -> "StepFunction":
        return self * StepFunction.indicator(lo, hi)

    def refine(self, points) -> list:
        """Pieces split at the given breakpoints (for common refinements)."""
        points = sorted(set(points))
        out = []
        for lo, hi, v in self.pieces:
            i = bisect_left(points, lo)
            cur = lo
            while i < len(points) and points[i] < hi:
                if points[i] > cur:
                    out.append((cur, points[i], v))
                    cur = points[i]
                i += 1
            out.append((cur, hi, v))
        return out

    # -- comparison -------------------------------------------------------
    def sort_key(self):
        return tuple((lo, hi, v._key()) for lo, hi, v in self.pieces)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple((lo, hi, v) for lo, hi, v in self.pieces))
        return self._hash

    def __repr__(self):
        return f"StepFunction({self})"

    def __str__(self):
        if not self.pieces:
            return "0"
        parts = []
        for lo, hi, v in self.pieces:
            chi = f"χ_{{({lo},{hi}]}}"
            if v == 1:
                parts.append(chi)
            else:
                vs = str(v)
                if not v.is_rational():
                    vs = f"({vs})"
                parts.append(f"{vs}*{chi}")
        return " + ".join(parts)


def _canonical(pieces):
    pieces = sorted(pieces, key=lambda p: (p[0], p[1]))
    out = []
    for lo, hi, v in pieces:
        if not v or hi <= lo:
            continue
        if out:
            plo, phi, pv = out[-1]
            if lo < phi:
                raise ValueError(f"overlapping pieces ({plo},{phi}] and ({lo},{hi}]")
            if lo == phi and pv == v:
                out[-1] = (plo, hi, v)
                continue
        out.append((lo, hi, v))
    return tuple(out)


def chi(lo, hi) -> StepFunction:
    """Indicator of the interval (lo, hi]."""
    return StepFunction.indicator(lo, hi)


def sf_product(f: StepFunction, g: StepFunction) -> StepFunction:
    return f * g


def sf_integral(f: StepFunction) -> ExactScalar:
    return f.integral()


def sf_conjugate(f: StepFunction) -> StepFunction:
    return f.conjugate()


ZERO_FN = StepFunction._from_canonical(())
