"""Closed intervals with rational endpoints and exact outward arithmetic."""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def sqrt_bounds(x, digits):
    """Rational ``(lo, hi)`` with ``lo <= sqrt(x) <= hi`` and ``hi - lo <= 10**-digits``."""
    x = _frac(x)
    if x < 0:
        raise ValueError("sqrt of negative rational")
    scale = 10 ** digits
    sq = x * scale * scale
    fl = sq.numerator // sq.denominator
    lo = isqrt(fl)
    hi = lo if lo * lo == sq else lo + 1
    return Fraction(lo, scale), Fraction(hi, scale)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x):
        x = _frac(x)
        return cls(x, x)

    @staticmethod
    def coerce(x):
        return x if isinstance(x, Interval) else Interval.point(x)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        return self.lo <= x <= self.hi

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def intersects(self, other):
        other = Interval.coerce(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        other = Interval.coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Interval.coerce(other))

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __mul__(self, other):
        other = Interval.coerce(other)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def square(self):
        if self.lo >= 0:
            return Interval(self.lo ** 2, self.hi ** 2)
        if self.hi <= 0:
            return Interval(self.hi ** 2, self.lo ** 2)
        return Interval(0, max(self.lo ** 2, self.hi ** 2))

    def inverse(self):
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * Interval.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Interval.coerce(other) * self.inverse()

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi))

    def sqrt(self, digits=30):
        if self.hi < 0:
            raise ValueError("sqrt of negative interval")
        lo = sqrt_bounds(max(self.lo, Fraction(0)), digits)[0]
        hi = sqrt_bounds(self.hi, digits)[1]
        return Interval(lo, hi)

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"
