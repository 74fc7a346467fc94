"""Rigorous log10-space enclosures backed by mpmath interval arithmetic."""
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv

from .descriptors import PowerOfTen, exp_value

DEFAULT_DPS = 50


@contextmanager
def precision(dps):
    old = iv.dps
    iv.dps = max(int(dps), 15)
    try:
        yield
    finally:
        iv.dps = old


def dps_for(*values):
    """Working precision wide enough to hold the given integers exactly."""
    need = DEFAULT_DPS
    for v in values:
        v = exp_value(v)
        if isinstance(v, int):
            need = max(need, len(str(abs(v))) + 30)
        elif isinstance(v, Fraction):
            need = max(need, len(str(abs(v.numerator))) + len(str(v.denominator)) + 30)
    return min(need, 5000)


def to_iv(x):
    """Interval for an int, Fraction, PowerOfTen, or iv.mpf value."""
    x = exp_value(x)
    if isinstance(x, PowerOfTen):
        return iv.mpf(10) ** x.k
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return iv.mpf(x)
    return iv.mpf(x)


def _end(x, upper):
    """Real endpoint of an iv value as an mpf (rounded outward)."""
    if hasattr(x, "_mpi_"):
        return mpmath.mp.make_mpf(x._mpi_[1 if upper else 0])
    return x


def _fmt(x, digits):
    return mpmath.nstr(x, digits, min_fixed=-20, max_fixed=20)


@dataclass(frozen=True)
class LogEnclosure:
    """Certified bounds ``lo <= log10(value) <= hi``."""

    lo: object
    hi: object

    def __post_init__(self):
        object.__setattr__(self, "lo", _end(self.lo, False))
        object.__setattr__(self, "hi", _end(self.hi, True))

    @classmethod
    def from_iv(cls, x):
        return cls(_end(x, False), _end(x, True))

    @classmethod
    def of_positive_interval(cls, interval):
        with precision(DEFAULT_DPS):
            lo = iv.log10(to_iv(interval.lo))
            hi = iv.log10(to_iv(interval.hi))
            return cls(_end(lo, False), _end(hi, True))

    def as_iv(self):
        return iv.mpf([self.lo, self.hi])

    @property
    def width(self):
        with precision(_dps_of(self)):
            return _end(self.as_iv().delta, True)

    def __add__(self, other):
        with precision(max(_dps_of(self), _dps_of(other))):
            o = other.as_iv() if isinstance(other, LogEnclosure) else to_iv(other)
            return LogEnclosure.from_iv(self.as_iv() + o)

    def __neg__(self):
        return LogEnclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        with precision(max(_dps_of(self), _dps_of(other))):
            o = other.as_iv() if isinstance(other, LogEnclosure) else to_iv(other)
            return LogEnclosure.from_iv(self.as_iv() - o)

    def __mul__(self, other):
        with precision(max(_dps_of(self), _dps_of(other))):
            o = other.as_iv() if isinstance(other, LogEnclosure) else to_iv(other)
            return LogEnclosure.from_iv(self.as_iv() * o)

    __rmul__ = __mul__

    def certainly_less(self, other):
        return self.hi < other.lo

    def certainly_greater(self, other):
        return self.lo > other.hi

    def compare(self, other):
        """-1 / +1 when certified, 0 when the enclosures overlap."""
        if self.certainly_less(other):
            return -1
        if self.certainly_greater(other):
            return 1
        return 0

    def to_json(self, digits=25):
        return {"log10_lo": _fmt(self.lo, digits), "log10_hi": _fmt(self.hi, digits)}

    def __repr__(self):
        return f"LogEnclosure[{_fmt(self.lo, 12)}, {_fmt(self.hi, 12)}]"


def _dps_of(x):
    if isinstance(x, LogEnclosure):
        return max(DEFAULT_DPS, _mag_dps(x.lo), _mag_dps(x.hi))
    return DEFAULT_DPS


def _mag_dps(x):
    """Digits needed to resolve a unit-size difference at the magnitude of x."""
    if x == 0 or not mpmath.isfinite(x):
        return DEFAULT_DPS
    m = int(mpmath.mag(x))
    return min(DEFAULT_DPS + max(0, int(m * 0.30103)), 5000)


def log10_e(dps=DEFAULT_DPS):
    with precision(dps):
        return iv.log10(iv.e)


def log10_const(x, dps=DEFAULT_DPS):
    with precision(dps):
        return iv.log10(to_iv(x))
