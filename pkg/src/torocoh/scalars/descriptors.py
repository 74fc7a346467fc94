"""Scalar descriptors: immutable certified descriptions of real numbers."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

import sympy

from ..errors import NonconvergentError, UncertifiableError, ValidationError
from . import poly
from .interval import Interval

MAX_BISECTIONS = 10 ** 6
# Exponents with more decimal digits than this are kept symbolic.
MATERIALIZE_LIMIT = 4000


def _squarefree(d):
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True, order=True)
class PowerOfTen:
    """The positive integer ``10**k`` for ``k`` too large to materialize."""

    k: int

    def __repr__(self):
        return f"10^{self.k}"


def exp_value(e):
    """Materialize an exponent if that is cheap, else return it unchanged."""
    if isinstance(e, PowerOfTen) and e.k <= MATERIALIZE_LIMIT:
        return 10 ** e.k
    return e


def exp_compare(a, b):
    """Three-way comparison of two exponents (ints or PowerOfTen)."""
    a, b = exp_value(a), exp_value(b)
    if isinstance(a, int) and isinstance(b, int):
        return (a > b) - (a < b)
    if isinstance(a, PowerOfTen) and isinstance(b, PowerOfTen):
        return (a.k > b.k) - (a.k < b.k)
    if isinstance(a, PowerOfTen):
        # 10**k has k + 1 digits
        if b < 0 or len(str(b)) <= a.k:
            return 1
        va = 10 ** a.k
        return (va > b) - (va < b)
    return -exp_compare(b, a)


@dataclass(frozen=True)
class CertifiedEnclosure:
    lower: Fraction
    upper: Fraction
    exact: bool = False

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower > upper")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact enclosure must be a point")

    @property
    def width(self):
        return self.upper - self.lower

    def as_interval(self):
        return Interval(self.lower, self.upper)

    def contains(self, x):
        return self.lower <= x <= self.upper


class ScalarDescriptor:
    """Base class for all scalar kinds."""

    kind = "abstract"
    certified = True

    def enclosure(self, digits):
        return refine(self, digits)


@dataclass(frozen=True)
class Rational(ScalarDescriptor):
    value: Fraction
    kind = "rational"

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def of(cls, num, den=1):
        if den == 0:
            raise ValidationError("zero denominator")
        return cls(Fraction(num, den))

    @property
    def numerator(self):
        return self.value.numerator

    @property
    def denominator(self):
        return self.value.denominator


@dataclass(frozen=True)
class AlgebraicReal(ScalarDescriptor):
    """Real root of an irreducible integer polynomial inside an isolating interval.

    ``minpoly`` lists coefficients lowest degree first.
    """

    minpoly: tuple
    interval: tuple
    kind = "algebraic"

    def __post_init__(self):
        p = poly.trim(self.minpoly)
        if len(p) < 2:
            raise ValidationError("minimal polynomial must have degree >= 1")
        ints = poly.primitive_integer(p)
        lo, hi = (Fraction(x) for x in self.interval)
        if lo > hi:
            raise ValidationError("isolating interval is empty")
        object.__setattr__(self, "minpoly", ints)
        object.__setattr__(self, "interval", (lo, hi))
        fp = self.qpoly
        if self.degree > 1:
            x = sympy.Symbol("x")
            if not sympy.Poly(list(reversed(ints)), x).is_irreducible:
                raise ValidationError(f"polynomial {ints} is not irreducible over Q")
            if poly.evaluate(fp, lo) == 0 or poly.evaluate(fp, hi) == 0:
                raise ValidationError("isolating interval endpoint is a root")
        n_roots = poly.count_roots(fp, lo, hi) + (1 if poly.evaluate(fp, lo) == 0 else 0)
        if n_roots != 1:
            raise ValidationError(f"interval [{lo}, {hi}] holds {n_roots} roots, expected 1")

    @property
    def qpoly(self):
        return poly.trim(self.minpoly)

    @property
    def degree(self):
        return len(self.minpoly) - 1


@dataclass(frozen=True)
class QuadraticIrrational(ScalarDescriptor):
    """The number ``a + b*sqrt(D)`` for square-free ``D > 1``."""

    a: Fraction
    b: Fraction
    D: int
    kind = "quadratic"

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not _squarefree(self.D) or self.D == 1:
            raise ValidationError(f"D={self.D} must be square-free and > 1")

    def sqrt_generator(self):
        r = isqrt(self.D)
        return AlgebraicReal((-self.D, 0, 1), (r, r + 1))


def _factorial_pow10(j):
    k = factorial(j)
    return 10 ** k if k <= MATERIALIZE_LIMIT else PowerOfTen(k)


@lru_cache(maxsize=None)
def _supergap(j):
    if j == 1:
        return 1
    prev = _supergap(j - 1)
    if isinstance(prev, PowerOfTen):
        raise OverflowError("supergap exponent beyond a single power-of-ten tower")
    k = (j - 1) * prev
    return 10 ** k if k <= MATERIALIZE_LIMIT else PowerOfTen(k)


LACUNARY_RULES = ("factorial-pow10", "supergap", "custom")


@dataclass(frozen=True)
class LacunaryDecimal(ScalarDescriptor):
    """``sum_j 10**(-N_j)`` for a strictly increasing exponent sequence.

    Rules: ``factorial-pow10`` (N_j = 10**(j!)), ``supergap`` (N_1 = 1,
    N_{j+1} = 10**(j*N_j)) and ``custom`` (a finite explicit list, which
    makes the value a terminating decimal).
    """

    rule: str
    exponents: tuple = field(default=())
    kind = "lacunary"

    def __post_init__(self):
        if self.rule not in LACUNARY_RULES:
            raise ValidationError(f"unknown lacunary rule {self.rule!r}")
        ex = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", ex)
        if self.rule == "custom":
            if not ex:
                raise ValidationError("custom lacunary rule needs exponents")
            if ex[0] < 1 or any(b <= a for a, b in zip(ex, ex[1:])):
                raise ValidationError("exponents must be strictly increasing with N_1 >= 1")

    @property
    def is_finite(self):
        return self.rule == "custom"

    def exponent(self, j):
        """N_j as an int, or a PowerOfTen when it is astronomically large."""
        if j < 1:
            raise ValueError("terms are indexed from 1")
        if self.rule == "factorial-pow10":
            return _factorial_pow10(j)
        if self.rule == "supergap":
            return _supergap(j)
        return self.exponents[j - 1] if j <= len(self.exponents) else None

    def partial_sum(self, k):
        total = Fraction(0)
        for j in range(1, k + 1):
            e = exp_value(self.exponent(j))
            if not isinstance(e, int):
                raise OverflowError("partial sum term too small to materialize")
            total += Fraction(1, 10 ** e)
        return total

    def rational_value(self):
        if not self.is_finite:
            raise ValueError("infinite lacunary series is irrational")
        return self.partial_sum(len(self.exponents))


@dataclass(frozen=True)
class FloatTagged(ScalarDescriptor):
    """A decimal literal with a claimed absolute error; evidence only."""

    value: str
    err: Fraction
    kind = "float"
    certified = False

    def __post_init__(self):
        object.__setattr__(self, "err", Fraction(self.err))
        Fraction(self.value)
        if self.err < 0:
            raise ValidationError("claimed error must be non-negative")

    @property
    def center(self):
        return Fraction(self.value)

    def full_enclosure(self):
        return Interval(self.center - self.err, self.center + self.err)


@lru_cache(maxsize=4096)
def _bisect(minpoly, lo, hi, digits, cap):
    p = poly.trim(minpoly)
    target = Fraction(1, 10 ** digits)
    flo = poly.evaluate(p, lo)
    steps = 0
    while hi - lo > target:
        mid = (lo + hi) / 2
        fm = poly.evaluate(p, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        steps += 1
        if steps > cap:
            raise NonconvergentError(f"no convergence after {cap} bisections")
    return lo, hi


def refine(s, digits, max_bisections=MAX_BISECTIONS):
    """Certified enclosure of ``s`` with width at most ``10**-digits``."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if isinstance(s, Rational):
        return CertifiedEnclosure(s.value, s.value, True)
    if isinstance(s, QuadraticIrrational):
        if s.b == 0:
            return CertifiedEnclosure(s.a, s.a, True)
        extra = len(str(abs(s.b.numerator))) + 1
        scale = 10 ** (digits + extra)
        r = isqrt(s.D * scale * scale)
        lo, hi = Fraction(r, scale), Fraction(r + 1, scale)
        ends = sorted((s.a + s.b * lo, s.a + s.b * hi))
        return CertifiedEnclosure(ends[0], ends[1])
    if isinstance(s, AlgebraicReal):
        p = s.qpoly
        if s.degree == 1:
            root = -p[0] / p[1]
            return CertifiedEnclosure(root, root, True)
        lo, hi = _bisect(s.minpoly, s.interval[0], s.interval[1], digits, max_bisections)
        return CertifiedEnclosure(lo, hi, lo == hi)
    if isinstance(s, LacunaryDecimal):
        if s.is_finite:
            v = s.rational_value()
            return CertifiedEnclosure(v, v, True)
        k = 0
        while True:
            e = exp_value(s.exponent(k + 1))
            if not isinstance(e, int) or e > digits + 1:
                break
            k += 1
        lower = s.partial_sum(k)
        nxt = exp_value(s.exponent(k + 1))
        cut = min(nxt, digits + 2) if isinstance(nxt, int) else digits + 2
        # tail <= (10/9) * 10**-N_{k+1}
        upper = lower + Fraction(10, 9) / 10 ** cut
        return CertifiedEnclosure(lower, upper)
    if isinstance(s, FloatTagged):
        if 2 * s.err > Fraction(1, 10 ** digits):
            raise UncertifiableError(
                f"claimed error {s.err} cannot support {digits} digits"
            )
        iv = s.full_enclosure()
        return CertifiedEnclosure(iv.lo, iv.hi, s.err == 0)
    raise TypeError(f"not a scalar descriptor: {s!r}")
