"""Exact arithmetic in Q(theta) for a single real generator theta.

Every instance is embedded in one field.  ``theta`` is either absent
(the field is Q), an algebraic real (arithmetic modulo its minimal
polynomial), an infinite lacunary decimal (transcendental: elements are
rational functions in theta).  Instances containing float-tagged
literals live in a separate interval-valued field whose zero tests are
never certified.
"""
import math
from fractions import Fraction

from ..errors import ValidationError
from . import poly
from .descriptors import (
    AlgebraicReal,
    FloatTagged,
    LacunaryDecimal,
    QuadraticIrrational,
    Rational,
    ScalarDescriptor,
    refine,
)
from .interval import Interval


def generator_of(d):
    """The irrational generator a descriptor needs, or None if it is rational."""
    if isinstance(d, Rational):
        return None
    if isinstance(d, QuadraticIrrational):
        return d.sqrt_generator() if d.b != 0 else None
    if isinstance(d, AlgebraicReal):
        return d if d.degree > 1 else None
    if isinstance(d, LacunaryDecimal):
        return None if d.is_finite else d
    if isinstance(d, FloatTagged):
        return d
    raise TypeError(f"not a scalar descriptor: {d!r}")


def same_generator(g, h):
    if g is None or h is None:
        return g is h
    if isinstance(g, AlgebraicReal) and isinstance(h, AlgebraicReal):
        if g.minpoly != h.minpoly:
            return False
        lo = max(g.interval[0], h.interval[0])
        hi = min(g.interval[1], h.interval[1])
        if lo > hi:
            return False
        p = g.qpoly
        return poly.count_roots(p, lo, hi) + (poly.evaluate(p, lo) == 0) >= 1
    return g == h


FLOAT = "float"
FLOAT_DIGITS = 40
# Interval endpoints are rounded outward once denominators exceed this.
_ROUND_DEN = 10 ** 80


class NumberField:
    def __init__(self, generator=None):
        self.generator = generator
        if generator is FLOAT:
            self.kind = "float"
            self.modulus = None
            self.zero = FloatElement(self, Interval.point(0))
            self.one = FloatElement(self, Interval.point(1))
            return
        if generator is None:
            self.kind = "rational"
        elif isinstance(generator, AlgebraicReal):
            self.kind = "algebraic"
        elif isinstance(generator, LacunaryDecimal):
            self.kind = "transcendental"
        else:
            raise TypeError(f"unsupported generator {generator!r}")
        self.modulus = poly.monic(generator.qpoly) if self.kind == "algebraic" else None
        self._theta_cache = {}
        self.zero = FieldElement(self, poly.ZERO)
        self.one = FieldElement(self, poly.ONE)

    @property
    def certified(self):
        return self.kind != "float"

    @property
    def degree(self):
        """Degree over Q, or None for a non-algebraic generator."""
        if self.kind == "rational":
            return 1
        if self.kind == "algebraic":
            return len(self.modulus) - 1
        return None

    @property
    def theta(self):
        if self.kind == "rational":
            raise ValueError("the rational field has no generator")
        return FieldElement(self, (Fraction(0), Fraction(1)))

    def __eq__(self, other):
        return isinstance(other, NumberField) and same_generator(self.generator, other.generator)

    def __hash__(self):
        g = self.generator
        if isinstance(g, AlgebraicReal):
            return hash(("alg", g.minpoly))
        return hash((self.kind, g))

    def __repr__(self):
        return f"NumberField({self.kind}, {self.generator!r})"

    def theta_interval(self, digits):
        iv = self._theta_cache.get(digits)
        if iv is None:
            enc = refine(self.generator, digits)
            iv = Interval(enc.lower, enc.upper)
            self._theta_cache[digits] = iv
        return iv

    def theta_point(self):
        """Rational stand-in for theta used by floating-point evaluation."""
        return self.theta_interval(25).mid

    def __call__(self, x):
        if self.kind == "float":
            return self._float_embed(x)
        if isinstance(x, FieldElement):
            if x.field is self or x.field == self:
                return x if x.field is self else FieldElement(self, x.num, x.den)
            raise ValidationError("element belongs to a different field")
        if isinstance(x, (int, Fraction)):
            return FieldElement(self, poly.trim([x]))
        if isinstance(x, ScalarDescriptor):
            return self._embed(x)
        if isinstance(x, str):
            return FieldElement(self, poly.trim([Fraction(x)]))
        raise TypeError(f"cannot embed {x!r}")

    def _float_embed(self, x):
        if isinstance(x, FloatElement):
            return x
        if isinstance(x, FieldElement):
            return FloatElement(self, x.interval(FLOAT_DIGITS))
        if isinstance(x, (int, Fraction, str)):
            return FloatElement(self, Interval.point(Fraction(x)))
        if isinstance(x, FloatTagged):
            return FloatElement(self, x.full_enclosure())
        if isinstance(x, ScalarDescriptor):
            enc = refine(x, FLOAT_DIGITS)
            return FloatElement(self, Interval(enc.lower, enc.upper))
        raise TypeError(f"cannot embed {x!r}")

    def _embed(self, d):
        g = generator_of(d)
        if g is None:
            if isinstance(d, Rational):
                return self(d.value)
            if isinstance(d, QuadraticIrrational):
                return self(d.a)
            if isinstance(d, AlgebraicReal):
                p = d.qpoly
                return self(-p[0] / p[1])
            return self(d.rational_value())
        if not same_generator(g, self.generator):
            raise ValidationError(
                "instance mixes several irrational generators; only one is supported"
            )
        if isinstance(d, QuadraticIrrational):
            return self(d.a) + self(d.b) * self.theta
        return self.theta

    def element(self, num, den=poly.ONE):
        return FieldElement(self, poly.trim(num), poly.trim(den))


def build_field(descriptors):
    """Smallest supported field containing every descriptor."""
    descriptors = list(descriptors)
    if any(isinstance(d, FloatTagged) for d in descriptors):
        return NumberField(FLOAT)
    gen = None
    for d in descriptors:
        g = generator_of(d)
        if g is None:
            continue
        if gen is None:
            gen = g
        elif not same_generator(gen, g):
            raise ValidationError(
                "instance mixes several irrational generators; only one is supported"
            )
    return NumberField(gen)


class FieldElement:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=poly.ONE):
        num = poly.trim(num)
        den = poly.trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if field.kind == "algebraic":
            if den != poly.ONE:
                num = poly.mul(num, _alg_inverse(field, den))
            if len(num) >= len(field.modulus):
                num = poly.rem(num, field.modulus)
            den = poly.ONE
        elif field.kind == "rational":
            if len(num) > 1 or len(den) > 1:
                raise ValidationError("non-constant polynomial in the rational field")
            num = poly.trim([num[0] / den[0]]) if num else poly.ZERO
            den = poly.ONE
        else:
            if not num:
                den = poly.ONE
            elif den != poly.ONE:
                g = poly.gcd_(num, den)
                if g != poly.ONE:
                    num = poly.divmod_(num, g)[0]
                    den = poly.divmod_(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = poly.scale(num, 1 / lead)
                    den = poly.scale(den, 1 / lead)
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValidationError("mixing elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, poly.trim([other]))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FieldElement(self.field, poly.add(self.num, other.num), self.den)
        num = poly.add(poly.mul(self.num, other.den), poly.mul(other.num, self.den))
        return FieldElement(self.field, num, poly.mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, poly.neg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, poly.scale(self.num, other), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(
            self.field, poly.mul(self.num, other.num), poly.mul(self.den, other.den)
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero in field")
        return FieldElement(self.field, self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FieldElement(self.field, poly.trim([other]))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_identically_zero(self):
        return not self.num

    def is_rational(self):
        return len(self.num) <= 1 and len(self.den) <= 1

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.num[0] / self.den[0] if self.num else Fraction(0)

    def interval(self, digits):
        """Interval enclosure from a theta enclosure at ``digits`` digits."""
        if self.is_rational():
            return Interval.point(self.rational_value())
        th = self.field.theta_interval(digits)
        num = poly.evaluate(self.num, th)
        if self.den == poly.ONE:
            return Interval.coerce(num)
        den = poly.evaluate(self.den, th)
        return Interval.coerce(num) / den

    def approx(self):
        """Rational value at a fixed high-precision stand-in for theta."""
        if self.is_rational():
            return self.rational_value()
        t = self.field.theta_point()
        return poly.evaluate(self.num, t) / poly.evaluate(self.den, t)

    def __float__(self):
        return float(self.approx())

    def conjugate(self):
        return self

    def __repr__(self):
        if self.field.kind == "rational":
            return f"FieldElement({self.rational_value()})"
        n = poly.to_str(self.num, "t")
        if self.den == poly.ONE:
            return f"FieldElement({n})"
        return f"FieldElement(({n}) / ({poly.to_str(self.den, 't')}))"


def _round_out(iv):
    if iv.lo.denominator <= _ROUND_DEN and iv.hi.denominator <= _ROUND_DEN:
        return iv
    scale = 10 ** 60
    lo = Fraction(math.floor(iv.lo * scale), scale)
    hi = Fraction(math.ceil(iv.hi * scale), scale)
    return Interval(lo, hi)


class FloatElement:
    """Interval-valued stand-in for a field element built from float data."""

    __slots__ = ("field", "iv")

    def __init__(self, field, iv):
        self.field = field
        self.iv = _round_out(Interval.coerce(iv))

    def _coerce(self, other):
        if isinstance(other, FloatElement):
            return other
        if isinstance(other, (int, Fraction)):
            return FloatElement(self.field, Interval.point(Fraction(other)))
        return NotImplemented

    def _wrap(self, iv):
        return FloatElement(self.field, iv)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.iv + other.iv)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.iv)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.iv - other.iv)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(other.iv - self.iv)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.iv * other.iv)

    __rmul__ = __mul__

    def inverse(self):
        return self._wrap(self.iv.inverse())

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.iv == other.iv

    def __hash__(self):
        return hash(self.iv)

    def is_identically_zero(self):
        return self.iv.lo == 0 and self.iv.hi == 0

    def is_rational(self):
        return self.iv.lo == self.iv.hi

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("float-tagged value is not exact")
        return self.iv.lo

    def interval(self, digits=0):
        return self.iv

    def approx(self):
        return self.iv.mid

    def __float__(self):
        return float(self.iv.mid)

    def conjugate(self):
        return self

    def __repr__(self):
        return f"FloatElement[{float(self.iv.lo)!r}, {float(self.iv.hi)!r}]"


def _alg_inverse(field, p):
    g, s, _ = poly.xgcd(poly.rem(p, field.modulus), field.modulus)
    if g != poly.ONE:
        raise ZeroDivisionError("element is not invertible (zero or reducible modulus)")
    return s


class ComplexElement:
    """``re + i*im`` with both parts in a real field."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        if im is None:
            im = re.field.zero
        self.re = re
        self.im = im

    @property
    def field(self):
        return self.re.field

    @classmethod
    def of(cls, field, re=0, im=0):
        return cls(field(re), field(im))

    def _coerce(self, other):
        if isinstance(other, ComplexElement):
            return other
        if isinstance(other, (FieldElement, FloatElement)):
            return ComplexElement(other, other.field.zero)
        if isinstance(other, (int, Fraction)):
            return ComplexElement(self.re.field(other), self.re.field.zero)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ComplexElement(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexElement(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ComplexElement(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement, FloatElement)):
            return ComplexElement(self.re * other, self.im * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ComplexElement(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return ComplexElement(self.re, -self.im)

    def times_i(self):
        return ComplexElement(-self.im, self.re)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.abs2()
        return ComplexElement(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElement, FloatElement)):
            return ComplexElement(self.re / other, self.im / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_identically_zero(self):
        return self.re.is_identically_zero() and self.im.is_identically_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexElement({self.re!r}, {self.im!r})"
