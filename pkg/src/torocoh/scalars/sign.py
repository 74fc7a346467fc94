"""Certified sign decisions and enclosures for field elements."""
import enum
from fractions import Fraction

from ..errors import NonconvergentError
from .descriptors import ScalarDescriptor
from .field import ComplexElement, FieldElement, FloatElement, build_field
from .interval import Interval

START_DIGITS = 20
MAX_DIGITS = 20000


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1
    UNDECIDED = None

    def __str__(self):
        return self.name.lower()


def as_element(x):
    if isinstance(x, (FieldElement, FloatElement, ComplexElement)):
        return x
    if isinstance(x, ScalarDescriptor):
        return build_field([x])(x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"cannot decide the sign of {x!r}")


def cert_sign(x):
    """Sign of a real quantity; ZERO is only returned when it is provable."""
    x = as_element(x)
    if isinstance(x, ComplexElement):
        raise TypeError("sign of a complex element is undefined")
    if isinstance(x, Fraction):
        return Sign((x > 0) - (x < 0))
    if x.is_identically_zero():
        return Sign.ZERO
    if x.is_rational():
        v = x.rational_value()
        return Sign((v > 0) - (v < 0))
    if x.field.kind == "float":
        iv = x.interval(0)
        if iv.lo > 0:
            return Sign.POSITIVE
        if iv.hi < 0:
            return Sign.NEGATIVE
        return Sign.UNDECIDED
    digits = START_DIGITS
    while digits <= MAX_DIGITS:
        try:
            iv = x.interval(digits)
        except ZeroDivisionError:
            iv = None
        if iv is not None and iv.lo > 0:
            return Sign.POSITIVE
        if iv is not None and iv.hi < 0:
            return Sign.NEGATIVE
        digits *= 2
    raise NonconvergentError("sign undetermined at maximum precision")


def enclose(x, digits=30):
    """Interval around a real element with width at most ``10**-digits``.

    Float-tagged elements return their best available enclosure.
    """
    x = as_element(x)
    if isinstance(x, Fraction):
        return Interval.point(x)
    if x.is_rational():
        return Interval.point(x.rational_value())
    if x.field.kind == "float":
        return x.interval(0)
    target = Fraction(1, 10 ** digits)
    d = digits + 5
    while d <= MAX_DIGITS:
        try:
            iv = x.interval(d)
            if iv.width <= target:
                return iv
        except ZeroDivisionError:
            pass
        d *= 2
    raise NonconvergentError("enclosure did not tighten")


def positive_enclosure(x, rel=Fraction(1, 10 ** 6)):
    """Enclosure of a provably positive element with relative width <= rel."""
    x = as_element(x)
    if isinstance(x, Fraction) or x.is_rational():
        v = x if isinstance(x, Fraction) else x.rational_value()
        return Interval.point(v)
    if x.field.kind == "float":
        return x.interval(0)
    d = START_DIGITS
    while d <= MAX_DIGITS:
        try:
            iv = x.interval(d)
        except ZeroDivisionError:
            iv = None
        if iv is not None and iv.lo > 0 and iv.width <= rel * iv.lo:
            return iv
        d *= 2
    raise NonconvergentError("could not separate value from zero")


def norm_enclosure(vector, digits=30):
    """Enclosure of the Euclidean norm of a vector of ComplexElements."""
    total = None
    for z in vector:
        a = z.abs2()
        total = a if total is None else total + a
    if total is None or total.is_identically_zero():
        return Interval.point(0)
    iv = positive_enclosure(total)
    return iv.sqrt(digits)
