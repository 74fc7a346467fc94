"""Effective Liouville-type lower bounds for algebraic numbers."""
from fractions import Fraction

from ..errors import NotAlgebraicError
from . import poly
from .descriptors import AlgebraicReal, QuadraticIrrational


def as_algebraic(s):
    """The AlgebraicReal form of an irrational algebraic descriptor."""
    if isinstance(s, AlgebraicReal):
        if s.degree < 2:
            raise NotAlgebraicError("rational numbers have no Liouville bound")
        return s
    if isinstance(s, QuadraticIrrational):
        if s.b == 0:
            raise NotAlgebraicError("rational numbers have no Liouville bound")
        # a + b*sqrt(D) is a root of x^2 - 2a x + a^2 - b^2 D
        p = (s.a * s.a - s.b * s.b * s.D, -2 * s.a, Fraction(1))
        r = s.sqrt_generator().interval
        ends = sorted((s.a + s.b * r[0], s.a + s.b * r[1]))
        return AlgebraicReal(p, (ends[0], ends[1]))
    raise NotAlgebraicError(f"{type(s).__name__} is not an algebraic irrational")


def leading_and_root_bound(s):
    """``(lc, R)``: leading coefficient of the primitive minimal polynomial
    and a rational bound on the modulus of all its roots."""
    return abs(s.minpoly[-1]), poly.root_bound(s.qpoly)


def liouville_constant(s):
    """C with ``|q*s - p| >= C / |q|**(N-1)`` for all integers p and q != 0."""
    s = as_algebraic(s)
    n = s.degree
    lc, r = leading_and_root_bound(s)
    theta_abs = max(abs(s.interval[0]), abs(s.interval[1]))
    # |q*s - p| < 1 forces |p| <= |q||s| + 1, so each conjugate factor
    # |q*s_i - p| is at most |q| * (R + |s| + 1).
    c = 1 / (lc * (r + theta_abs + 1) ** (n - 1))
    return min(Fraction(1), c), n


def liouville_lower_bound(s, q):
    """Rational c > 0 with ``|q*s - p| >= c`` for every integer p."""
    if q == 0:
        raise ValueError("q must be nonzero")
    c, n = liouville_constant(s)
    return c / Fraction(abs(q)) ** (n - 1)


def polynomial_floor(s, height, degree_cap=None):
    """Lower bound for ``|P(s)|`` over nonzero integer polynomials P of
    degree < deg(s) whose coefficient l1-norm is at most ``height``.

    Uses the resultant Res(f, P) being a nonzero integer.
    """
    s = as_algebraic(s)
    n = s.degree
    lc, r = leading_and_root_bound(s)
    r1 = max(Fraction(1), r)
    d = n - 1 if degree_cap is None else degree_cap
    return 1 / (Fraction(lc) ** d * (Fraction(height) * r1 ** d) ** (n - 1))
