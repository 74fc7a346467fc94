"""Builders for the built-in worked examples on the sqrt(2) torus.

``EXAMPLES`` maps the names accepted by ``torocoh examples`` to builders; the
extra ``supergap`` entry is the lacunary variant whose witness family does
refute HS.
"""
from fractions import Fraction

from .bundle import make_instance
from .scalars.descriptors import AlgebraicReal, LacunaryDecimal, Rational

SQRT2 = AlgebraicReal((-2, 0, 1), (Fraction(1), Fraction(2)))
ZERO = Rational(Fraction(0))
ONE = Rational(Fraction(1))


def half_shift(alpha=SQRT2, ds=Rational(Fraction(1, 2))):
    """S = (i alpha; i), d(e) = 0, d(s_1) = ds."""
    return make_instance(2, 1, [[(ZERO, alpha)], [(ZERO, ONE)]], [ZERO, ZERO], [ds])


def alpha_shift(alpha=SQRT2):
    """S = (i; alpha), d(e) = 0, d(s_1) = alpha."""
    return make_instance(2, 1, [[(ZERO, ONE)], [(alpha, ZERO)]], [ZERO, ZERO], [alpha])


def factorial_lacunary():
    """alpha_shift with alpha = sum 10^(-10^(j!))."""
    return alpha_shift(LacunaryDecimal("factorial-pow10"))


def supergap_lacunary():
    """alpha_shift with alpha = sum 10^(-N_j), N_1 = 1, N_{j+1} = 10^(j N_j)."""
    return alpha_shift(LacunaryDecimal("supergap"))


EXAMPLES = {
    "10.1": half_shift,
    "10.2": alpha_shift,
    "10.3": factorial_lacunary,
    "supergap": supergap_lacunary,
}
