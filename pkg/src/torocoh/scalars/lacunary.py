"""Exponent arithmetic for rational approximations of lacunary decimals.

For ``q = 10**E`` and ``p = q * (N_1 + ... + N_k partial sum)`` the gap
``q*s - p`` equals ``q`` times the series tail, which lies between its
first term and 10/9 of it.  Nothing astronomically large is materialized.
"""
from dataclasses import dataclass, field
from math import factorial

from mpmath import iv

from ..errors import NonIntegerPError, ValidationError
from .descriptors import LacunaryDecimal, exp_compare, exp_value
from .logspace import LogEnclosure, dps_for, precision, to_iv


def _exp_sum(a, b):
    a, b = exp_value(a), exp_value(b)
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    raise OverflowError("exponent sum beyond representable range")


@dataclass(frozen=True)
class ApproximationRule:
    """Family ``q_nu = 10**E(nu)`` and ``p_nu = q_nu * S_{k(nu)}``.

    ``factorial-pow10``: E = nu! + 10**(nu!), k = nu.
    ``supergap``: E = N_nu, k = nu.  ``custom``: explicit per-nu lists.
    """

    name: str
    q_exponents: tuple = field(default=())
    terms: tuple = field(default=())

    def q_rule(self, s, nu):
        if self.name == "factorial-pow10":
            return _exp_sum(factorial(nu), s.exponent(nu))
        if self.name == "supergap":
            return s.exponent(nu)
        if self.name == "custom":
            return int(self.q_exponents[nu - 1])
        raise ValidationError(f"unknown approximation rule {self.name!r}")

    def p_rule(self, s, nu):
        if self.name == "custom":
            return int(self.terms[nu - 1])
        return nu


@dataclass(frozen=True)
class GapEnclosure:
    nu: int
    q_exponent: object
    terms: int
    log10_gap: LogEnclosure


def lacunary_gap(s, nu, q_rule, p_rule):
    """log10 enclosure of ``|q_nu * s - p_nu|``.

    ``q_rule(nu)`` returns the exponent E with q = 10**E and ``p_rule(nu)``
    the number k of series terms in p = q * S_k.
    """
    if not isinstance(s, LacunaryDecimal):
        raise TypeError("lacunary_gap needs a LacunaryDecimal")
    e = q_rule(nu)
    k = p_rule(nu)
    if k >= 1 and exp_compare(e, s.exponent(k)) < 0:
        raise NonIntegerPError(f"p is not an integer: q exponent {e} < N_{k}")
    nxt = s.exponent(k + 1)
    if nxt is None:
        raise ValidationError("finite series: the gap is zero beyond its last term")
    ev, nv = exp_value(e), exp_value(nxt)
    with precision(dps_for(ev, nv)):
        if isinstance(ev, int) and isinstance(nv, int):
            base = iv.mpf(ev - nv)
        else:
            base = to_iv(ev) - to_iv(nv)
        top = base + iv.log10(iv.mpf(10) / 9)
        enc = LogEnclosure(base.a, top.b)
    return GapEnclosure(nu, e, k, enc)


def rule_gap(s, nu, rule):
    """lacunary_gap for a named ApproximationRule."""
    return lacunary_gap(s, nu, lambda v: rule.q_rule(s, v), lambda v: rule.p_rule(s, v))
