"""Certified scalar arithmetic: descriptors, exact fields, sign decisions, log-space bounds."""
from .descriptors import (
    AlgebraicReal,
    CertifiedEnclosure,
    FloatTagged,
    LacunaryDecimal,
    PowerOfTen,
    QuadraticIrrational,
    Rational,
    refine,
)
from .field import ComplexElement, NumberField, build_field
from .lacunary import ApproximationRule, lacunary_gap, rule_gap
from .liouville import liouville_constant, liouville_lower_bound
from .logspace import LogEnclosure
from .sign import Sign, cert_sign, enclose

__all__ = [
    "AlgebraicReal", "ApproximationRule", "CertifiedEnclosure", "ComplexElement", "FloatTagged",
    "LacunaryDecimal", "LogEnclosure", "NumberField", "PowerOfTen", "QuadraticIrrational", "Rational",
    "Sign", "build_field", "cert_sign", "enclose", "lacunary_gap", "liouville_constant",
    "liouville_lower_bound", "refine", "rule_gap",
]
