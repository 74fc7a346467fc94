"""Cohomology of homogeneous line bundles over toroidal groups C^n / Gamma.

The pipeline: period matrix -> real frame -> normalized bundle invariants ->
spectral shifts K_sigma + d(L) -> Diophantine condition (certified, refuted
or scanned) -> classification, with a modewise solver for the translated
dbar-equation and explicit non-Hausdorff witnesses.
"""
__version__ = "0.1.0"

from .bundle import Homomorphism, invariants, make_instance, normalize
from .classify import ClassificationResult, ClassifyOptions, classify
from .dbar import FourierForm, check_closed, forward, solve, witness_non_hausdorff
from .diophantine import ConditionReport, certify, convert_constants, refute, scan
from .errors import TorocohError
from .spectral import find_sigma0, k_sigma, make_context, pivot
from .torus import PeriodMatrix, build_frame, check_irrationality, coord_map, dbar_vector

__all__ = [
    "ClassificationResult", "ClassifyOptions", "ConditionReport", "FourierForm", "Homomorphism",
    "PeriodMatrix", "TorocohError", "build_frame", "certify", "check_closed", "check_irrationality",
    "classify", "convert_constants", "coord_map", "dbar_vector", "find_sigma0", "forward",
    "invariants", "k_sigma", "make_context", "make_instance", "normalize", "pivot", "refute",
    "scan", "solve", "witness_non_hausdorff",
]
