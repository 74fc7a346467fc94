"""JSON report builders shared by the command line and the demos."""
import json
from importlib import resources

from .bundle import check_alpha_identity, check_cocycle, check_ell_linearity, invariants, normalize
from .classify import ClassifyOptions, classify
from .dbar import witness_non_hausdorff
from .diophantine import certify, refute, scan
from .io import element_to_json, generator_json
from .worked_examples import EXAMPLES
from .spectral import find_sigma0, k_sigma, m0, make_context, pivot_constant
from .torus import build_frame, check_irrationality


def _matrix(M, digits):
    return [[element_to_json(x, digits) for x in row] for row in M]


def _vector(v, digits):
    return [element_to_json(x, digits) for x in v]


def frame_report(P, digits):
    fr = build_frame(P)
    return {
        "n": P.n,
        "m": P.m,
        "field": {"kind": P.field.kind, "generator": generator_json(P.field)},
        "certified": P.certified,
        "A": _matrix(fr.A, digits),
        "B": _matrix(fr.B, digits),
        "C": _matrix(fr.C, digits),
    }


def bundle_report(P, d, digits):
    fr = build_frame(P)
    dt, cert = normalize(d, fr)
    inv = invariants(dt, fr)
    return {
        "normalized": {"d_e": _vector(dt.d_e, digits), "d_s": _vector(dt.d_s, digits)},
        "certificate": {
            "integer_shift": list(cert.integer_shift),
            "ell": _vector(cert.ell, digits),
            "k_e": _vector(cert.k_e, digits),
            "k_s": _vector(cert.k_s, digits),
            "ell_is_c_linear": all(check_ell_linearity(cert, fr)),
        },
        "alpha": _vector(inv.alpha, digits),
        "beta_over_pi": _vector(inv.beta_over_pi, digits),
        "dL": _vector(inv.dL, digits),
        "a_coeffs": _vector(inv.a_coeffs, digits),
        "trivial": inv.trivial,
        "cocycle": {name: ok for name, ok in check_cocycle(inv, fr)},
        "alpha_identity": check_alpha_identity(inv, fr) if P.certified else None,
    }


def context_of(P, d):
    fr = build_frame(P)
    dt, _ = normalize(d, fr)
    inv = invariants(dt, fr)
    return make_context(P, fr, inv)


def sigma0_report(ctx, digits):
    Z = find_sigma0(ctx)
    out = Z.to_json()
    out["sigma0"] = list(Z.sigma0) if Z.sigma0 is not None else "none"
    out["residual"] = _vector(Z.residual, digits) if Z.residual is not None else None
    out["notes"] = list(Z.notes)
    return out, Z


def shift_report(ctx, sigma, digits):
    sh = k_sigma(sigma, ctx)
    return {
        "sigma": list(sh.sigma),
        "K": _vector(sh.K, digits),
        "Ktilde_over_pi": _vector(sh.Ktilde_over_pi, digits),
        "K_plus_dL": _vector(sh.residual, digits),
        "shifted_over_pi": _vector(sh.shifted_over_pi, digits),
        "pivot": sh.pivot,
    }


def m0_report(ctx, Z):
    ivl, sq, arg = m0(ctx, Z)
    return {"m0_lo": str(ivl.lo), "m0_hi": str(ivl.hi), "m0_decimal": float(ivl.mid), "argmin": list(arg)}


# --------------------------------------------------------------------------
# worked examples


GOLDEN_FILES = {"10.1": "half_shift.json", "10.2": "alpha_shift.json", "10.3": "factorial_lacunary.json"}


def load_golden(name):
    fname = GOLDEN_FILES[name]
    text = resources.files("torocoh.golden").joinpath(fname).read_text()
    return json.loads(text)


def _lookup(obj, path):
    for part in path.split("."):
        if isinstance(obj, list):
            obj = obj[int(part)]
        else:
            obj = obj[part]
    return obj


def compare_golden(report, golden):
    mismatches = []
    for path, want in sorted(golden["expect"].items()):
        try:
            got = _lookup(report, path)
        except (KeyError, IndexError, TypeError):
            mismatches.append({"path": path, "expected": want, "got": None})
            continue
        if got != want:
            mismatches.append({"path": path, "expected": want, "got": got})
    return mismatches


def _instance_report(P, d, digits, options):
    ctx = context_of(P, d)
    s0, Z = sigma0_report(ctx, digits)
    out = {
        "irrationality": check_irrationality(P).to_json(),
        "frame": frame_report(P, digits),
        "bundle": bundle_report(P, d, digits),
        "sigma0": s0,
        "m0": m0_report(ctx, Z),
        "pivot_constant_M": str(pivot_constant(ctx)),
    }
    kind = P.field.kind
    if kind == "algebraic":
        out["certify"] = certify(ctx, Z).to_json()
    out["classify"] = classify(P, d, options).to_json()
    return out, ctx, Z


def run_example(name, digits=30, radius=12):
    options = ClassifyOptions(radius=radius)
    if name in ("10.1", "10.2"):
        P, d = EXAMPLES[name]()
        report, ctx, Z = _instance_report(P, d, digits, options)
        report["scan"] = scan(ctx, Z, radius).to_json()
    elif name == "10.3":
        P, d = EXAMPLES["10.3"]()
        report, ctx, Z = _instance_report(P, d, digits, options)
        report["refute_factorial_rule"] = refute(ctx, Z, "factorial-pow10", 3).to_json()
        Ps, ds = EXAMPLES["supergap"]()
        fb, fctx, fZ = _instance_report(Ps, ds, digits, options)
        fb["refute"] = refute(fctx, fZ, "supergap", 3).to_json()
        fb["witness"] = witness_non_hausdorff(fctx, fZ, "supergap", 3).to_json()
        report["supergap_fallback"] = fb
    else:
        raise KeyError(name)
    golden = load_golden(name)
    mism = compare_golden(report, golden)
    return {"example": name, "report": report, "golden_match": not mism, "mismatches": mism}
