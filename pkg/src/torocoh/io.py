"""JSON literals for scalars, groups, bundles and Fourier forms."""
import json
from fractions import Fraction

import mpmath

from .bundle import Homomorphism
from .dbar import FourierForm
from .errors import ValidationError
from .scalars import poly
from .scalars.descriptors import (
    AlgebraicReal,
    FloatTagged,
    LacunaryDecimal,
    QuadraticIrrational,
    Rational,
)
from .scalars.field import ComplexElement, FieldElement, FloatElement
from .scalars.sign import enclose
from .torus import PeriodMatrix

DEFAULT_DIGITS = 30


def _frac(x):
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational literal: {x!r}") from exc


def parse_scalar(obj):
    """Scalar descriptor from its JSON literal (bare numbers/strings are rational)."""
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return Rational(_frac(obj))
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError(f"bad scalar literal {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "rational":
            return Rational(_frac(obj.get("num", 0)) / _frac(obj.get("den", 1)))
        if kind == "quadratic":
            return QuadraticIrrational(_frac(obj.get("a", 0)), _frac(obj.get("b", 1)), int(obj["D"]))
        if kind == "algebraic":
            lo, hi = obj["interval"]
            return AlgebraicReal(tuple(int(c) for c in obj["minpoly"]), (_frac(lo), _frac(hi)))
        if kind == "lacunary":
            return LacunaryDecimal(obj["rule"], tuple(obj.get("exponents", ())))
        if kind == "float":
            return FloatTagged(str(obj["value"]), _frac(obj.get("err", 0)))
    except KeyError as exc:
        raise ValidationError(f"scalar literal missing {exc}") from exc
    raise ValidationError(f"unknown scalar kind {kind!r}")


def scalar_to_json(d):
    if isinstance(d, Rational):
        return {"kind": "rational", "num": str(d.numerator), "den": str(d.denominator)}
    if isinstance(d, QuadraticIrrational):
        return {"kind": "quadratic", "a": str(d.a), "b": str(d.b), "D": d.D}
    if isinstance(d, AlgebraicReal):
        return {"kind": "algebraic", "minpoly": list(d.minpoly), "interval": [str(x) for x in d.interval]}
    if isinstance(d, LacunaryDecimal):
        out = {"kind": "lacunary", "rule": d.rule}
        if d.rule == "custom":
            out["exponents"] = list(d.exponents)
        return out
    if isinstance(d, FloatTagged):
        return {"kind": "float", "value": d.value, "err": str(d.err)}
    raise TypeError(f"not a descriptor: {d!r}")


def parse_entry(obj):
    """Complex entry: {"re": scalar, "im": scalar} (parts optional) or a real scalar."""
    if isinstance(obj, dict) and "kind" not in obj:
        unknown = set(obj) - {"re", "im"}
        if unknown:
            raise ValidationError(f"unexpected keys {sorted(unknown)} in complex entry")
        return (parse_scalar(obj.get("re", 0)), parse_scalar(obj.get("im", 0)))
    return (parse_scalar(obj), Rational(Fraction(0)))


def parse_instance(group_obj, bundle_obj=None):
    """(PeriodMatrix, Homomorphism or None) from group and bundle JSON objects."""
    if bundle_obj is None and "d_e" in group_obj:
        bundle_obj = group_obj
    try:
        n, m = int(group_obj["n"]), int(group_obj["m"])
        S = [[parse_entry(e) for e in row] for row in group_obj["S"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad group literal: {exc}") from exc
    extra = []
    de = ds = None
    if bundle_obj is not None:
        try:
            de = [parse_entry(e) for e in bundle_obj["d_e"]]
            ds = [parse_entry(e) for e in bundle_obj["d_s"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad bundle literal: {exc}") from exc
        extra = [x for e in de + ds for x in e]
    if len(S) != n or any(len(r) != m for r in S):
        raise ValidationError(f"S must be {n} x {m}")
    P = PeriodMatrix.from_entries(n, m, S, extra=extra)
    d = Homomorphism.from_entries(P, de, ds) if bundle_obj is not None else None
    return P, d


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


# --------------------------------------------------------------------------
# field elements


def decimal(x, digits=DEFAULT_DIGITS):
    """Decimal rendering of a real element (midpoint of a tight enclosure)."""
    if isinstance(x, (int, Fraction)):
        v = Fraction(x)
    else:
        v = enclose(x, digits + 2).mid
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.mpf(v.numerator) / v.denominator, digits)


def exact(x):
    """Exact rendering: polynomial (or rational function) in t = theta."""
    if isinstance(x, FloatElement):
        return None
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if x.field.kind == "rational":
        return str(x.rational_value())
    n = poly.to_str(x.num, "t")
    if x.den == poly.ONE:
        return n
    return f"({n}) / ({poly.to_str(x.den, 't')})"


def element_to_json(x, digits=DEFAULT_DIGITS):
    if isinstance(x, ComplexElement):
        return {"re": element_to_json(x.re, digits), "im": element_to_json(x.im, digits)}
    out = {"decimal": decimal(x, digits)}
    ex = exact(x)
    if ex is not None:
        out["exact"] = ex
    if isinstance(x, FieldElement) and x.field.kind != "rational":
        out["num"] = [str(c) for c in x.num]
        out["den"] = [str(c) for c in x.den]
    if isinstance(x, FloatElement):
        out["enclosure"] = [str(x.iv.lo), str(x.iv.hi)]
    return out


def parse_element(obj, fld):
    """A real field element: a scalar literal, or {"num": [...], "den": [...]} in theta."""
    if isinstance(obj, dict) and "num" in obj and "kind" not in obj:
        if fld.kind == "float":
            raise ValidationError("polynomial literals need an exact field")
        num = tuple(_frac(c) for c in obj["num"])
        den = tuple(_frac(c) for c in obj.get("den", ["1"]))
        return fld.element(num, den)
    if isinstance(obj, dict) and "decimal" in obj and "kind" not in obj:
        return fld(_frac(obj.get("exact", obj["decimal"])))
    return fld(parse_scalar(obj))


def generator_json(fld):
    g = fld.generator
    if g is None or fld.kind == "float":
        return None
    return scalar_to_json(g)


# --------------------------------------------------------------------------
# forms


def _key(I):
    return ",".join(str(i + 1) for i in I)


def _unkey(k):
    return tuple(int(x) - 1 for x in k.split(",")) if k else ()


def form_to_json(form, digits=DEFAULT_DIGITS):
    modes = []
    for sigma in form.support:
        coeffs = {}
        for I, v in sorted(form.coeffs[sigma].items()):
            if form.mode == "numeric":
                coeffs[_key(I)] = {"re": repr(float(v.real)), "im": repr(float(v.imag))}
            else:
                coeffs[_key(I)] = element_to_json(v, digits)
        modes.append({"sigma": list(sigma), "coeffs": coeffs})
    return {"p": form.p, "m": form.m, "mode": form.mode, "pi_power": form.pi_power, "modes": modes}


def parse_form(obj, m, fld, mode="exact"):
    try:
        p = int(obj["p"])
        pi_power = int(obj.get("pi_power", 0))
        coeffs = {}
        for md in obj["modes"]:
            sigma = tuple(int(s) for s in md["sigma"])
            comp = {}
            for k, v in md["coeffs"].items():
                I = _unkey(k)
                if mode == "numeric":
                    re = float(_frac(v.get("re", 0)) if not isinstance(v.get("re", 0), dict) else _frac(v["re"].get("decimal")))
                    im = float(_frac(v.get("im", 0)) if not isinstance(v.get("im", 0), dict) else _frac(v["im"].get("decimal")))
                    comp[I] = complex(re, im)
                else:
                    comp[I] = ComplexElement(parse_element(v.get("re", 0), fld), parse_element(v.get("im", 0), fld))
            coeffs[sigma] = comp
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"bad form literal: {exc}") from exc
    if mode == "numeric" and pi_power:
        scale = 3.141592653589793 ** pi_power
        coeffs = {s: {I: v * scale for I, v in c.items()} for s, c in coeffs.items()}
        pi_power = 0
    return FourierForm(p, m, coeffs, mode, pi_power)
