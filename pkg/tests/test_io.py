import json
from fractions import Fraction

import pytest

from torocoh.dbar import forms_equal, forward
from torocoh.errors import ValidationError
from torocoh.io import (
    element_to_json,
    exact,
    form_to_json,
    parse_element,
    parse_form,
    parse_instance,
    parse_scalar,
    scalar_to_json,
)
from torocoh.reports import context_of
from torocoh.scalars.descriptors import AlgebraicReal, FloatTagged, LacunaryDecimal, QuadraticIrrational, Rational
from torocoh.worked_examples import EXAMPLES

SQRT2_JSON = {"kind": "algebraic", "minpoly": [-2, 0, 1], "interval": ["1", "2"]}


@pytest.mark.parametrize("desc", [
    Rational(Fraction(-3, 7)),
    QuadraticIrrational(Fraction(1, 2), -3, 5),
    AlgebraicReal((-2, 0, 0, 1), (1, 2)),
    LacunaryDecimal("supergap"),
    LacunaryDecimal("custom", (1, 4, 9)),
    FloatTagged("0.125", Fraction(1, 1000)),
])
def test_scalar_json_round_trip(desc):
    assert parse_scalar(json.loads(json.dumps(scalar_to_json(desc)))) == desc


def test_bare_numbers_are_rational():
    assert parse_scalar("1/3") == Rational(Fraction(1, 3))
    assert parse_scalar(5) == Rational(5)
    with pytest.raises(ValidationError):
        parse_scalar({"kind": "mystery"})
    with pytest.raises(ValidationError):
        parse_scalar("one half")


def test_parse_instance_matches_builder():
    group = {"n": 2, "m": 1, "S": [[{"re": 0, "im": SQRT2_JSON}], [{"im": 1}]]}
    bundle = {"d_e": [0, 0], "d_s": ["1/2"]}
    P, d = parse_instance(group, bundle)
    P0, d0 = EXAMPLES["10.1"]()
    assert P.field == P0.field
    assert all((a - b).is_identically_zero() for r, r0 in zip(P.S, P0.S) for a, b in zip(r, r0))
    assert all((a - b).is_identically_zero() for a, b in zip(d.values(), d0.values()))


def test_parse_instance_embedded_bundle_and_errors():
    group = {"n": 2, "m": 1, "S": [[{"im": 1}], [{"re": SQRT2_JSON}]], "d_e": [0, 0], "d_s": [SQRT2_JSON]}
    P, d = parse_instance(group)
    assert d is not None
    with pytest.raises(ValidationError):
        parse_instance({"n": 2, "m": 1, "S": [[{"im": 1}]]})
    with pytest.raises(ValidationError):
        parse_instance({"n": 2, "m": 1, "S": [[{"im": 1, "imag": 2}], [0]]})


def test_element_json_exact_rendering():
    P, _ = EXAMPLES["10.1"]()
    t = P.field.theta
    out = element_to_json(t / 2 - 1, 10)
    assert out["exact"] == "-1 + 1/2*t"
    assert out["decimal"].startswith("-0.29289321")
    assert exact(parse_element(out, P.field)) == "-1 + 1/2*t"


def test_form_json_round_trip_exact_and_numeric():
    ctx = context_of(*EXAMPLES["10.1"]())
    f = ctx.field
    from torocoh.dbar import FourierForm
    from torocoh.scalars.field import ComplexElement

    psi = FourierForm(0, 1, {(1, 0, 0): {(): ComplexElement(f.theta, f(Fraction(1, 3)))}}, "exact", 0)
    phi = forward(psi, ctx)
    text = json.dumps(form_to_json(phi))
    back = parse_form(json.loads(text), 1, f, "exact")
    assert forms_equal(back, phi)
    num = parse_form(json.loads(text), 1, f, "numeric")
    want = complex(phi.coeffs[(1, 0, 0)][(0,)]) * 3.141592653589793
    assert num.pi_power == 0 and abs(num.coeffs[(1, 0, 0)][(0,)] - want) < 1e-12
    with pytest.raises(ValidationError):
        parse_form({"modes": []}, 1, f)
