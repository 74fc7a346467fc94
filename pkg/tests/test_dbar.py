import math
import random

import numpy as np
import pytest
import sympy

from instances import random_instance, random_psi
from torocoh.dbar import (
    FourierForm,
    canonical,
    check_closed,
    decay_report,
    dzbar_numeric,
    forms_equal,
    forward,
    max_relative_difference,
    mode_function,
    solve,
    wedge_sign,
    witness_non_hausdorff,
)
from torocoh.errors import PreconditionError, ValidationError
from torocoh.reports import context_of
from torocoh.scalars.field import ComplexElement
from torocoh.spectral import find_sigma0, k_sigma
from torocoh.worked_examples import EXAMPLES


def _ctx(name):
    ctx = context_of(*EXAMPLES[name]())
    return ctx, find_sigma0(ctx)


def _c(ctx, re, im=0):
    f = ctx.field
    return ComplexElement(f(re), f(im))


def test_canonical_and_wedge_signs():
    assert canonical((2, 0, 1)) == (1, (0, 1, 2))
    assert canonical((1, 0)) == (-1, (0, 1))
    assert canonical((1, 1))[0] == 0
    assert wedge_sign(1, (0, 2)) == (-1, (0, 1, 2))
    assert wedge_sign(0, (1, 2)) == (1, (0, 1, 2))
    assert wedge_sign(1, (1,))[0] == 0


def test_form_rejects_bad_degree():
    with pytest.raises(ValidationError):
        FourierForm(3, 2, {})


def test_half_shift_solution_matches_hand_computation():
    # phi = 1 at sigma = (1, 0, 0): psi = 1 / (pi (K + d(L)) C_1) with
    # (K + d(L)) C_1 = (-1/2 + i sqrt2) * sqrt2/2 = -sqrt2/4 + i
    ctx, Z = _ctx("10.1")
    phi = FourierForm(1, 1, {(1, 0, 0): {(0,): _c(ctx, 1)}}, "exact", 0)
    res = solve(phi, Z, ctx)
    psi = res.psi.coeffs[(1, 0, 0)][()]
    assert res.psi.pi_power == -1
    s2 = sympy.sqrt(2)
    want = sympy.expand_complex(1 / (-s2 / 4 + sympy.I))  # -2 sqrt2 / 9 - 8i / 9
    t = ctx.field.theta
    assert sympy.simplify(sympy.re(want) + 2 * s2 / 9) == 0
    assert (psi.re + t * 2 / 9).is_identically_zero()
    assert sympy.im(want) == sympy.Rational(-8, 9)
    assert (psi.im + ctx.field(8) / 9).is_identically_zero()
    assert forms_equal(forward(res.psi, ctx), phi)


def test_alpha_shift_sigma0_mode_is_harmonic():
    ctx, Z = _ctx("10.2")
    phi = FourierForm(1, 1, {(0, 1, 0): {(0,): _c(ctx, 3)}, (1, 0, 0): {(0,): _c(ctx, 1, 1)}}, "exact", 0)
    res = solve(phi, Z, ctx)
    assert set(res.harmonic.coeffs) == {(0, 1, 0)}
    assert (0, 1, 0) not in res.psi.coeffs
    assert res.max_residual == 0.0


def test_round_trip_exact_random():
    rng = random.Random(21)
    for _ in range(15):
        _, _, ctx, Z = random_instance(rng)
        psi = random_psi(rng, ctx, max_modes=10)
        phi = forward(psi, ctx)
        assert check_closed(phi, ctx)
        res = solve(phi, Z, ctx)
        assert forms_equal(forward(res.psi, ctx), phi)
        assert all(v == 0.0 for v in res.residuals.values())


def test_round_trip_numeric_random():
    rng = random.Random(22)
    for _ in range(15):
        _, _, ctx, Z = random_instance(rng)
        psi = random_psi(rng, ctx, max_modes=10, mode="numeric")
        phi = forward(psi, ctx)
        res = solve(phi, Z, ctx)
        assert max_relative_difference(forward(res.psi, ctx), phi) < 1e-12


def test_non_closed_form_detected_and_rejected():
    # m = 2, p = 1: phi must be proportional to mu; (1, 0) is not unless mu_2 = 0
    rng = random.Random(3)
    while True:
        _, _, ctx, Z = random_instance(rng)
        if ctx.m == 2:
            break
    sigma = (1,) + (0,) * (ctx.n + ctx.m - 1)
    assert sigma in Z
    mu = k_sigma(sigma, ctx).shifted_over_pi
    assert not mu[1].is_identically_zero()
    phi = FourierForm(1, 2, {sigma: {(0,): _c(ctx, 1)}}, "exact", 0)
    rep = check_closed(phi, ctx)
    assert not rep and rep.violations
    with pytest.raises(PreconditionError):
        solve(phi, Z, ctx)


def test_top_degree_is_always_closed():
    ctx, Z = _ctx("10.1")
    phi = FourierForm(1, 1, {(2, -1, 5): {(0,): _c(ctx, 1)}}, "exact", 0)
    assert check_closed(phi, ctx)


def test_mode_function_derivative_matches_shift():
    rng = np.random.default_rng(9)
    ctx, _ = _ctx("10.2")
    for sigma in [(1, 0, 0), (0, 2, -1), (-1, 1, 3)]:
        f = mode_function(ctx, sigma)
        kt = complex(k_sigma(sigma, ctx).Ktilde_over_pi[0])
        t = rng.uniform(-0.5, 0.5, size=4)
        got = dzbar_numeric(ctx.frame, f, t, 1, h=1e-5)
        want = math.pi * kt * f(t)
        assert abs(got - want) <= 1e-6 * abs(want)
        # fiber direction: f is holomorphic along z_2
        assert abs(dzbar_numeric(ctx.frame, f, t, 2, h=1e-5)) <= 1e-6 * abs(f(t))


def test_decay_report_trend():
    ctx, _ = _ctx("10.1")
    grow = FourierForm(1, 1, {(k, 0, 0): {(0,): _c(ctx, 2 ** k)} for k in range(1, 5)}, "exact", 0)
    rows = decay_report(grow, [1], [0], n=ctx.n)
    assert rows[0]["trend"] == "growing" and rows[0]["sup"] == pytest.approx(16)
    with pytest.raises(ValidationError):
        decay_report(grow, [1], [0])


def test_witness_on_supergap_instance():
    ctx, Z = _ctx("supergap")
    res = witness_non_hausdorff(ctx, Z, "supergap", 3)
    assert res.all_certified
    for rec in res.records:
        assert rec["delta_exceeds_nu"] and rec["image_within_bound"]


def test_witness_on_factorial_instance_is_not_certified():
    ctx, Z = _ctx("10.3")
    res = witness_non_hausdorff(ctx, Z, "factorial-pow10", 2)
    assert not res.all_certified
