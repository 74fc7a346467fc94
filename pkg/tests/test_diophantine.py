import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from torocoh.diophantine import (
    ConditionReport,
    WitnessFamily,
    certify,
    convert_constants,
    floor_log10,
    hs1_from_hs,
    hs_from_hs1,
    refute,
    round_down,
    round_up,
    scan,
)
from torocoh.errors import PreconditionError, ValidationError
from torocoh.reports import context_of
from torocoh.scalars.lacunary import ApproximationRule
from torocoh.spectral import find_sigma0
from torocoh.torus import shell
from torocoh.worked_examples import EXAMPLES


def _ctx(name):
    ctx = context_of(*EXAMPLES[name]())
    return ctx, find_sigma0(ctx)


def _brute_min_gap(ctx, Z, rho, span=6):
    """min ||K_sigma + d(L)|| over |(sigma', sigma'')| = rho, by float brute force."""
    best = math.inf
    for head in shell(ctx.n, rho):
        u = np.asarray(head, float) @ ctx.S_np + ctx.dL_np
        centre = np.round(u.real).astype(int)
        for off in itertools.product(range(-span, span + 1), repeat=ctx.m):
            tp = centre + np.array(off)
            sigma = tuple(head) + tuple(int(x) for x in tp)
            if sigma not in Z:
                continue
            best = min(best, float(np.linalg.norm(u - tp)))
    return best


@pytest.mark.parametrize("name", ["10.1", "10.2"])
def test_certify_holds_and_floor_is_below_true_minima(name):
    ctx, Z = _ctx(name)
    rep = certify(ctx, Z)
    assert rep.status == "certified_holds" and rep.certified
    for rho in range(1, 9):
        true = _brute_min_gap(ctx, Z, rho)
        assert math.log10(true) >= floor_log10(rep, rho)


def test_certify_on_transcendental_data_is_unknown():
    ctx, Z = _ctx("supergap")
    rep = certify(ctx, Z)
    assert rep.status == "unknown" and not rep.certified


def test_scan_matches_brute_force_minima():
    ctx, Z = _ctx("10.1")
    rep = scan(ctx, Z, 8)
    assert rep.status == "evidence_holds"
    for rec in rep.shells:
        true = _brute_min_gap(ctx, Z, rec.shell)
        assert rec.gap.lo <= Fraction(true) * (1 + Fraction(1, 10 ** 9))
        assert float(rec.gap.hi) == pytest.approx(true, rel=1e-9)


def test_scan_on_lacunary_data_is_only_unknown():
    ctx, Z = _ctx("supergap")
    rep = scan(ctx, Z, 4)
    assert rep.status == "unknown" and len(rep.shells) == 4
    assert all(rec.sigma not in (Z.sigma0,) for rec in rep.shells)


def test_scan_rejects_bad_radius():
    ctx, Z = _ctx("10.1")
    with pytest.raises(ValidationError):
        scan(ctx, Z, 0)


def test_round_helpers_bracket():
    x = Fraction(10 ** 40 + 7, 3 * 10 ** 39)
    assert round_down(x) <= x <= round_up(x)
    assert round_up(x) - round_down(x) < Fraction(1, 10 ** 28)


def test_hs_hs1_round_trip_bounds():
    C, a = hs1_from_hs(Fraction(67))
    assert C == 1 and float(a) == pytest.approx(math.log(67), abs=1e-25)
    r = hs_from_hs1(Fraction(1, 24), Fraction(1))
    # r^-rho <= C exp(-a rho) for rho >= 1 needs r >= exp(a) / C
    assert r >= math.exp(1) * 24


@pytest.mark.parametrize("name", ["10.1", "10.2"])
def test_conversions_preserve_status_and_dominate(name):
    ctx, Z = _ctx(name)
    rep = certify(ctx, Z)
    sc = scan(ctx, Z, 12)
    for target in ("HS", "HS'", "HS''"):
        conv = convert_constants(rep, target, ctx)
        assert conv.status == "certified_holds"
        back = convert_constants(conv, "HS", ctx)
        assert back.status == "certified_holds"
        for rec in sc.shells:
            sigma2 = sum(abs(x) for x in rec.sigma[ctx.m: ctx.n])
            assert rec.log10_lo >= floor_log10(conv, rec.shell, sigma2)
            assert rec.log10_lo >= floor_log10(back, rec.shell)


def test_convert_uncertified_carries_status():
    rep = ConditionReport("HS", "evidence_holds")
    out = convert_constants(rep, "HS'")
    assert out.status == "evidence_holds" and out.constants == {}
    with pytest.raises(ValidationError):
        convert_constants(rep, "HS'''")


# --------------------------------------------------------------------------
# refute


def _log10(x):
    return float(mpmath.mpf(x))


def test_refute_factorial_rule_fails_its_own_inequalities():
    ctx, Z = _ctx("10.3")
    rep = refute(ctx, Z, "factorial-pow10", 2)
    assert rep.status == "unknown"
    w1, w2 = rep.witnesses
    # exponent arithmetic: q = 10^(nu! + 10^(nu!)), p uses nu terms
    # nu = 1: |q alpha - p| = 10^11 * (10^-100 + ...) so log10 is just above -89
    assert _log10(w1["gap"]["log10_lo"]) == pytest.approx(-89.0)
    assert -89 < _log10(w1["gap"]["log10_hi"]) < -89 + math.log10(2)
    assert _log10(w2["gap"]["log10_lo"]) == pytest.approx(102 - 10 ** 6)
    for w in (w1, w2):
        assert w["refutation_inequality"] == "fails"
        assert w["q_squared_inequality"]["holds"] is False
        assert w["gap_width"] <= math.log10(2)


def test_refute_supergap_rule_certifies_failure():
    ctx, Z = _ctx("supergap")
    rep = refute(ctx, Z, "supergap", 3)
    assert rep.status == "certified_fails"
    assert [w["refutation_inequality"] for w in rep.witnesses] == ["holds"] * 3
    assert _log10(rep.witnesses[0]["gap"]["log10_lo"]) == pytest.approx(-9.0)


def test_refute_custom_rule_matches_supergap():
    ctx, Z = _ctx("supergap")
    rule = ApproximationRule("custom", (1, 10), (1, 2))
    rep = refute(ctx, Z, rule, 2)
    ref = refute(ctx, Z, "supergap", 2)
    assert [w["gap"] for w in rep.witnesses] == [w["gap"] for w in ref.witnesses]


def test_refute_rejects_bad_families():
    ctx, Z = _ctx("supergap")
    with pytest.raises(ValidationError):
        refute(ctx, Z, "supergap", 1, WitnessFamily(ApproximationRule("supergap"), (0, 1, 0), (0, 0, 1), (0, 1, 0), 1))
    with pytest.raises(ValidationError):
        refute(ctx, Z, "supergap", 1, WitnessFamily(ApproximationRule("supergap"), (0, 0, 0), (0, 1, 0), (0, 0, 1), 1))


def test_refute_needs_lacunary_data():
    ctx, Z = _ctx("10.2")
    with pytest.raises(PreconditionError):
        refute(ctx, Z, "supergap", 1)
