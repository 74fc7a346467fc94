"""Acceptance suite: one test group per criterion.

Each test carries a ``criterion`` marker; ``conftest.py`` prints a single
PASS/FAIL line per criterion at the end of the run.
"""
import math
import random
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from instances import random_instance, random_psi, random_sigma
from torocoh.classify import VERDICT_TORUS, VERDICT_WILD, VERDICT_ZERO, ClassifyOptions, classify
from torocoh.dbar import (
    check_closed,
    dzbar_numeric,
    forms_equal,
    forward,
    max_relative_difference,
    mode_function,
    solve,
    witness_non_hausdorff,
)
from torocoh.diophantine import certify, convert_constants, floor_log10, refute, scan
from torocoh.reports import context_of
from torocoh.scalars import linalg
from torocoh.scalars.field import ComplexElement
from torocoh.scalars.sign import Sign, cert_sign
from torocoh.spectral import find_sigma0, k_sigma
from torocoh.torus import build_frame, check_irrationality, coord_map, dbar_vector, shell
from torocoh.worked_examples import EXAMPLES

criterion = pytest.mark.criterion
SECONDS = 10.0


def _zero(z):
    return z.is_identically_zero()


def _ctx(name):
    ctx = context_of(*EXAMPLES[name]())
    return ctx, find_sigma0(ctx)


# --------------------------------------------------------------------------
# 1. first worked example: sqrt 2 torus, d(s_1) = 1/2


@criterion(1, "sqrt2 example with d(s1) = 1/2: exact frame, d(L) = -1/2, no sigma0, case I(i)")
def test_criterion_1_example_without_sigma0():
    start = time.perf_counter()
    P, d = EXAMPLES["10.1"]()
    t = P.field.theta  # sqrt 2
    fr = build_frame(P)
    # C = (1/alpha 0; -1/alpha 1) with 1/sqrt2 = sqrt2/2
    assert _zero(fr.C[0][0] - t / 2) and _zero(fr.C[0][1])
    assert _zero(fr.C[1][0] + t / 2) and _zero(fr.C[1][1] - 1)
    ctx, Z = _ctx("10.1")
    assert _zero(ctx.dL[0] - ComplexElement(P.field(Fraction(-1, 2))))
    assert Z.sigma0 is None and Z.certified
    assert certify(ctx, Z).status == "certified_holds"
    res = classify(P, d)
    assert res.case == "I_i" and res.grade == "certified"
    assert res.verdicts == {1: VERDICT_ZERO} and VERDICT_ZERO == "H^p = 0"
    assert time.perf_counter() - start < SECONDS


# --------------------------------------------------------------------------
# 2. second worked example: d(s_1) = alpha


@criterion(2, "sqrt2 example with d(s1) = alpha: sigma0 = (0,1,0) exactly, case I(ii)")
def test_criterion_2_example_with_sigma0():
    start = time.perf_counter()
    P, d = EXAMPLES["10.2"]()
    ctx, Z = _ctx("10.2")
    assert Z.sigma0 == (0, 1, 0) and Z.certified
    res0 = ctx.residual(Z.sigma0)
    assert all(cert_sign(x.re) is Sign.ZERO and cert_sign(x.im) is Sign.ZERO for x in res0)
    assert certify(ctx, Z).status == "certified_holds"
    res = classify(P, d)
    assert res.case == "I_ii" and res.grade == "certified" and res.sigma0 == (0, 1, 0)
    assert res.verdicts == {1: VERDICT_TORUS} and VERDICT_TORUS == "H^p ≅ H^p(T, O)"
    assert time.perf_counter() - start < SECONDS


# --------------------------------------------------------------------------
# 3. lacunary probe: factorial rule decided at nu = 1, 2; supergap gives case II


@criterion(3, "lacunary probe: nu = 1, 2 decided with log10 width <= log10 2; supergap gives II")
def test_criterion_3_lacunary_probe():
    start = time.perf_counter()
    ctx, Z = _ctx("10.3")
    rep = refute(ctx, Z, "factorial-pow10", 2)
    assert [w["nu"] for w in rep.witnesses] == [1, 2]
    for w in rep.witnesses:
        assert w["refutation_inequality"] in ("holds", "fails")
        assert isinstance(w["q_squared_inequality"]["holds"], bool)
        assert w["gap_width"] <= math.log10(2)
    ctx2, Z2 = _ctx("supergap")
    assert refute(ctx2, Z2, "supergap", 3).status == "certified_fails"
    res = classify(*EXAMPLES["supergap"](), ClassifyOptions(witness_rule="supergap"))
    assert res.case == "II" and res.verdicts[1] == VERDICT_WILD
    assert time.perf_counter() - start < SECONDS


# --------------------------------------------------------------------------
# 4. solver round trip on 500 random instances

N_ROUND_TRIP = 500


@criterion(4, "forward -> solve -> forward on 500 random instances, exact and numeric")
def test_criterion_4_round_trip_exact():
    rng = random.Random(2024)
    for _ in range(N_ROUND_TRIP):
        _, _, ctx, Z = random_instance(rng, n_max=4, m_max=3)
        psi = random_psi(rng, ctx, max_modes=50)
        phi = forward(psi, ctx)
        assert check_closed(phi, ctx)
        back = forward(solve(phi, Z, ctx, check=False).psi, ctx)
        assert forms_equal(back, phi)


@criterion(4, "forward -> solve -> forward on 500 random instances, exact and numeric")
def test_criterion_4_round_trip_numeric():
    rng = random.Random(2025)
    for _ in range(N_ROUND_TRIP):
        _, _, ctx, Z = random_instance(rng, n_max=4, m_max=3)
        psi = random_psi(rng, ctx, max_modes=50, mode="numeric")
        phi = forward(psi, ctx)
        assert check_closed(phi, ctx)
        back = forward(solve(phi, Z, ctx, check=False).psi, ctx)
        assert max_relative_difference(back, phi) <= 1e-12


# --------------------------------------------------------------------------
# 5. frame and calculus


def _identity(M):
    return all(_zero(M[i][j] - (1 if i == j else 0)) for i in range(len(M)) for j in range(len(M)))


@criterion(5, "B C = I exactly, coordinate round trips, dbar vectors and mode derivatives")
def test_criterion_5_frame_identities_and_round_trips():
    rng = random.Random(55)
    points = 0
    while points < 100:
        P, _, _, _ = random_instance(rng)
        fr = build_frame(P)
        assert _identity(linalg.matmul(fr.B, fr.C))
        f = P.field
        for _ in range(10):
            z = [ComplexElement(f(Fraction(rng.randint(-9, 9), rng.randint(1, 5))) + f.theta * rng.randint(-2, 2),
                                f(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))) for _ in range(P.n)]
            back = coord_map(fr, "t->z", coord_map(fr, "z->t", z))
            # exact arithmetic: the enclosure width is zero
            assert all(_zero(a - b) for a, b in zip(z, back))
            zn = np.array([complex(x) for x in z])
            backn = coord_map(fr, "t->z", coord_map(fr, "z->t", list(zn)))
            assert np.max(np.abs(backn - zn)) <= 1e-12 * max(1.0, np.max(np.abs(zn)))
            points += 1


@criterion(5, "B C = I exactly, coordinate round trips, dbar vectors and mode derivatives")
def test_criterion_5_dbar_vector_against_finite_differences():
    # g(z) = exp(<a, zbar> + <b, z>) has d g / d zbar_j = a_j g
    rng = random.Random(56)
    nrng = np.random.default_rng(56)
    for _ in range(10):
        P, _, _, _ = random_instance(rng)
        fr = build_frame(P)
        n = P.n
        a = 0.3 * (nrng.normal(size=n) + 1j * nrng.normal(size=n))
        b = 0.3 * (nrng.normal(size=n) + 1j * nrng.normal(size=n))

        def g(t):
            z = coord_map(fr, "t->z", [float(x) for x in t])
            return complex(np.exp(a @ np.conj(z) + b @ z))

        for _ in range(3):
            t = nrng.uniform(-0.5, 0.5, size=2 * n)
            for j in range(1, n + 1):
                got = dzbar_numeric(fr, g, t, j, h=1e-5)
                want = a[j - 1] * g(t)
                assert abs(got - want) <= 1e-6 * max(abs(want), abs(g(t)))


@criterion(5, "B C = I exactly, coordinate round trips, dbar vectors and mode derivatives")
def test_criterion_5_mode_derivative_spot_check():
    # d f^sigma / d zbar_j = pi (K_sigma C_1)_j f^sigma for j <= m
    rng = random.Random(57)
    nrng = np.random.default_rng(57)
    checked = 0
    while checked < 20:
        _, _, ctx, _ = random_instance(rng)
        sigma = random_sigma(rng, ctx.n + ctx.m, span=2)
        f = mode_function(ctx, sigma)
        t = nrng.uniform(-0.5, 0.5, size=2 * ctx.n)
        kt = [complex(x) for x in k_sigma(sigma, ctx).Ktilde_over_pi]
        ft = f(t)
        for j in range(1, ctx.m + 1):
            got = dzbar_numeric(ctx.frame, f, t, j, h=1e-6)
            want = math.pi * kt[j - 1] * ft
            assert abs(got - want) <= 1e-6 * max(abs(want), abs(ft))
        checked += 1


# --------------------------------------------------------------------------
# 6. spectral identities


def _ktilde_over_pi_from_dbar(ctx, sigma):
    """Ktilde_sigma / pi from the dbar vectors applied to the phase of f^sigma.

    log f^sigma = 2 pi i <sigma, t'> - 2 pi sum_{i > m} sigma_i t_{n+i}.
    """
    f, n, m = ctx.field, ctx.n, ctx.m
    grad = [ComplexElement(f.zero, f(2 * sigma[k])) for k in range(n + m)]
    grad += [ComplexElement(f(-2 * sigma[m + i])) for i in range(n - m)]
    out = []
    for j in range(1, m + 1):
        acc = ComplexElement(f.zero)
        for v, c in zip(dbar_vector(ctx.frame, j), grad):
            acc = acc + v * c
        out.append(acc)
    return out


def _norm2(values):
    total = values[0].abs2()
    for x in values[1:]:
        total = total + x.abs2()
    return total


@criterion(6, "Ktilde + beta = pi (K + d(L)) C_1, pivot inequality, uniqueness of sigma0")
def test_criterion_6_shift_identity_and_pivot_inequality():
    rng = random.Random(66)
    for _ in range(20):
        _, _, ctx, _ = random_instance(rng)
        beta = ctx.inv.beta_over_pi
        for _ in range(100):
            sigma = random_sigma(rng, ctx.n + ctx.m, span=4)
            lhs = [k + b for k, b in zip(_ktilde_over_pi_from_dbar(ctx, sigma), beta)]
            rhs = ctx.times_C1(ctx.residual(sigma))
            for a, b in zip(lhs, rhs):
                assert cert_sign((a - b).re) is Sign.ZERO and cert_sign((a - b).im) is Sign.ZERO
            sh = k_sigma(sigma, ctx)
            piv2 = lhs[sh.pivot - 1].abs2()
            assert cert_sign(piv2 * ctx.m - _norm2(lhs)) in (Sign.POSITIVE, Sign.ZERO)


def _zeros_in_ball(ctx, radius):
    """All sigma with |sigma|_1 <= radius and K_sigma + d(L) = 0.

    Exhaustive over the head (sigma', sigma''): the tail sigma''' is then
    forced to equal Re((sigma', sigma'') S + d(L)), which is screened in
    floats and confirmed exactly.
    """
    n = ctx.n
    hits = []
    for r in range(radius + 1):
        for head in shell(n, r) if r else [(0,) * n]:
            u = np.asarray(head, float) @ ctx.S_np + ctx.dL_np
            tail = np.round(u.real)
            if np.max(np.abs(u - tail)) > 1e-6:
                continue
            sigma = tuple(head) + tuple(int(x) for x in tail)
            if sum(abs(x) for x in sigma) <= radius and ctx.residual_is_zero(sigma):
                hits.append(sigma)
    return hits


@criterion(6, "Ktilde + beta = pi (K + d(L)) C_1, pivot inequality, uniqueness of sigma0")
def test_criterion_6_sigma0_uniqueness_brute_force():
    rng = random.Random(67)
    cases = [_ctx("10.1"), _ctx("10.2")]
    while len(cases) < 12:
        P, _, ctx, Z = random_instance(rng, n_max=3, m_max=2)
        if check_irrationality(P).status == "certified_holds":
            cases.append((ctx, Z))
    seen_sigma0 = 0
    for ctx, Z in cases:
        hits = _zeros_in_ball(ctx, 20)
        assert len(hits) <= 1
        if hits:
            assert hits == [Z.sigma0]
            seen_sigma0 += 1
        elif Z.sigma0 is not None:
            assert sum(abs(x) for x in Z.sigma0) > 20
    assert seen_sigma0 >= 1


# --------------------------------------------------------------------------
# 7. non-Hausdorff witness


@criterion(7, "supergap witness: |delta| > nu and image <= exp(-nu |sigma''|) for nu = 1..3")
def test_criterion_7_witness():
    ctx, Z = _ctx("supergap")
    res = witness_non_hausdorff(ctx, Z, "supergap", 3)
    assert [r["nu"] for r in res.records] == [1, 2, 3]
    # mpf, not Fraction: at nu = 3 the log10 values carry 21-digit exponents
    for rec in res.records:
        assert mpmath.mpf(rec["log10_delta"]["log10_lo"]) > mpmath.mpf(rec["log10_nu"]["log10_hi"])
        assert mpmath.mpf(rec["log10_image"]["log10_hi"]) <= mpmath.mpf(rec["log10_bound"]["log10_lo"])
        assert rec["delta_exceeds_nu"] and rec["image_within_bound"]
    assert res.all_certified


# --------------------------------------------------------------------------
# 8. constant conversions


@criterion(8, "HS <-> HS' <-> HS'' round trips stay certified and dominate shell minima to radius 12")
@pytest.mark.parametrize("name", ["10.1", "10.2"])
def test_criterion_8_conversions(name):
    ctx, Z = _ctx(name)
    rep = certify(ctx, Z)
    assert rep.status == "certified_holds"
    sc = scan(ctx, Z, 12)
    assert len(sc.shells) == 12
    chain = [rep]
    for target in ("HS'", "HS''", "HS'", "HS", "HS''", "HS"):
        chain.append(convert_constants(chain[-1], target, ctx))
    for conv in chain:
        assert conv.status == "certified_holds"
        for rec in sc.shells:
            sigma2 = sum(abs(x) for x in rec.sigma[ctx.m: ctx.n])
            assert rec.log10_lo >= floor_log10(conv, rec.shell, sigma2)
