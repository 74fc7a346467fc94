"""Truncated Fourier model of (0,p)-forms along the base directions.

A form is a finite map ``sigma -> {I: coefficient}`` with I a strictly
increasing tuple of 0-based indices into dzbar_1..dzbar_m.  Per mode the
operator psi -> Phi_0 ^ psi + dbar_1 psi is wedging with

    mu_sigma = Ktilde_sigma + beta = pi (K_sigma + d(L)) C_1.

Exact forms keep coefficients in the instance field and carry a single
power of pi (``pi_power``): the true coefficient is ``value * pi**pi_power``.
Numeric forms use complex128 and the actual mu.
"""
import cmath
import itertools
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import DivisionUndecidedError, PreconditionError, ValidationError
from .scalars.field import ComplexElement
from .scalars.logspace import LogEnclosure, precision, to_iv
from .scalars.sign import positive_enclosure
from .diophantine import _K_linear, _default_family, _dps_for_exponent, _lacunary_generator
from .scalars.lacunary import ApproximationRule, lacunary_gap
from .spectral import k_sigma, pivot_np, pivot_of
from .torus import dbar_vector

NUMERIC_TOL = 1e-12


def canonical(indices):
    """(sign, sorted tuple) for a multi-index; sign 0 on repeated entries."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def wedge_sign(j, I):
    """dzbar_j ^ dzbar_I = sign * dzbar_(sorted)."""
    if j in I:
        return 0, None
    return (-1) ** sum(1 for i in I if i < j), tuple(sorted(I + (j,)))


@dataclass
class FourierForm:
    p: int
    m: int
    coeffs: dict = field(default_factory=dict)
    mode: str = "exact"
    pi_power: int = 0

    def __post_init__(self):
        if not 0 <= self.p <= self.m:
            raise ValidationError(f"degree {self.p} outside 0..{self.m}")
        if self.mode not in ("exact", "numeric"):
            raise ValidationError("mode is 'exact' or 'numeric'")
        clean = {}
        for sigma, comp in self.coeffs.items():
            out = {}
            for I, v in comp.items():
                s, J = canonical(I)
                if s == 0:
                    continue
                if len(J) != self.p or (J and not 0 <= J[0] <= J[-1] < self.m):
                    raise ValidationError(f"bad multi-index {I} for a {self.p}-form")
                val = v if s > 0 else -v
                out[J] = out[J] + val if J in out else val
            clean[tuple(sigma)] = out
        self.coeffs = clean

    @property
    def support(self):
        return sorted(self.coeffs)

    def get(self, sigma, I):
        s, J = canonical(I)
        if s == 0:
            return self._zero()
        v = self.coeffs.get(tuple(sigma), {}).get(J)
        if v is None:
            return self._zero()
        return v if s > 0 else -v

    def _zero(self):
        return 0j if self.mode == "numeric" else None

    def index_sets(self):
        return list(itertools.combinations(range(self.m), self.p))

    def scaled(self, c):
        return FourierForm(self.p, self.m,
                           {s: {I: v * c for I, v in comp.items()} for s, comp in self.coeffs.items()},
                           self.mode, self.pi_power)

    def magnitude(self, sigma):
        """max |coefficient| of a mode, as a float (pi power included)."""
        comp = self.coeffs.get(tuple(sigma), {})
        if not comp:
            return 0.0
        scale = math.pi ** self.pi_power
        return max(abs(complex(v)) for v in comp.values()) * scale


def _mu_exact(ctx, sigma):
    sh = k_sigma(sigma, ctx)
    return list(sh.shifted_over_pi), sh.pivot


def _mu_numeric(ctx, sigma):
    w = math.pi * ctx.shifted_np(sigma)
    return w, pivot_np(w)


def _is_zero(v):
    if isinstance(v, ComplexElement):
        return v.is_identically_zero()
    return v == 0


def forward(psi, ctx):
    """psi (degree p-1) -> Phi_0 ^ psi + dbar_1 psi (degree p), mode by mode."""
    m = psi.m
    if psi.p >= m:
        raise ValidationError("forward needs p - 1 < m")
    out = {}
    for sigma, comp in psi.coeffs.items():
        mu = _mu_exact(ctx, sigma)[0] if psi.mode == "exact" else _mu_numeric(ctx, sigma)[0]
        acc = {}
        for I, v in comp.items():
            for j in range(m):
                s, J = wedge_sign(j, I)
                if s == 0:
                    continue
                term = mu[j] * v
                term = term if s > 0 else -term
                acc[J] = acc[J] + term if J in acc else term
        out[sigma] = acc
    return FourierForm(psi.p + 1, m, out, psi.mode, psi.pi_power + (1 if psi.mode == "exact" else 0))


def _wedge_mu(mu, comp, p, m, mode):
    """Components of mu ^ phi for one mode (degree p + 1)."""
    res = {}
    for K in itertools.combinations(range(m), p + 1):
        total = None
        for pos, j in enumerate(K):
            I = K[:pos] + K[pos + 1 :]
            v = comp.get(I)
            if v is None:
                continue
            term = mu[j] * v
            term = term if pos % 2 == 0 else -term
            total = term if total is None else total + term
        if total is not None:
            res[K] = total
    return res


@dataclass
class ClosedReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_closed(phi, ctx):
    """mu_sigma ^ phi^sigma = 0 for every mode (vacuous in top degree).

    The components through the pivot index are the proportionality
    relations mu_j(s) phi_{j I} = mu_j phi_{j(s) I}; the others follow from
    them whenever mu_sigma != 0.  Numeric forms pass when every component is
    at most 1e-12 * |mu| * |phi| for the mode.
    """
    m, p = phi.m, phi.p
    if p == 0:
        raise ValidationError("closedness is checked for p >= 1")
    if p == m:
        return ClosedReport(True)
    bad = []
    for sigma, comp in sorted(phi.coeffs.items()):
        if phi.mode == "exact":
            mu, jp = _mu_exact(ctx, sigma)
            res = _wedge_mu(mu, comp, p, m, "exact")
            for K, v in res.items():
                if not v.is_identically_zero():
                    bad.append((sigma, tuple(k + 1 for k in K), "pivot" if jp - 1 in K else "other"))
        else:
            mu, jp = _mu_numeric(ctx, sigma)
            res = _wedge_mu(mu, comp, p, m, "numeric")
            scale = NUMERIC_TOL * max(1.0, float(np.max(np.abs(mu)))) * max(
                [abs(v) for v in comp.values()] + [1e-300]
            )
            for K, v in res.items():
                if abs(v) > scale:
                    bad.append((sigma, tuple(k + 1 for k in K), "pivot" if jp - 1 in K else "other"))
    return ClosedReport(not bad, bad)


@dataclass
class SolveResult:
    psi: FourierForm
    harmonic: FourierForm = None
    residuals: dict = field(default_factory=dict)

    @property
    def max_residual(self):
        return max(self.residuals.values(), default=0.0)


def solve(phi, Z, ctx, check=True):
    """psi^sigma_I = phi^sigma_{j(sigma) I} / mu_{j(sigma)} on Z; the sigma_0 mode
    (if present) is returned as the harmonic part."""
    if phi.p < 1:
        raise ValidationError("solve needs p >= 1")
    if ctx.inv.trivial:
        raise PreconditionError("solve needs a nontrivial bundle")
    if check:
        rep = check_closed(phi, ctx)
        if not rep:
            raise PreconditionError(f"form is not closed at {rep.violations[:3]}")
    m, p = phi.m, phi.p
    exact = phi.mode == "exact"
    psi_coeffs, harm = {}, {}
    for sigma, comp in phi.coeffs.items():
        if sigma not in Z:
            harm[sigma] = dict(comp)
            continue
        if exact:
            mu, jp = _mu_exact(ctx, sigma)
            denom = mu[jp - 1]
            if not ctx.certified:
                iv_re, iv_im = denom.re.interval(), denom.im.interval()
                if iv_re.contains_zero() and iv_im.contains_zero():
                    raise DivisionUndecidedError(f"pivot denominator may vanish at {sigma}")
            elif denom.is_identically_zero():
                raise PreconditionError(f"pivot denominator vanishes at {sigma} outside sigma_0")
            inv = denom.inverse()
        else:
            mu, jp = _mu_numeric(ctx, sigma)
            denom = mu[jp - 1]
            if denom == 0:
                raise PreconditionError(f"pivot denominator vanishes at {sigma}")
            inv = 1 / denom
        j = jp - 1
        out = {}
        for I in itertools.combinations(range(m), p - 1):
            if j in I:
                continue
            s, J = wedge_sign(j, I)
            v = comp.get(J)
            if v is None:
                continue
            val = v * inv
            out[I] = val if s > 0 else -val
        psi_coeffs[sigma] = out
    psi = FourierForm(p - 1, m, psi_coeffs, phi.mode, phi.pi_power - (1 if exact else 0))
    harmonic = FourierForm(p, m, harm, phi.mode, phi.pi_power) if harm else None
    result = SolveResult(psi, harmonic)
    result.residuals = residuals(phi, psi, harmonic, ctx)
    return result


def residuals(phi, psi, harmonic, ctx):
    """Per-mode sup-norm of forward(psi) + harmonic - phi (0.0 when exactly zero)."""
    img = forward(psi, ctx) if psi.p < psi.m else None
    out = {}
    for sigma in phi.support:
        worst = 0.0
        for I in phi.index_sets():
            a = phi.get(sigma, I)
            b = img.get(sigma, I) if img is not None else None
            h = harmonic.get(sigma, I) if harmonic is not None else None
            diff = _sum([b, h]) if (b is not None or h is not None) else None
            if phi.mode == "exact":
                d = _sub(diff, a)
                if d is not None and not d.is_identically_zero():
                    worst = max(worst, abs(complex(d)) * math.pi ** phi.pi_power)
            else:
                d = (diff if diff is not None else 0j) - (a if a is not None else 0j)
                scale = max(abs(a) if a is not None else 0.0, 1e-300)
                worst = max(worst, abs(d) / scale if abs(d) > 0 else 0.0)
        out[sigma] = worst
    return out


def _sum(vals):
    tot = None
    for v in vals:
        if v is None:
            continue
        tot = v if tot is None else tot + v
    return tot


def _sub(a, b):
    if a is None and b is None:
        return None
    if a is None:
        return -b
    if b is None:
        return a
    return a - b


def forms_equal(a, b):
    """Exact per-mode equality (missing coefficients read as zero)."""
    if a.mode != "exact" or b.mode != "exact":
        raise ValidationError("exact comparison only")
    if a.p != b.p or a.pi_power != b.pi_power:
        return False
    for sigma in set(a.coeffs) | set(b.coeffs):
        for I in a.index_sets():
            d = _sub(a.get(sigma, I), b.get(sigma, I))
            if d is not None and not d.is_identically_zero():
                return False
    return True


def max_relative_difference(a, b):
    """sup over modes of |a - b| / max(|a|, |b|) for numeric forms."""
    worst = 0.0
    for sigma in set(a.coeffs) | set(b.coeffs):
        ref = max([abs(v) for v in a.coeffs.get(sigma, {}).values()]
                  + [abs(v) for v in b.coeffs.get(sigma, {}).values()] + [1e-300])
        for I in a.index_sets():
            d = abs(a.get(sigma, I) - b.get(sigma, I))
            worst = max(worst, d / ref)
    return worst


# --------------------------------------------------------------------------
# decay reports


def decay_report(form, R_list, k_list, n=None):
    """sup |a^sigma| R^{|sigma''|} |sigma|^k over the support, per (R, k).

    |sigma|^k at sigma = 0 is taken as 1.  Nested truncations |sigma|_1 <= t
    (t running over the support norms) expose a growth trend.
    """
    if n is None:
        raise ValidationError("decay_report needs n to split sigma''")
    m = form.m
    norms = sorted({sum(abs(x) for x in s) for s in form.support})
    rows = []
    for R in R_list:
        for k in k_list:
            sups = []
            for t in norms:
                best = mpmath.mpf(0)
                for s in form.support:
                    nrm = sum(abs(x) for x in s)
                    if nrm > t:
                        continue
                    dpp = sum(abs(x) for x in s[m:n])
                    val = mpmath.mpf(form.magnitude(s)) * mpmath.mpf(R) ** dpp
                    val *= mpmath.mpf(nrm) ** k if nrm > 0 else 1
                    best = max(best, val)
                sups.append(best)
            trend = "growing" if len(sups) > 1 and sups[-1] > sups[-2] * (1 + 1e-12) else "stable"
            rows.append({
                "R": R,
                "k": k,
                "sup": float(sups[-1]) if sups else 0.0,
                "truncations": [float(x) for x in sups],
                "trend": trend,
            })
    return rows


# --------------------------------------------------------------------------
# case-II witness


@dataclass
class WitnessResult:
    records: list = field(default_factory=list)

    @property
    def all_certified(self):
        return all(r["delta_exceeds_nu"] and r["image_within_bound"] for r in self.records)

    def to_json(self):
        return {"records": self.records, "all_certified": self.all_certified}


def witness_non_hausdorff(ctx, Z, rule="supergap", nu_max=3, family=None):
    """For sigma(nu) from a lacunary witness family: the preimage coefficient
    delta = exp(-nu |sigma''|) / mu_{j*} exceeds nu while the image
    coefficients stay <= exp(-nu |sigma''|).

    With v(sigma(nu)) = -(q theta - p) K(w) the pivot of mu is the pivot of
    K(w) C_1, so |delta| is computed in log10 from the lacunary gap.
    """
    if isinstance(rule, str):
        rule = ApproximationRule(rule)
    theta = _lacunary_generator(ctx)
    fam = family or _default_family(ctx, Z, rule, nu_max)
    n, m = ctx.n, ctx.m
    Kw = _K_linear(ctx, fam.w)
    dirv = ctx.times_C1(Kw)
    # pivot of the direction vector; exact comparison of moduli
    jstar = pivot_of(dirv)
    dmag = positive_enclosure(dirv[jstar - 1].abs2()).sqrt(40)
    u, base = fam.u, fam.base
    A = sum(abs(x) for x in u[m:n])
    B = sum(base[k] if u[k] > 0 else (-base[k] if u[k] < 0 else abs(base[k])) for k in range(m, n))
    result = WitnessResult()
    for nu in range(1, (fam.nu_max if family else nu_max) + 1):
        E = rule.q_rule(theta, nu)
        gap = lacunary_gap(theta, nu, lambda v: rule.q_rule(theta, v), lambda v: rule.p_rule(theta, v))
        with precision(_dps_for_exponent(E)):
            q = mpmath.iv.mpf(10) ** to_iv(E)
            expo = -nu * (q * A + B) * mpmath.iv.log10(mpmath.iv.e)
            g = gap.log10_gap.as_iv()
            dlo = expo - mpmath.iv.log10(mpmath.iv.pi) - mpmath.iv.log10(to_iv(dmag.hi)) - g
            dhi = expo - mpmath.iv.log10(mpmath.iv.pi) - mpmath.iv.log10(to_iv(dmag.lo)) - g
            delta = LogEnclosure(dlo.a, dhi.b)
            image = LogEnclosure.from_iv(expo)
            lognu = LogEnclosure.from_iv(mpmath.iv.log10(mpmath.iv.mpf(nu)))
        result.records.append({
            "nu": nu,
            "pivot": jstar,
            "log10_delta": delta.to_json(),
            "log10_nu": lognu.to_json(),
            "delta_exceeds_nu": bool(delta.certainly_greater(lognu)),
            "log10_image": image.to_json(),
            "log10_bound": image.to_json(),
            # mu_{j*} * delta = exp(-nu |sigma''|) exactly; the other
            # components are no larger because j* maximizes |mu_j|
            "image_within_bound": True,
            "image_equals_bound": True,
            "image_certificate": "pivot cancellation and pivot maximality",
        })
    return result


# --------------------------------------------------------------------------
# numeric bridge


def mode_function(ctx, sigma, a=1.0):
    """f^sigma(t) = a exp(-2 pi sum_{i>m} sigma_i t_{n+i}) e(<sigma, t'>)."""
    n, m = ctx.n, ctx.m
    sig = np.asarray(sigma, dtype=float)

    def f(t):
        t = np.asarray(t, dtype=float)
        phase = float(sig @ t[: n + m])
        damp = -2 * math.pi * float(sig[m:n] @ t[n + m : 2 * n]) if n > m else 0.0
        return a * cmath.exp(damp + 2j * math.pi * phase)

    return f


def dzbar_numeric(frame, f, t, j, h=1e-6):
    """Central-difference d f / d zbar_j using the frame's t-expansion."""
    coeffs = [complex(c) for c in dbar_vector(frame, j)]
    t = np.asarray(t, dtype=float)
    total = 0j
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        e = np.zeros_like(t)
        e[k] = h
        total += c * (f(t + e) - f(t - e)) / (2 * h)
    return total
