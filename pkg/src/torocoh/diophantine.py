"""The small-denominator conditions on ||K_sigma + d(L)||.

    HS    ||K_sigma + d(L)|| >= r ** -|(sigma', sigma'')|
    HS'   ||K_sigma + d(L)|| >= C exp(-a |(sigma', sigma'')|)
    HS''  ||K_sigma + d(L)|| >= C exp(-a |sigma''|)

for sigma in Z with (sigma', sigma'') != 0.  Reports carry an epistemic
status: certified_holds / certified_fails (exact arithmetic),
evidence_holds / evidence_fails (finite scans, float data) or unknown.
"""
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import iv

from .errors import PreconditionError, ValidationError
from .scalars import linalg
from .scalars.descriptors import LacunaryDecimal, exp_compare, exp_value
from .scalars.field import ComplexElement
from .scalars.lacunary import ApproximationRule, lacunary_gap
from .scalars.liouville import leading_and_root_bound
from .scalars.logspace import LogEnclosure, precision, to_iv
from .scalars.sign import norm_enclosure
from .torus import shell

CONDITIONS = ("HS", "HS'", "HS''")
SLOPE_THRESHOLD = 1.1


def frac_lower(x):
    """Exact Fraction not above an iv/mpf value."""
    v = x._mpi_[0] if hasattr(x, "_mpi_") else x._mpf_
    return _mpf_tuple_to_fraction(v)


def frac_upper(x):
    v = x._mpi_[1] if hasattr(x, "_mpi_") else x._mpf_
    return _mpf_tuple_to_fraction(v)


def _mpf_tuple_to_fraction(t):
    sign, man, exp, _ = t
    val = Fraction(man) * (Fraction(2) ** exp)
    return -val if sign else val


def _fmt(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


@dataclass
class GapRecord:
    sigma: tuple
    shell: int
    gap: object  # Interval enclosing ||K_sigma + d(L)||
    log10_lo: float
    log10_hi: float

    def to_json(self):
        return {
            "sigma": list(self.sigma),
            "shell": self.shell,
            "gap_lo": float(self.gap.lo),
            "gap_hi": float(self.gap.hi),
            "log10_lo": self.log10_lo,
            "log10_hi": self.log10_hi,
        }


@dataclass
class ConditionReport:
    condition: str
    status: str
    constants: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    radius: int = 0
    method: str = ""
    notes: list = field(default_factory=list)
    shells: list = field(default_factory=list)
    slope: float = None

    @property
    def certified(self):
        return self.status.startswith("certified")

    def to_json(self):
        return {
            "condition": self.condition,
            "status": self.status,
            "constants": {k: _fmt(v) for k, v in sorted(self.constants.items())},
            "witnesses": self.witnesses,
            "radius": self.radius,
            "method": self.method,
            "notes": list(self.notes),
            "shells": [s.to_json() for s in self.shells],
            "slope": self.slope,
        }


# --------------------------------------------------------------------------
# scan


def _log10_interval(ivl):
    lo = math.log10(ivl.lo) if ivl.lo > 0 else float("-inf")
    hi = math.log10(ivl.hi) if ivl.hi > 0 else float("-inf")
    return lo, hi


def best_tprime(ctx, head, Z):
    """sigma''' minimizing ||(sigma', sigma'') S - sigma''' + d(L)|| for a
    fixed head = (sigma', sigma''), by rounding plus +-1 neighbours."""
    m = ctx.m
    u = np.asarray(head, dtype=float) @ ctx.S_np + ctx.dL_np
    base = np.floor(u.real).astype(int)
    best, best_val = None, None
    for off in itertools.product((-1, 0, 1, 2), repeat=m):
        cand = tuple(int(b + o) for b, o in zip(base, off))
        sigma = tuple(head) + cand
        if sigma not in Z:
            continue
        val = float(np.linalg.norm(u - np.asarray(cand)))
        if best_val is None or val < best_val:
            best, best_val = sigma, val
    return best, best_val


def scan(ctx, Z, radius):
    """Per-shell minima of ||K_sigma + d(L)|| and a super-exponential decay test."""
    if radius < 1:
        raise ValidationError("radius must be >= 1")
    if ctx.inv.trivial:
        raise PreconditionError("scan needs a nontrivial bundle")
    records = []
    for rho in range(1, radius + 1):
        best, best_val = None, None
        for head in shell(ctx.n, rho):
            sigma, val = best_tprime(ctx, head, Z)
            if sigma is not None and (best_val is None or val < best_val):
                best, best_val = sigma, val
        res = ctx.residual(best)
        enc = norm_enclosure(res, 20)
        lo, hi = _log10_interval(enc)
        records.append(GapRecord(best, rho, enc, lo, hi))
    report = ConditionReport("HS", "evidence_holds", radius=radius, method="shell scan")
    report.shells = records
    kind = ctx.field.kind
    if any(r.gap.hi == 0 for r in records):
        report.status = "evidence_fails"
        report.notes.append("exact zero gap at a sigma outside sigma_0")
        return report
    pts = [(math.log(r.shell), math.log(-r.log10_hi * math.log(10)))
           for r in records if r.log10_hi < 0]
    if len(pts) >= 3:
        x = np.array([p[0] for p in pts])
        y = np.array([p[1] for p in pts])
        slope = float(np.polyfit(x, y, 1)[0])
        report.slope = slope
        if slope > SLOPE_THRESHOLD:
            report.status = "evidence_fails"
            report.notes.append(f"super-exponential decay: slope {slope:.3f} > {SLOPE_THRESHOLD}")
    else:
        report.notes.append("too few shells below 1 to fit a decay slope")
    if kind == "transcendental":
        report.status = "unknown"
        report.notes.append("lacunary data: witness shells are out of reach; use refute")
    return report


# --------------------------------------------------------------------------
# certify


def certify(ctx, Z):
    """Certified HS for data in a real algebraic field of degree >= 2.

    Every real component of K_sigma + d(L) is P(theta) with P in Q[x] of
    degree < N whose coefficients are affine in sigma.  Clearing
    denominators and using that the resultant with the minimal polynomial
    is a nonzero integer gives |P(theta)| >= c / H^(N-1), where H bounds the
    coefficient height.  If ||K_sigma + d(L)|| < 1 then |sigma'''| is
    bounded linearly by rho = |(sigma', sigma'')|, so H <= H1 * rho and
    ||K_sigma + d(L)|| >= min(1, C0 rho^-(N-1)) >= C0 exp(-(N-1) rho).
    """
    if ctx.inv.trivial:
        raise PreconditionError("certify needs a nontrivial bundle")
    f = ctx.field
    rep = ConditionReport("HS", "unknown", method="resultant floor")
    if f.kind != "algebraic":
        rep.notes.append(f"no certification pattern for {f.kind} data")
        return rep
    rows, rhs = ctx.linear_rows()
    basis = linalg.nullspace(rows)
    if basis:
        rep.notes.append("K_sigma + d(L) = 0 on a positive-dimensional set; (IS) fails")
        return rep
    n, m = ctx.n, ctx.m
    N = f.degree
    gen = f.generator
    lc, R = leading_and_root_bound(gen)
    Rp = max(Fraction(1), R)
    den = 1
    for row, r in zip(rows, rhs):
        for x in list(row) + [r]:
            den = math.lcm(den, x.denominator)
    # column sums of |rows| (height growth per unit of |sigma_l|)
    colmax = max(sum(abs(row[l]) for row in rows) for l in range(n + m))
    rsum = sum(abs(r) for r in rhs)
    # bound on |sigma'''|_1 / rho when the gap is < 1
    gamma_s = max(abs(ctx.S[l][k].re.interval(20).hi) for l in range(n) for k in range(m))
    gamma_s = max(gamma_s, max(abs(ctx.S[l][k].re.interval(20).lo) for l in range(n) for k in range(m)))
    lam = max(max(abs(z.re.interval(20).lo), abs(z.re.interval(20).hi)) for z in ctx.dL)
    kappa = 1 + m * gamma_s + m * (lam + 1)
    # heights are integers, so an integer per-shell bound loses nothing
    H1 = math.ceil(den * (colmax * kappa + rsum))
    C0 = 1 / (den * Fraction(lc) ** (N - 1) * (H1 * Rp ** (N - 1)) ** (N - 1))
    C = min(Fraction(1), C0)
    a = N - 1
    rep.status = "certified_holds"
    rep.constants = {"C": C, "a": Fraction(a)}
    rep.constants["r"] = hs_from_hs1(C, Fraction(a))
    rep.notes.append(
        f"degree {N} field; denominators {den}; height per shell {H1}; "
        f"HS' constants C = {_fmt(C)}, a = {a}"
    )
    return rep


# --------------------------------------------------------------------------
# constant conversions


def round_down(x, digits=30):
    """A shorter rational not above x (for positive x)."""
    x = Fraction(x)
    if x.denominator < 10 ** digits:
        return x
    scale = 10 ** (digits - _order(x))
    return Fraction(math.floor(x * scale), scale)


def round_up(x, digits=30):
    x = Fraction(x)
    if x.denominator < 10 ** digits:
        return x
    scale = 10 ** (digits - _order(x))
    return Fraction(math.ceil(x * scale), scale)


def _order(x):
    """Roughly floor(log10 |x|)."""
    num, den = abs(x.numerator), x.denominator
    return len(str(num)) - len(str(den))


def hs_from_hs1(C, a):
    """Rational r with r^-rho <= C exp(-a rho) for all rho >= 1."""
    with precision(50):
        # max(a - log C, a) is a - log C exactly when C <= 1
        x = to_iv(a) - iv.log(to_iv(C)) if C <= 1 else to_iv(a)
        r = iv.exp(x) + 1
    return Fraction(math.ceil(frac_upper(r)))


def hs1_from_hs(r):
    """(C, a) = (1, log r) with r raised to at least 1; a is a rational upper bound."""
    r = max(Fraction(r), Fraction(1))
    with precision(50):
        a = frac_upper(iv.log(to_iv(r)))
    return Fraction(1), round_up(a)


def gamma_constants(ctx):
    """(gamma1, gamma2, gamma1', gamma2') as rational bounds (upper, lower, upper, upper)."""
    n, m = ctx.n, ctx.m
    g1 = Fraction(0)
    for l in range(n):
        for k in range(m):
            z = ctx.S[l][k]
            g1 = max(g1, norm_enclosure([z], 20).hi)
    im1 = [[ctx.S[i][j].im for j in range(m)] for i in range(m)]
    inv = linalg.inverse(im1)
    total = Fraction(0)
    for row in inv:
        for x in row:
            ivl = x.interval(20) if hasattr(x, "interval") else None
            total += max(abs(ivl.lo), abs(ivl.hi))
    g2 = round_down(1 / total)
    dl = norm_enclosure(ctx.dL, 20).hi
    g1p = round_up((1 + dl) * total)
    g2p = round_up(g1 * total)
    return round_up(g1), g2, g1p, g2p


def convert_constants(report, target, ctx=None):
    """Convert a certified report between HS, HS' and HS''."""
    if target not in CONDITIONS:
        raise ValidationError(f"unknown condition {target!r}")
    if not report.certified or report.status != "certified_holds":
        out = ConditionReport(target, report.status, {}, report.witnesses, report.radius,
                              report.method, list(report.notes) + ["status carried over"])
        return out
    src = report.condition
    c = dict(report.constants)
    notes = list(report.notes)
    if src == target:
        return ConditionReport(target, report.status, c, report.witnesses, report.radius, report.method, notes)
    if src == "HS":
        C, a = hs1_from_hs(c["r"])
        mid = {"C": C, "a": a}
        if target == "HS'":
            return ConditionReport(target, report.status, mid, [], 0, "conversion: C = 1, a = log r", notes)
        tmp = ConditionReport("HS'", report.status, mid)
        return convert_constants(tmp, target, ctx)
    if src == "HS'":
        C, a = Fraction(c["C"]), Fraction(c["a"])
        if target == "HS":
            return ConditionReport(target, report.status, {"r": hs_from_hs1(C, a)}, [], 0,
                                   "r = exp(max(a - log C, a)) + 1", notes)
        if ctx is None:
            raise ValidationError("HS' -> HS'' needs the group data")
        g1, g2, g1p, g2p = gamma_constants(ctx)
        with precision(50):
            cc = frac_lower(to_iv(C) * iv.exp(-to_iv(a) * to_iv(g1p)))
        new = {"C": min(Fraction(1), round_down(cc)), "a": round_up(a * (1 + g2p))}
        notes.append(f"gamma1 <= {float(g1):.6g}, gamma2 >= {float(g2):.6g}")
        return ConditionReport(target, report.status, new, [], 0,
                               "C exp(-a gamma1'), a (1 + gamma2')", notes)
    # HS'' implies HS' with the same constants
    if target == "HS'":
        return ConditionReport(target, report.status, {"C": c["C"], "a": c["a"]}, [], 0, "inclusion", notes)
    tmp = ConditionReport("HS'", report.status, {"C": c["C"], "a": c["a"]})
    return convert_constants(tmp, "HS", ctx)


def floor_log10(report, rho, sigma2=None):
    """log10 of the certified floor of a report at a shell (float)."""
    c = report.constants
    if report.condition == "HS":
        return -rho * math.log10(float(c["r"]))
    x = rho if report.condition == "HS'" else sigma2
    return math.log10(float(c["C"])) - float(c["a"]) * x * math.log10(math.e)


# --------------------------------------------------------------------------
# refute


@dataclass(frozen=True)
class WitnessFamily:
    """sigma(nu) = base + q_nu * u + p_nu * w for an approximation rule."""

    rule: ApproximationRule
    base: tuple = None
    u: tuple = None
    w: tuple = None
    nu_max: int = 3


def _default_family(ctx, Z, rule, nu_max):
    n, m = ctx.n, ctx.m
    if Z.sigma0 is None:
        raise PreconditionError("default witness family needs sigma_0 as its base point")
    u = [0] * (n + m)
    u[m] = 1
    w = [0] * (n + m)
    w[n] = 1
    return WitnessFamily(rule, tuple(Z.sigma0), tuple(u), tuple(w), nu_max)


def _K_linear(ctx, sigma):
    n, m = ctx.n, ctx.m
    out = []
    for k in range(m):
        z = ComplexElement(ctx.field(-sigma[n + k]))
        for l in range(n):
            if sigma[l]:
                z = z + ctx.S[l][k] * sigma[l]
        out.append(z)
    return out


def _lacunary_generator(ctx):
    g = ctx.field.generator
    if not isinstance(g, LacunaryDecimal):
        raise PreconditionError("refute needs lacunary data")
    return g


def _dps_for_exponent(e):
    e = exp_value(e)
    if isinstance(e, int) and e < 2000:
        return 2 * e + 60
    return 60


def refute(ctx, Z, rule="factorial-pow10", nu_max=3, family=None):
    """Certify failure of HS along a witness family built from a lacunary generator."""
    if isinstance(rule, str):
        rule = ApproximationRule(rule)
    theta = _lacunary_generator(ctx)
    fam = family or _default_family(ctx, Z, rule, nu_max)
    n, m = ctx.n, ctx.m
    base, u, w = fam.base, fam.u, fam.w
    if not any(u[:n]):
        raise ValidationError("witness direction has (sigma', sigma'') = 0; excluded from HS")
    if any(w[m:n]):
        raise ValidationError("the p-direction must not move sigma''")
    if not ctx.residual_is_zero(base):
        raise ValidationError("witness base point must satisfy K_sigma + d(L) = 0")
    Ku = _K_linear(ctx, u)
    Kw = _K_linear(ctx, w)
    th = ctx.field.theta
    for a, b in zip(Ku, Kw):
        if not (a + b * th).is_identically_zero():
            raise ValidationError("witness directions must satisfy K(u) + theta K(w) = 0")
    kw_norm = norm_enclosure(Kw, 40)
    A = sum(abs(x) for x in u[m:n])
    B = 0
    bmax = 0
    for k in range(m, n):
        bmax = max(bmax, abs(base[k]))
        if u[k] > 0:
            B += base[k]
        elif u[k] < 0:
            B -= base[k]
        else:
            B += abs(base[k])
    records = []
    all_pass = True
    nu_max = fam.nu_max if family else nu_max
    for nu in range(1, nu_max + 1):
        E = rule.q_rule(theta, nu)
        # 10**E >= 10**digits(bmax) > bmax keeps every sigma'' entry's sign fixed
        if exp_compare(E, len(str(bmax))) < 0:
            raise ValidationError("q_nu too small for the sigma'' sign analysis")
        gap = lacunary_gap(theta, nu, lambda v: rule.q_rule(theta, v), lambda v: rule.p_rule(theta, v))
        rec = {"nu": nu, "q": f"10^{E}", "p_terms": gap.terms}
        with precision(_dps_for_exponent(E)):
            q = iv.mpf(10) ** to_iv(E)
            g = gap.log10_gap.as_iv()
            lhs = LogEnclosure(
                (g + iv.log10(to_iv(kw_norm.lo))).a, (g + iv.log10(to_iv(kw_norm.hi))).b
            )
            dpp = q * A + B
            rhs = LogEnclosure.from_iv(-iv.log10(iv.mpf(nu)) - nu * dpp * iv.log10(iv.e))
            qsq_rhs = LogEnclosure.from_iv(-(q * q) * iv.log10(iv.e))
            need_c = LogEnclosure.from_iv(gap.log10_gap.as_iv() + (q * q) * iv.log10(iv.e))
        verdict = lhs.compare(rhs)
        qsq = gap.log10_gap.compare(qsq_rhs)
        ok = verdict < 0
        all_pass &= ok
        rec.update({
            "sigma_dprime_norm": f"{A}*q + {B}",
            "gap": lhs.to_json(),
            "gap_width": float(lhs.width),
            "bound": rhs.to_json(),
            "refutation_inequality": {-1: "holds", 1: "fails", 0: "undecided"}[verdict],
            "q_squared_inequality": {
                "C": "1",
                "rhs": qsq_rhs.to_json(),
                "holds": {-1: True, 1: False, 0: None}[qsq],
                "log10_C_required_lo": mpmath.nstr(need_c.lo, 15),
            },
        })
        records.append(rec)
    rep = ConditionReport("HS", "certified_fails" if all_pass else "unknown",
                          method=f"lacunary witness ({rule.name})")
    rep.witnesses = records
    rep.notes.append(f"sigma(nu) = {list(base)} + q_nu*{list(u)} + p_nu*{list(w)}")
    if not all_pass:
        bad = [r["nu"] for r in records if r["refutation_inequality"] != "holds"]
        rep.notes.append(f"refutation inequality not satisfied for nu = {bad}")
    return rep
