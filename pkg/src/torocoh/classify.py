"""Three-way classification of H^p(X, O(L)) for a homogeneous line bundle.

    I(i)   HS holds, Z is the whole lattice      -> H^p = 0          (p >= 1)
    I(ii)  HS holds, sigma_0 exists              -> H^p = H^p(T, O)  (p >= 1)
    II     HS fails                              -> non-Hausdorff, infinite-dimensional (1 <= p <= m)
"""
from dataclasses import dataclass, field
from math import comb

from .bundle import invariants, normalize
from .diophantine import certify, refute, scan
from .errors import PreconditionError
from .scalars.descriptors import LacunaryDecimal
from .spectral import find_sigma0, make_context
from .torus import build_frame, check_irrationality

VERDICT_ZERO = "H^p = 0"
VERDICT_TORUS = "H^p ≅ H^p(T, O)"
VERDICT_WILD = "non-Hausdorff, infinite-dimensional"


@dataclass
class ClassifyOptions:
    radius: int = 12
    witness_rule: str = None
    nu_max: int = 3
    accept_evidence: bool = False
    external_facts: bool = False
    tau_bound: int = 6


@dataclass
class ClassificationResult:
    case: str
    verdicts: dict = field(default_factory=dict)
    sigma0: tuple = None
    condition: object = None
    grade: str = "certified"
    notes: list = field(default_factory=list)
    irrationality: object = None

    def to_json(self):
        return {
            "case": self.case,
            "verdicts": {str(p): v for p, v in sorted(self.verdicts.items())},
            "sigma0": list(self.sigma0) if self.sigma0 is not None else None,
            "condition": self.condition.to_json() if self.condition is not None else None,
            "grade": self.grade,
            "notes": list(self.notes),
            "irrationality": self.irrationality.to_json() if self.irrationality else None,
        }


def _default_rule(ctx):
    g = ctx.field.generator
    if isinstance(g, LacunaryDecimal) and g.rule in ("factorial-pow10", "supergap"):
        return g.rule
    return None


def condition_report(ctx, Z, options):
    """The strongest available HS report: certify, refute, then scan."""
    kind = ctx.field.kind
    if kind == "algebraic":
        rep = certify(ctx, Z)
        if rep.certified:
            return rep
    if kind == "transcendental":
        rule = options.witness_rule or _default_rule(ctx)
        if rule is not None and Z.sigma0 is not None:
            rep = refute(ctx, Z, rule, options.nu_max)
            if rep.certified:
                return rep
            fallback = rep
        else:
            fallback = None
        sc = scan(ctx, Z, options.radius)
        if fallback is not None:
            sc.notes = list(fallback.notes) + sc.notes
            sc.witnesses = fallback.witnesses
        return sc
    return scan(ctx, Z, options.radius)


def classify(group, d, options=None):
    options = options or ClassifyOptions()
    frame = build_frame(group)
    dt, _ = normalize(d, frame)
    inv = invariants(dt, frame)
    if inv.trivial:
        return ClassificationResult(
            "trivial_bundle", notes=["bundle is analytically trivial; H^p(X, O) is outside this tool"]
        )
    irr = check_irrationality(group, options.tau_bound)
    if irr.status == "certified_fails":
        return ClassificationResult(
            "undetermined", grade="certified", irrationality=irr,
            notes=[f"(IS) fails with tau = {list(irr.tau)}: not a toroidal group"],
        )
    ctx = make_context(group, frame, inv)
    try:
        Z = find_sigma0(ctx)
    except PreconditionError as exc:
        return ClassificationResult("undetermined", notes=[str(exc)], irrationality=irr)
    rep = condition_report(ctx, Z, options)
    certified = rep.certified and Z.certified and irr.status == "certified_holds"
    grade = "certified" if certified else "evidence"
    m = group.m
    res = ClassificationResult("undetermined", sigma0=Z.sigma0, condition=rep, grade=grade, irrationality=irr)
    holds = rep.status in ("certified_holds",) or (options.accept_evidence and rep.status == "evidence_holds")
    fails = rep.status in ("certified_fails",) or (options.accept_evidence and rep.status == "evidence_fails")
    if not rep.certified and not options.accept_evidence:
        res.notes.append(f"only evidence available ({rep.status}); pass accept_evidence to use it")
        return res
    if holds:
        if Z.full:
            res.case = "I_i"
            res.verdicts = {p: VERDICT_ZERO for p in range(1, m + 1)}
        else:
            res.case = "I_ii"
            res.verdicts = {p: VERDICT_TORUS for p in range(1, m + 1)}
            if options.external_facts:
                res.notes.append(
                    "dim H^p(T, O) = " + ", ".join(f"C({m},{p}) = {comb(m, p)}" for p in range(1, m + 1))
                    + " (standard Hodge theory of the base torus)"
                )
    elif fails:
        res.case = "II"
        res.verdicts = {p: VERDICT_WILD for p in range(1, m + 1)}
        res.notes.append("non-Hausdorff mechanism witnessed; infinite dimension is asserted, not independently verified")
    else:
        res.notes.append(f"condition status {rep.status}")
    return res
