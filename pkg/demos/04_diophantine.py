"""
The small-denominator condition: certify, scan, refute
======================================================

Hausdorffness of the cohomology hinges on a lower bound
||K_sigma + d(L)|| >= r^-|(sigma', sigma'')|. For algebraic data the bound is
certified from a resultant estimate. A shell scan provides float evidence.
For lacunary (Liouville-type) data an explicit witness family refutes it.
"""
from torocoh.diophantine import certify, convert_constants, refute, scan
from torocoh.reports import context_of
from torocoh.spectral import find_sigma0
from torocoh.worked_examples import EXAMPLES

# %% algebraic data: certified constants and their conversions
for name in ("10.1", "10.2"):
    ctx = context_of(*EXAMPLES[name]())
    Z = find_sigma0(ctx)
    rep = certify(ctx, Z)
    print(name, rep.status, {k: str(v) for k, v in rep.constants.items()})
    for target in ("HS'", "HS''"):
        conv = convert_constants(rep, target, ctx)
        print("   ", target, {k: str(v) for k, v in conv.constants.items()})
    sc = scan(ctx, Z, 8)
    print("    scan:", sc.status, "slope", round(sc.slope, 3),
          "minima", [round(r.log10_lo, 2) for r in sc.shells])

# %% lacunary data: the factorial rule is inconclusive, the supergap rule refutes
for name, rule in (("10.3", "factorial-pow10"), ("supergap", "supergap")):
    ctx = context_of(*EXAMPLES[name]())
    Z = find_sigma0(ctx)
    rep = refute(ctx, Z, rule, 2)
    print(name, rule, "->", rep.status)
    for w in rep.witnesses:
        print(f"   nu={w['nu']} q={w['q']} log10 gap in [{w['gap']['log10_lo']}, {w['gap']['log10_hi']}]"
              f" refutation: {w['refutation_inequality']}")
