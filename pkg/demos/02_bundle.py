"""
Homogeneous line bundles and the vector d(L)
============================================

A homogeneous line bundle is given by a summand of automorphy d on the lattice.
Normalizing d makes it real with d = 0 on the last n - m unit generators.
The invariants alpha, beta/pi and d(L) then follow from the frame.
"""
import json
from pathlib import Path

from torocoh.bundle import check_alpha_identity, check_cocycle, invariants, normalize
from torocoh.io import exact, parse_instance
from torocoh.torus import build_frame

DATA = Path(__file__).parent / "data"
group = json.loads((DATA / "sqrt2_group.json").read_text())

# %% two bundles on the same group: d(s_1) = 1/2 and an integer (trivial) one
for fname in ("half_shift_bundle.json", "trivial_bundle.json"):
    P, d = parse_instance(group, json.loads((DATA / fname).read_text()))
    fr = build_frame(P)
    dt, _ = normalize(d, fr)
    inv = invariants(dt, fr)
    print(fname)
    print("  alpha    =", [f"{exact(z.re)} + i*({exact(z.im)})" for z in inv.alpha])
    print("  beta/pi  =", [f"{exact(z.re)} + i*({exact(z.im)})" for z in inv.beta_over_pi])
    print("  d(L)     =", [f"{exact(z.re)} + i*({exact(z.im)})" for z in inv.dL])
    print("  trivial  =", inv.trivial)
    print("  cocycle  =", all(ok for _, ok in check_cocycle(inv, fr)))
    print("  alpha identity =", check_alpha_identity(inv, fr))
