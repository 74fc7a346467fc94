"""
Solving dbar psi = phi mode by mode
===================================

A closed (0, p)-form phi is a finite Fourier sum. On each mode sigma the
equation is an algebraic division by the pivot component of
mu = pi (K_sigma + d(L)) C_1. The sigma0 mode, if any, is harmonic and is
split off.
"""
import json
import random
from pathlib import Path

from torocoh.dbar import FourierForm, check_closed, forms_equal, forward, solve
from torocoh.io import form_to_json, parse_form
from torocoh.reports import context_of
from torocoh.spectral import find_sigma0
from torocoh.worked_examples import EXAMPLES

DATA = Path(__file__).parent / "data"

# %% a one-mode form on the d(s_1) = 1/2 bundle
ctx = context_of(*EXAMPLES["10.1"]())
Z = find_sigma0(ctx)
phi = parse_form(json.loads((DATA / "phi_half_shift.json").read_text()), ctx.m, ctx.field)
print("closed:", bool(check_closed(phi, ctx)))
res = solve(phi, Z, ctx)
print(json.dumps(form_to_json(res.psi, 12), indent=1))
print("forward(psi) == phi:", forms_equal(forward(res.psi, ctx), phi))

# %% with sigma0 present the harmonic part is returned separately
ctx2 = context_of(*EXAMPLES["10.2"]())
Z2 = find_sigma0(ctx2)
phi2 = parse_form({"p": 1, "modes": [
    {"sigma": [0, 1, 0], "coeffs": {"1": {"re": 3, "im": 0}}},
    {"sigma": [1, 0, 0], "coeffs": {"1": {"re": 1, "im": 1}}},
]}, ctx2.m, ctx2.field)
res2 = solve(phi2, Z2, ctx2)
print("harmonic modes:", sorted(res2.harmonic.coeffs), " solved modes:", sorted(res2.psi.coeffs))

# %% float mode: random coefficients, relative residual of the round trip
rng = random.Random(0)
coeffs = {(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)): {(0,): complex(rng.random(), rng.random())}
          for _ in range(20)}
phi3 = FourierForm(1, 1, coeffs, "numeric", 0)
res3 = solve(phi3, Z, ctx)
print("numeric max residual:", res3.max_residual)
