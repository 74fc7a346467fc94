"""
Real coordinates on a toroidal group
====================================

A toroidal group X = C^n / Gamma is given by its period matrix P = (I_n S).
This script builds the real coordinate frame (A, B, C = B^-1) for the group
with S = (i sqrt2; i), checks B C = I exactly, and moves a point between
complex coordinates z and lattice coordinates t.
"""
import json
from pathlib import Path

import numpy as np

from torocoh.io import exact, parse_instance
from torocoh.scalars import linalg
from torocoh.torus import build_frame, check_irrationality, coord_map, dbar_vector

DATA = Path(__file__).parent / "data"

# %% load the group: S = (i sqrt2; i), n = 2, m = 1
group = json.loads((DATA / "sqrt2_group.json").read_text())
P, _ = parse_instance(group)
print("field generator t =", P.field)

# %% the irrationality condition: no integer tau makes tau S integral
print("irrationality:", check_irrationality(P).status)

# %% the frame. Entries are exact elements of Q(sqrt2), printed with t = sqrt2
fr = build_frame(P)
for name, M in (("A", fr.A), ("B", fr.B), ("C", fr.C)):
    print(name, "=", [[exact(x) for x in row] for row in M])
print("B C =", [[exact(x) for x in row] for row in linalg.matmul(fr.B, fr.C)])

# %% the lattice generators become unit vectors in t
for j in range(P.n):
    print("column", j, "->", [exact(x) for x in coord_map(fr, "z->t", P.column(j))])

# %% float round trip of a random point
z = np.array([0.3 + 1.1j, -0.7 + 0.2j])
t = coord_map(fr, "z->t", list(z))
print("t =", t, " round trip error =", np.max(np.abs(coord_map(fr, "t->z", t) - z)))

# %% d/dzbar_j written in the t-basis
for j in (1, 2):
    print(f"d/dzbar_{j} =", [exact(c.re) + " + i*(" + exact(c.im) + ")" for c in dbar_vector(fr, j)])
