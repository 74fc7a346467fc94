"""
Spectral shifts and the exceptional mode sigma0
===============================================

On the Fourier mode sigma = (sigma', sigma'', sigma''') the operator dbar acts
through K_sigma + d(L), where K_sigma = (sigma', sigma'') S - sigma'''. At most
one mode sigma0 kills the bundle. We look for it on two bundles over the sqrt2
group and show the pivot used for division.
"""
from torocoh.io import exact
from torocoh.reports import context_of
from torocoh.spectral import find_sigma0, k_sigma, m0
from torocoh.worked_examples import EXAMPLES

for name in ("10.1", "10.2"):
    ctx = context_of(*EXAMPLES[name]())
    Z = find_sigma0(ctx)
    print(f"d(s_1) example {name}: sigma0 = {Z.sigma0}, certified = {Z.certified}")
    for sigma in [(1, 0, 0), (0, 1, 0), (1, 1, 2)]:
        sh = k_sigma(sigma, ctx)
        res = ", ".join(f"{exact(z.re)} + i*({exact(z.im)})" for z in sh.residual)
        print(f"  sigma = {sigma}: K + d(L) = [{res}], pivot = {sh.pivot}")
    if Z.sigma0 is None:
        ivl, _, arg = m0(ctx, Z)
        print(f"  min over sigma''' of |d(L) - sigma'''| lies in [{float(ivl.lo):.6f}, {float(ivl.hi):.6f}]")
