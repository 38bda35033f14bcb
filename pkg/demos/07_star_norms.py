"""
*Norms and relative error bounds
================================

||u||_* = exp ||log u|| is at least 1.  Its distance from 1 bounds the
relative error of the projections.
"""

import numpy as np

from starcalc import NormSpec, SurfaceVector, exp_lift, relative_bound, star_inner, star_norm

rng = np.random.default_rng(0)

# constant vector of r's: r ** sqrt(n) in the 2-norm
n, r = 9, 1.5
print(star_norm(SurfaceVector(np.full(n, r)), NormSpec(2)), r ** np.sqrt(n))

u = exp_lift(rng.uniform(-2, 2, 6) + 1j * rng.uniform(-2, 2, 6))
print("(u, u)_* =", star_inner(u, u))

# perturb and compare the bound with the actual projected error
for size in (1e-1, 1e-4, 1e-8):
    v = u * exp_lift(size * (rng.normal(size=6) + 1j * rng.normal(size=6)))
    for spec in (NormSpec(2), NormSpec(np.inf)):
        actual = spec(u.project() - v.project()) / spec(u.project())
        print(f"size {size:.0e} p={spec.p}: error {actual:.3e} <= bound {relative_bound(u, v, spec):.3e}")
