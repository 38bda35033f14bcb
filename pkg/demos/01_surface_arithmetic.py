"""
Arithmetic on the Riemann surface of the logarithm
==================================================

Points carry an argument that is never reduced mod 2*pi, so the
logarithm is single valued.
"""

import math

import numpy as np

from starcalc import SurfacePoint, embed, exp_lift, log_surface, project, star_abs

# (r, theta) with theta unreduced: three half turns is a different point
# from one half turn, even though both project to -1
w1 = exp_lift(1j * math.pi)
w3 = exp_lift(3j * math.pi)
print(w1, w3)
print("projections:", project(w1), project(w3))
print("logs:       ", log_surface(w1), log_surface(w3))

# products add arguments, so a full turn is remembered
print("w1 * w1 =", w1 * w1, "->", project(w1 * w1))

# embedding picks a sheet; the branch center moves the window
z = -1 + 1e-12j
for tau in (0.0, 2 * math.pi, -4 * math.pi):
    print(f"embed(z, {tau:+.3f}) =", embed(z, tau))

# complex powers act on the logarithm: (r, t)**(u + iv)
a = SurfacePoint(2.0, 7.0)
print("a**(1+1j) =", a ** (1 + 1j))

# *absolute value exp|log w| is >= 1 and 1 only at the unit (1, 0)
for w in (SurfacePoint(0.5, 0.0), SurfacePoint(1.0, 3.0), SurfacePoint(1.0, 0.0)):
    print("|", w, "|_* =", star_abs(w).modulus)

# arrays give vectors of surface points
v = exp_lift(np.linspace(0, 4, 5) * 1j * math.pi)
print(v.argument / math.pi, np.round(v.project().real, 12))
