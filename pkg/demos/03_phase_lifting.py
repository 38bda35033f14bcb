"""
Lifting complex samples and the Hankel function
===============================================

Unwrapping the phase of samples chooses a sheet for each point.  For
H_0^(1) = J_0 + i Y_0 the sheet index can also be read off from the
zeros of Y_0.
"""

import numpy as np

from starcalc import ComplexSamples1D, lift_hankel, lift_samples, y_zeros

xs = np.linspace(0, 3, 31)
lifted = lift_samples(ComplexSamples1D(xs, np.exp(20j * xs)))
print("unwrapped / k:", np.round(lifted.ws.argument / 20, 12)[:6], "...")

# the principal argument of H_0 jumps by 2 pi where the curve crosses the
# negative real axis, i.e. at every second zero of Y_0
print("zeros of Y_0 below 10:", np.round(y_zeros(0, 10), 6))

x = np.arange(0.5, 30.0, 0.01)
w = lift_hankel(1, 0, x)
principal = np.angle(w.project())
print("max jump, principal arg:", np.abs(np.diff(principal)).max())
print("max jump, lifted arg:   ", np.abs(np.diff(w.argument)).max())

# the lifted phase approaches x - pi/4
for xi in (5.0, 15.0, 29.99):
    print(xi, lift_hankel(1, 0, xi).argument - (xi - np.pi / 4))

# unwrapping the same samples gives the same lift up to whole turns
unwrapped = lift_samples(ComplexSamples1D(x, w.project())).ws.argument
print("offset in turns:", np.unique(np.round((w.argument - unwrapped) / (2 * np.pi), 9)))
