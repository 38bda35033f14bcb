"""
Exponential polynomials and multiplicative bandwidth
====================================================

exp(ikx) is an exponential polynomial of degree 1 and exp(-ax^2) of
degree 2, whatever k and a are, so two or three lifted samples pin them
down.
"""

import numpy as np

from starcalc import embed, exp_lift, fit_exp_poly, truncated_log_lift

k = 50.0
xs = np.array([0.0, 0.1])
print("nodes 0.1 apart, wavelength", 2 * np.pi / k)
print("from lifted samples:   ", fit_exp_poly(xs, exp_lift(1j * k * xs)).coeffs)
# the projected samples only know exp(ik dx), so the sheet is lost
print("from embedded samples: ", fit_exp_poly(xs, embed(np.exp(1j * k * xs))).coeffs)

xs = np.array([0.0, 0.1, 0.2])
p = fit_exp_poly(xs, exp_lift(-7 * xs**2 + 0j))
print("gaussian coefficients: ", np.round(p.coeffs.real, 12))
x = np.linspace(-1, 1, 100)
print("off-node log error:    ", np.abs(p.log(x) - (-7 * x**2)).max())

# 1 - a e^{ix} is not an exponential polynomial; its log series
# converges, but only like |a|^n / n
x = np.linspace(-np.pi, np.pi, 1001)
for a in (0.5, 0.9):
    for n in (5, 20):
        err = np.abs(truncated_log_lift(a, x, n).project() - (1 - a * np.exp(1j * x))).max()
        print(f"a={a} n={n:2d}: max error {err:.2e}")
