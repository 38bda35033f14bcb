"""
Variable speed, convergence and stability
=========================================

With c(x) = 2 + sin x the scheme is no longer exact but converges at
second order, and like every leapfrog it needs |c dt/dx| < 1.
"""

import numpy as np

from starcalc.experiments import convergence_study, observed_orders, stability_run

c = lambda x: 2 + np.sin(x)
table = convergence_study(c)
print(f"{'dx':>10} {'dt':>10} {'ln|v/w|_*':>12} {'projected':>12}")
for dx, dt, star, proj in table:
    print(f"{dx:10.5f} {dt:10.5f} {np.log(star):12.3e} {proj:12.3e}")
dx, dt, star, proj = map(np.array, zip(*table))
print("orders (log *error):", np.round(observed_orders(np.log(star)), 3))
print("orders (projected): ", np.round(observed_orders(proj), 3))

# a perturbation of size 1e-6 either stays put or explodes
for nu in (0.95, 1.05):
    _, errs = stability_run(nu)
    print(f"courant {nu}: {len(errs) - 1} steps, growth {errs.max() / errs[0]:.3g}")
