"""
Finite quotients and the *derivative
====================================

The multiplicative derivative replaces differences by quotients and
division by roots.  On the surface it equals exp((log f)').
"""

import math

import numpy as np

from starcalc import (
    QuotientStencil,
    check_rule,
    exp_lift,
    finite_quotient,
    star_derivative_oracle,
    star_distance,
)

# a^x is "linear" here: every quotient gives a, for any step
f = lambda x: exp_lift(math.log(3.0) * x)
for h in (1.0, 0.1, 1e-3):
    print(h, finite_quotient(f, 0.4, QuotientStencil("forward", h)))

# the centered quotient is exact whenever log f is quadratic,
# however coarse the stencil and however fast f winds
g = lambda x: -x**2 + 40j * x
f = lambda x: exp_lift(g(x))
exact = star_derivative_oracle(g, lambda x: -2 * x + 40j, 1.0)
for h in (1.0, 0.25, 1e-3):
    got = finite_quotient(f, 1.0, QuotientStencil("centered", h))
    print(f"h={h:<6} error={star_distance(got, exact):.2e}")

# for log f = sin x it is second order
f = lambda x: exp_lift(math.sin(x))
exact = star_derivative_oracle(math.sin, math.cos, 0.6)
hs = 0.2 / 2.0 ** np.arange(5)
errs = [star_distance(finite_quotient(f, 0.6, QuotientStencil("centered", h)), exact) for h in hs]
print("orders:", np.round(np.log2(np.array(errs[:-1]) / errs[1:]), 3))

# the classical rules carry over, also far from the principal sheet
f = lambda x: exp_lift(0.3 * x**2 + 1j * (20 * math.pi + 2 * x))
g = lambda x: exp_lift(-0.2 * x + 1j * x**3)
stencil = QuotientStencil("centered", 1e-5)
for rule in ("power", "product", "quotient", "func_power", "chain"):
    r = check_rule(rule, f, g, lambda x: 0.5 * x + 1, x=0.3, stencil=stencil, c=1.5 - 0.5j)
    print(f"{rule:>10}: residual {r:.1e}")
