"""
Finite-quotient approximation of the multiplicative (*) derivative.

The *derivative of ``f`` is ``lim (f(x+h)/f(x))**(1/h) = exp((log f)'(x))``.
Finite quotients are the multiplicative analogue of finite differences: the
logarithm of a finite quotient is exactly the matching finite difference of
``log f``.  Consequently the forward quotient is exact on ``a**x`` and the
centered quotient is exact whenever ``log f`` is quadratic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .surface import exp_lift, log_surface, pow_complex, project

__all__ = [
    "QuotientStencil",
    "finite_quotient",
    "star_derivative_oracle",
    "star_distance",
    "check_rule",
    "taylor_remainder",
    "projected_log_derivative",
    "RULES",
]

RULES = ("power", "product", "quotient", "func_power", "chain")


@dataclass(frozen=True)
class QuotientStencil:
    kind: str = "centered"
    h: float = 1e-3

    def __post_init__(self):
        if self.kind not in ("forward", "centered"):
            raise ValueError(f"unknown stencil kind {self.kind!r}")
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValueError(f"step must be positive and finite, got {self.h!r}")

    def difference(self, g, x):
        """The matching classical finite difference of a C-valued ``g``."""
        h = self.h
        if self.kind == "forward":
            return (g(x + h) - g(x)) / h
        return (g(x + h) - g(x - h)) / (2 * h)


def finite_quotient(f, x, stencil=QuotientStencil()):
    """Approximate ``f*(x)`` for a surface-valued ``f``.

    forward:  ``(f(x+h) / f(x)) ** (1/h)``
    centered: ``(f(x+h) / f(x-h)) ** (1/(2h))``
    """
    h = stencil.h
    if stencil.kind == "forward":
        return pow_complex(f(x + h) / f(x), 1.0 / h)
    return pow_complex(f(x + h) / f(x - h), 1.0 / (2.0 * h))


def star_derivative_oracle(g, g_prime, x):
    """Reference *derivative ``exp(g'(x))`` where ``g = log f``."""
    return exp_lift(g_prime(x))


def star_distance(a, b):
    """``ln |a / b|_*`` = ``|log a - log b|``; zero iff ``a == b``."""
    return abs(log_surface(a) - log_surface(b))


def _powf(f, e):
    """Pointwise ``x -> f(x) ** e(x)`` for a surface function and scalar function ``e``."""
    return lambda x: pow_complex(f(x), e(x))


def check_rule(rule, f, g=None, h_fn=None, x=0.0, stencil=QuotientStencil(), c=2.0):
    """Residual of one *derivative identity at ``x``, both sides from finite quotients.

    power       (f**c)*      = (f*)**c
    product     (f g)*       = f* g*
    quotient    (f / g)*     = f* / g*
    func_power  (f**h)*      = (f*)**h  f**h'
    chain       (f o h)*     = (f* o h)**h'

    ``h_fn`` is a real function of a real variable; its derivative is taken
    with the classical finite difference on the same stencil.  The residual is
    ``ln |lhs / rhs|_*``.
    """
    D = lambda fn: finite_quotient(fn, x, stencil)  # noqa: E731
    if rule == "power":
        lhs = D(lambda t: pow_complex(f(t), c))
        rhs = pow_complex(D(f), c)
    elif rule == "product":
        lhs = D(lambda t: f(t) * g(t))
        rhs = D(f) * D(g)
    elif rule == "quotient":
        lhs = D(lambda t: f(t) / g(t))
        rhs = D(f) / D(g)
    elif rule == "func_power":
        dh = stencil.difference(h_fn, x)
        lhs = D(_powf(f, h_fn))
        rhs = pow_complex(D(f), h_fn(x)) * pow_complex(f(x), dh)
    elif rule == "chain":
        dh = stencil.difference(h_fn, x)
        lhs = D(lambda t: f(h_fn(t)))
        rhs = pow_complex(finite_quotient(f, h_fn(x), stencil), dh)
    else:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES}")
    return star_distance(lhs, rhs)


def taylor_remainder(f, dlog_f, x0, x):
    """Log of the multiplicative Taylor remainder.

    ``|log f(x) - log f(x0) - (log f)'(x0) (x - x0)|``, which is
    ``O((x - x0)**2)`` for smooth ``f``.
    """
    lf0 = log_surface(f(x0))
    return abs(log_surface(f(x)) - lf0 - dlog_f(x0) * (x - x0))


def projected_log_derivative(f, x, stencil=QuotientStencil()):
    """``exp((Pr f)' / Pr f)`` with a classical difference on the projection.

    Agrees with the *derivative wherever the projection is differentiable;
    needs no sheet bookkeeping, only a stencil small enough to resolve the
    oscillation of ``Pr f``.
    """
    pf = lambda t: project(f(t))  # noqa: E731
    return exp_lift(stencil.difference(pf, x) / pf(x))

