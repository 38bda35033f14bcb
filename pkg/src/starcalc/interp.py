"""
Exponential polynomials and their interpolation.

An exponential polynomial of degree < n is ``exp(a_0 + a_1 x + ... + a_{n-1} x^{n-1})``
as a surface-valued function.  ``exp(i k x)`` has degree 1 for every ``k``
and ``exp(-a x^2)`` degree 2 for every ``a``, so two and three lifted samples
determine them exactly, however few samples per wavelength the projection gets.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .surface import exp_lift, pow_complex

__all__ = [
    "ConditioningWarning",
    "ExpPolynomial",
    "eval_exp_poly",
    "fit_exp_poly",
    "divided_differences",
    "newton_to_monomial",
    "truncated_log_lift",
]

COND_THRESHOLD = 1e10


class ConditioningWarning(UserWarning):
    """The interpolation nodes give an ill-conditioned Vandermonde system."""


@dataclass(frozen=True)
class ExpPolynomial:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, ndmin=1)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree_bound(self):
        return self.coeffs.size

    def log(self, x):
        """The exponent ``sum_j a_j x^j`` (Horner)."""
        x = np.asarray(x, dtype=float)
        acc = np.zeros(x.shape, dtype=complex)
        for a in self.coeffs[::-1]:
            acc = acc * x + a
        return acc if acc.ndim else complex(acc)

    def __call__(self, x):
        return eval_exp_poly(self, x)


def eval_exp_poly(p, x):
    """``exp_lift(sum_j a_j x^j)``; arrays give a SurfaceVector."""
    return exp_lift(p.log(x))


def divided_differences(xs, ys):
    """Newton divided-difference coefficients ``[y0], [y0,y1], ...``."""
    xs = np.asarray(xs, dtype=float)
    coef = np.array(ys, dtype=complex)
    n = coef.size
    for j in range(1, n):
        coef[j:] = (coef[j:] - coef[j - 1:-1]) / (xs[j:] - xs[: n - j])
    return coef


def newton_to_monomial(coef, xs):
    """Expand ``sum_k c_k prod_{i<k} (x - xs_i)`` into monomial coefficients (ascending)."""
    n = len(coef)
    out = np.zeros(n, dtype=complex)
    out[0] = coef[n - 1]
    # nested form: p = c_{n-1}; p = p (x - xs_k) + c_k for k = n-2 .. 0
    for k in range(n - 2, -1, -1):
        shifted = np.zeros(n, dtype=complex)
        shifted[1:] = out[:-1]
        out = shifted - xs[k] * out
        out[0] += coef[k]
    return out


def fit_exp_poly(xs, ws):
    """Exponential polynomial of degree < n through n lifted samples.

    Solves ``sum_k a_k x_j^k = log w_j`` by Newton divided differences.
    The solution is unique for distinct nodes; an ill-conditioned node set
    raises a :class:`ConditioningWarning`.
    """
    xs = np.asarray(xs, dtype=float)
    logs = ws.log() if hasattr(ws, "log") else np.array([w.log() for w in ws])
    if xs.ndim != 1 or xs.size != logs.size:
        raise ValueError("need one node per sample")
    if np.unique(xs).size != xs.size:
        raise ValueError("interpolation nodes must be distinct")
    if xs.size > 1:
        cond = np.linalg.cond(np.vander(xs, increasing=True))
        if cond > COND_THRESHOLD:
            warnings.warn(f"Vandermonde condition number {cond:.3g}", ConditioningWarning, stacklevel=2)
    coef = divided_differences(xs, logs)
    return ExpPolynomial(newton_to_monomial(coef, xs))


def truncated_log_lift(a, x, n_terms):
    """Partial product ``prod_{m=1}^{n} exp(e^{imx}) ** (-a^m / m)``.

    The full product lifts ``1 - a e^{ix}`` (``|a| < 1``) via the series of
    ``log(1 - z)``; its factors decay only like ``|a|^m / m``.
    """
    if not abs(a) < 1:
        raise ValueError("need |a| < 1")
    x = np.asarray(x, dtype=float)
    out = exp_lift(np.zeros(x.shape, dtype=complex)) if x.ndim else exp_lift(0j)
    for m in range(1, n_terms + 1):
        factor = exp_lift(np.exp(1j * m * x))
        out = out * pow_complex(factor, -(a**m) / m)
    return out
