"""
Bessel functions J_n and Y_n of orders 0 and 1 for real arguments.

Ascending power series (with the Neumann logarithmic series for Y_n) up to
``SWITCH``, the Hankel asymptotic expansion beyond it, truncated at its
smallest term.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = ["bessel_j", "bessel_y", "SWITCH"]

SWITCH = 12.0
_EULER_GAMMA = 0.5772156649015329
_N_SERIES = 64
_N_ASYMP = 40


def _check_order(n):
    if n not in (0, 1):
        raise ValueError(f"only orders 0 and 1 are supported, got {n!r}")


def _digamma_int(m):
    """psi(m) for a positive integer m."""
    return -_EULER_GAMMA + sum(1.0 / j for j in range(1, m))


def _series_j(n, x):
    half = 0.5 * x
    q = -half * half
    term = half**n / math.factorial(n)
    total = term
    for k in range(1, _N_SERIES):
        term = term * q / (k * (k + n))
        total = total + term
    return total


def _series_y(n, x):
    half = 0.5 * x
    q = -half * half
    out = (2.0 / np.pi) * np.log(half) * _series_j(n, x)
    if n == 1:
        out = out - (1.0 / np.pi) / half
    term = half**n / math.factorial(n)
    psi_a, psi_b = _digamma_int(1), _digamma_int(n + 1)
    acc = (psi_a + psi_b) * term
    for k in range(1, _N_SERIES):
        term = term * q / (k * (k + n))
        psi_a += 1.0 / k
        psi_b += 1.0 / (k + n)
        acc = acc + (psi_a + psi_b) * term
    return out - acc / np.pi


def _asymptotic(n, x):
    """Return (J_n, Y_n) from the Hankel expansion, truncated at the smallest term."""
    mu = 4.0 * n * n
    P = np.ones_like(x)
    Q = np.zeros_like(x)
    a = np.ones_like(x)  # running a_m / x^m
    last = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for m in range(1, _N_ASYMP):
        a = a * (mu - (2 * m - 1) ** 2) / (m * 8.0 * x)
        mag = np.abs(a)
        active &= mag < last
        last = np.where(active, mag, last)
        # m even -> P gets (-1)^(m/2) a_m ; m odd -> Q gets (-1)^((m-1)/2) a_m
        sign = (-1.0) ** (m // 2)
        if m % 2 == 0:
            P = P + np.where(active, sign * a, 0.0)
        else:
            Q = Q + np.where(active, sign * a, 0.0)
    chi = x - (0.5 * n + 0.25) * np.pi
    amp = np.sqrt(2.0 / (np.pi * x))
    c, s = np.cos(chi), np.sin(chi)
    return amp * (P * c - Q * s), amp * (P * s + Q * c)


def _dispatch(n, x, series, which):
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    lo = x <= SWITCH
    if np.any(lo):
        out[lo] = series(n, x[lo])
    if np.any(~lo):
        out[~lo] = _asymptotic(n, x[~lo])[which]
    return float(out[0]) if scalar else out


def bessel_j(n, x):
    """Bessel function of the first kind J_n(x), n in {0, 1}, x >= 0."""
    _check_order(n)
    if np.any(np.asarray(x) < 0):
        raise ValueError("bessel_j is implemented for x >= 0")
    return _dispatch(n, x, _series_j, 0)


def bessel_y(n, x):
    """Bessel function of the second kind Y_n(x), n in {0, 1}, x > 0."""
    _check_order(n)
    if np.any(np.asarray(x) <= 0):
        raise ValueError("bessel_y requires x > 0")
    return _dispatch(n, x, _series_y, 1)
