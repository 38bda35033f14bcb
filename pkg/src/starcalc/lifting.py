"""
Lifting complex samples onto e^C.

Given samples of a non-vanishing complex function, build surface points with
the same projection whose arguments vary continuously.  On a grid this is
phase unwrapping: the argument of each sample is the previous argument plus
the principal argument of the ratio of neighbouring samples, which is only
well defined while neighbouring samples are less than half a turn apart.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bessel import bessel_j, bessel_y
from .mvector import SurfaceVector
from .surface import SurfacePoint, principal_arg

__all__ = [
    "LiftingError",
    "ComplexSamples1D",
    "LiftedSamples1D",
    "lift_samples",
    "y_zeros",
    "lift_hankel",
]


class LiftingError(ValueError):
    """Samples do not determine a unique continuous lift."""


@dataclass(frozen=True)
class ComplexSamples1D:
    xs: np.ndarray
    zs: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        zs = np.asarray(self.zs, dtype=complex)
        if xs.ndim != 1 or xs.shape != zs.shape:
            raise ValueError("xs and zs must be 1-D arrays of equal length")
        if xs.size > 1 and np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "zs", zs)


@dataclass(frozen=True)
class LiftedSamples1D:
    xs: np.ndarray
    ws: SurfaceVector

    def project(self):
        return self.ws.project()


def lift_samples(samples, theta0=None):
    """Unwrap complex samples into a continuous-argument surface vector.

    ``theta0`` fixes the argument of the first sample (it must be congruent to
    the sample's argument mod 2*pi; the default is the principal argument).
    Raises :class:`LiftingError` on a zero sample or when two neighbours are
    exactly half a turn apart, since the sheet is then ambiguous.
    """
    if not isinstance(samples, ComplexSamples1D):
        samples = ComplexSamples1D(*samples)
    zs = samples.zs
    if np.any(zs == 0):
        raise LiftingError(f"zero sample at index {int(np.flatnonzero(zs == 0)[0])}")
    steps = np.angle(zs[1:] / zs[:-1])
    bad = np.abs(steps) >= np.pi
    if np.any(bad):
        raise LiftingError(
            f"neighbouring samples half a turn apart at index {int(np.flatnonzero(bad)[0])}; "
            "sampling does not resolve the phase"
        )
    start = float(np.angle(zs[0])) if theta0 is None else float(theta0)
    if theta0 is not None:
        turns = (start - np.angle(zs[0])) / (2 * np.pi)
        if abs(turns - round(turns)) > 1e-9:
            raise ValueError("theta0 must differ from the argument of zs[0] by a multiple of 2*pi")
    theta = np.empty(zs.size)
    theta[0] = start
    np.cumsum(steps, out=theta[1:])
    theta[1:] += start
    return LiftedSamples1D(samples.xs, SurfaceVector(np.abs(zs), theta))


def _scan_zeros(n, x_max, step=0.05, x_min=1e-3, tol=1e-10):
    xs = np.arange(x_min, x_max + step, step)
    xs = xs[xs <= x_max]
    if xs.size < 2:
        return np.empty(0)
    ys = bessel_y(n, xs)
    roots = []
    for i in np.flatnonzero(np.sign(ys[:-1]) * np.sign(ys[1:]) <= 0):
        a, b = xs[i], xs[i + 1]
        fa = ys[i]
        if fa == 0.0:
            roots.append(a)
            continue
        while b - a > tol:
            mid = 0.5 * (a + b)
            fm = bessel_y(n, mid)
            if (fm < 0) == (fa < 0):
                a, fa = mid, fm
            else:
                b = mid
        roots.append(0.5 * (a + b))
    return np.unique(np.asarray(roots))


def y_zeros(n, x_max):
    """Zeros of Y_n in ``(0, x_max]`` in increasing order, bracketed and bisected to 1e-10.

    Consecutive zeros are about pi apart, so a scan step of 0.05 cannot miss
    a pair of them.
    """
    if n not in (0, 1):
        raise ValueError(f"only orders 0 and 1 are supported, got {n!r}")
    return _scan_zeros(n, float(x_max))


@lru_cache(maxsize=None)
def _zero_table(n, upper):
    return y_zeros(n, upper)


def _even_zeros(n, x_max):
    upper = max(16.0, 2.0 ** np.ceil(np.log2(x_max + 4.0)))
    z = _zero_table(n, float(upper))
    return z[1::2]


def lift_hankel(kind, n, x):
    """Continuous lift of the Hankel function H_n^(kind) onto e^C.

    The modulus is ``sqrt(J_n^2 + Y_n^2)``.  The principal argument of
    ``J_n +/- i Y_n`` jumps by 2*pi exactly at the even-numbered zeros of
    Y_n (where the curve crosses the negative real axis), so we add
    ``+/- 2*pi*m`` with ``m`` the number of even-numbered zeros below ``x``.
    Scalars give a :class:`SurfacePoint`, arrays a :class:`SurfaceVector`.
    """
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1 or 2, got {kind!r}")
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise ValueError("lift_hankel requires x > 0")
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    J = bessel_j(n, xa)
    Y = bessel_y(n, xa)
    sign = 1.0 if kind == 1 else -1.0
    arg = principal_arg(J + sign * 1j * Y)
    zeros = _even_zeros(n, float(xa.max()))
    m = np.searchsorted(zeros, xa, side="left")
    # within bisection tolerance of a crossing the side is decided by the
    # computed sign of Y, which is what the principal argument saw
    if zeros.size:
        nearest = np.clip(m, 1, zeros.size) - 1
        right = np.clip(m, 0, zeros.size - 1)
        for idx in (nearest, right):
            close = np.abs(xa - zeros[idx]) < 1e-8
            m = np.where(close, idx + (Y < 0), m)
    theta = arg + sign * 2.0 * np.pi * m
    r = np.hypot(J, Y)
    if scalar:
        return SurfacePoint(float(r[0]), float(theta[0]))
    return SurfaceVector(r, theta)
