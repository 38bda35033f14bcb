"""
Scalar arithmetic on the Riemann surface e^C.

A point of e^C is a polar pair ``(r, theta)`` with ``r > 0`` and an
*unreduced* real argument.  Two points whose arguments differ by 2*pi are
different points of the surface even though they project to the same
complex number, so the logarithm ``log (r, theta) = ln r + i theta`` is
single valued and is the exact inverse of ``exp``.

The closure of the surface admits ``r == 0``; such points only make sense
under projection and are represented by :class:`ClosurePoint`.

The functions in this module accept either scalars (returning
:class:`SurfacePoint` / :class:`ClosurePoint`) or numpy arrays (returning a
:class:`starcalc.mvector.SurfaceVector`).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SurfaceRangeError",
    "ClosurePoint",
    "SurfacePoint",
    "DEFAULT_TOL",
    "exp_lift",
    "log_surface",
    "project",
    "embed",
    "principal_arg",
    "mul",
    "div",
    "pow_complex",
    "pow_surface",
    "star_abs",
]

DEFAULT_TOL = 1e-12


class SurfaceRangeError(ArithmeticError):
    """A modulus overflowed to infinity or underflowed to zero."""


def _check_modulus(r, what="modulus"):
    r_arr = np.asarray(r)
    if not np.all(np.isfinite(r_arr)):
        raise SurfaceRangeError(f"{what} overflow")
    if np.any(r_arr <= 0.0):
        raise SurfaceRangeError(f"{what} underflow to zero")


@dataclass(frozen=True)
class ClosurePoint:
    """Point ``(r, theta)`` of the closure of e^C, ``r >= 0``.

    A zero modulus point carries argument 0 regardless of what was passed in,
    since every such point projects to complex zero.
    """

    modulus: float
    argument: float = 0.0

    def __post_init__(self):
        r, theta = float(self.modulus), float(self.argument)
        if not (math.isfinite(r) and r >= 0.0):
            raise ValueError(f"modulus must be finite and >= 0, got {self.modulus!r}")
        if not math.isfinite(theta):
            raise ValueError(f"argument must be finite, got {self.argument!r}")
        if r == 0.0:
            theta = 0.0
        object.__setattr__(self, "modulus", r)
        object.__setattr__(self, "argument", theta)

    def __complex__(self):
        return project(self)

    def isclose(self, other, tol=DEFAULT_TOL):
        """Componentwise comparison: relative on modulus, absolute on argument."""
        return (
            math.isclose(self.modulus, other.modulus, rel_tol=tol, abs_tol=0.0 if self.modulus else tol)
            and abs(self.argument - other.argument) <= tol
        )

    def __mul__(self, other):
        if isinstance(other, ClosurePoint):
            return mul(self, other)
        return NotImplemented

    def __repr__(self):
        return f"{type(self).__name__}({self.modulus!r}, {self.argument!r})"


@dataclass(frozen=True, repr=False)
class SurfacePoint(ClosurePoint):
    """Point ``(r, theta)`` of e^C with ``r > 0``; the argument is never reduced."""

    def __post_init__(self):
        super().__post_init__()
        if self.modulus == 0.0:
            raise ValueError("SurfacePoint modulus must be strictly positive")

    @classmethod
    def unit(cls):
        return cls(1.0, 0.0)

    def log(self):
        return log_surface(self)

    def __truediv__(self, other):
        if isinstance(other, SurfacePoint):
            return div(self, other)
        return NotImplemented

    def __pow__(self, w):
        if isinstance(w, ClosurePoint):
            return pow_surface(self, w)
        return pow_complex(self, w)


# -- bridge maps ------------------------------------------------------------


def exp_lift(z):
    """Map ``a + ib`` to the surface point ``(e^a, b)``.

    Arrays are mapped componentwise and returned as a ``SurfaceVector``.
    """
    if np.ndim(z) == 0 and not isinstance(z, np.ndarray):
        z = complex(z)
        try:
            r = math.exp(z.real)
        except OverflowError:
            raise SurfaceRangeError("modulus overflow in exp_lift") from None
        if r == 0.0:
            raise SurfaceRangeError("modulus underflow to zero in exp_lift")
        return SurfacePoint(r, z.imag)
    from .mvector import SurfaceVector

    z = np.asarray(z, dtype=complex)
    with np.errstate(over="ignore", under="ignore"):
        r = np.exp(z.real)
    _check_modulus(r)
    return SurfaceVector(r, z.imag.copy())


def log_surface(w):
    """Single-valued logarithm ``ln r + i theta``; exact inverse of :func:`exp_lift`."""
    if isinstance(w, ClosurePoint):
        if w.modulus == 0.0:
            raise ValueError("log is undefined on the closure boundary (modulus 0)")
        return complex(math.log(w.modulus), w.argument)
    return w.log()


def project(w):
    """Projection ``r e^{i theta}`` onto C; defined on the closure."""
    if isinstance(w, ClosurePoint):
        return w.modulus * cmath.exp(1j * w.argument)
    return w.project()


def principal_arg(z, branch_center=0.0):
    """Argument of ``z`` on the branch ``(branch_center - pi, branch_center + pi]``."""
    a = np.angle(z)
    m = np.floor((branch_center + np.pi - a) / (2.0 * np.pi))
    out = a + 2.0 * np.pi * m
    if np.ndim(out) == 0:
        return float(out)
    return out


def embed(z, branch_center=0.0):
    """Embedding ``(|z|, arg z)`` into the closure of e^C.

    ``branch_center`` selects the branch whose arguments lie in
    ``(branch_center - pi, branch_center + pi]``; the default is the principal
    embedding.  ``project(embed(z)) == z`` for every branch.  Arrays give a
    ``SurfaceVector`` (whose components may sit on the closure boundary).
    """
    if np.ndim(z) == 0 and not isinstance(z, np.ndarray):
        z = complex(z)
        if z == 0:
            return ClosurePoint(0.0, 0.0)
        return ClosurePoint(abs(z), principal_arg(z, branch_center))
    from .mvector import SurfaceVector

    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    theta = np.where(r == 0.0, 0.0, principal_arg(z, branch_center))
    return SurfaceVector(r, theta, closure=True)


# -- arithmetic -------------------------------------------------------------


def _as_closure(r, theta):
    if r == 0.0:
        return ClosurePoint(0.0, 0.0)
    return SurfacePoint(r, theta)


def mul(a, b):
    """Surface product: moduli multiply, arguments add (no wrapping)."""
    if isinstance(a, ClosurePoint) and isinstance(b, ClosurePoint):
        r = a.modulus * b.modulus
        if not math.isfinite(r):
            raise SurfaceRangeError("modulus overflow in product")
        if isinstance(a, SurfacePoint) and isinstance(b, SurfacePoint):
            if r == 0.0:
                raise SurfaceRangeError("modulus underflow in product")
            return SurfacePoint(r, a.argument + b.argument)
        return _as_closure(r, a.argument + b.argument)
    return a * b


def div(a, b):
    """Surface quotient: moduli divide, arguments subtract."""
    if isinstance(a, SurfacePoint) and isinstance(b, SurfacePoint):
        r = a.modulus / b.modulus
        _check_modulus(r)
        return SurfacePoint(r, a.argument - b.argument)
    return a / b


def pow_complex(a, w):
    """Raise a surface point to a complex power, ``exp(w log a)``.

    For ``w = u + iv`` this is ``(r^u e^{-theta v}, theta u + v ln r)``.
    """
    if not isinstance(a, SurfacePoint):
        return a ** w
    w = complex(w)
    u, v = w.real, w.imag
    ln_r = math.log(a.modulus)
    try:
        r = math.exp(u * ln_r - a.argument * v)
    except OverflowError:
        raise SurfaceRangeError("modulus overflow in power") from None
    if r == 0.0:
        raise SurfaceRangeError("modulus underflow in power")
    return SurfacePoint(r, a.argument * u + ln_r * v)


def pow_surface(a, b):
    """``a ** b`` for two surface points, defined as ``a ** project(b)``."""
    return pow_complex(a, project(b))


def star_abs(w):
    """*Absolute value ``exp |log w|``, a real point ``(., 0)`` of modulus >= 1."""
    if isinstance(w, SurfacePoint):
        try:
            return SurfacePoint(math.exp(abs(log_surface(w))), 0.0)
        except OverflowError:
            raise SurfaceRangeError("modulus overflow in star_abs") from None
    return w.star_abs()
