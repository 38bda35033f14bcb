"""
Finite-dimensional multiplicative vector spaces e^X.

Vector "addition" is the componentwise surface product and "scalar
multiplication" by ``a`` is componentwise exponentiation by ``log a``.  The
norm induced on e^X by a norm on X is ``||u||_* = exp ||log u||``; it is
bounded below by 1 and equals 1 only at the all-ones vector, which plays the
role of the origin.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .surface import (
    DEFAULT_TOL,
    SurfacePoint,
    SurfaceRangeError,
    _check_modulus,
    exp_lift,
    log_surface,
)

__all__ = [
    "SurfaceVector",
    "NormSpec",
    "vec_mul",
    "vec_div",
    "scalar_pow",
    "apply_log_matrix",
    "star_norm",
    "star_inner",
    "project_vec",
    "embed_vec",
    "relative_bound",
    "ones",
]


class SurfaceVector:
    """Array of surface points stored as parallel modulus/argument arrays.

    With ``closure=True`` zero moduli are allowed (points of the closure);
    such vectors can be projected but have no logarithm.
    """

    __slots__ = ("modulus", "argument", "closure")

    def __init__(self, modulus, argument=None, closure=False):
        r = np.array(modulus, dtype=float, ndmin=1)
        theta = np.zeros_like(r) if argument is None else np.array(argument, dtype=float, ndmin=1)
        if r.shape != theta.shape:
            raise ValueError(f"modulus shape {r.shape} != argument shape {theta.shape}")
        if r.ndim != 1 or r.size == 0:
            raise ValueError("SurfaceVector must be one-dimensional and non-empty")
        if not np.all(np.isfinite(theta)):
            raise ValueError("arguments must be finite")
        if not np.all(np.isfinite(r)):
            raise ValueError("moduli must be finite")
        if closure:
            if np.any(r < 0.0):
                raise ValueError("moduli must be >= 0")
            theta = np.where(r == 0.0, 0.0, theta)
        elif np.any(r <= 0.0):
            raise ValueError("moduli must be strictly positive")
        r.flags.writeable = False
        theta.flags.writeable = False
        self.modulus = r
        self.argument = theta
        self.closure = bool(closure) and bool(np.any(r == 0.0))

    @classmethod
    def from_points(cls, points):
        points = list(points)
        return cls([p.modulus for p in points], [p.argument for p in points])

    @classmethod
    def _unchecked(cls, r, theta):
        _check_modulus(r)
        return cls(r, theta)

    def __len__(self):
        return self.modulus.size

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return SurfaceVector(self.modulus[idx], self.argument[idx], closure=self.closure)
        return SurfacePoint(self.modulus[idx], self.argument[idx])

    def __iter__(self):
        for r, t in zip(self.modulus, self.argument):
            yield SurfacePoint(r, t)

    def __repr__(self):
        return f"SurfaceVector(modulus={self.modulus!r}, argument={self.argument!r})"

    def __eq__(self, other):
        if not isinstance(other, SurfaceVector):
            return NotImplemented
        return np.array_equal(self.modulus, other.modulus) and np.array_equal(self.argument, other.argument)

    __hash__ = None

    def isclose(self, other, tol=DEFAULT_TOL):
        return len(self) == len(other) and bool(
            np.all(np.isclose(self.modulus, other.modulus, rtol=tol, atol=0.0))
            and np.all(np.abs(self.argument - other.argument) <= tol)
        )

    def log(self):
        if np.any(self.modulus == 0.0):
            raise ValueError("log is undefined for closure components with modulus 0")
        return np.log(self.modulus) + 1j * self.argument

    def project(self):
        return self.modulus * np.exp(1j * self.argument)

    def star_abs(self):
        with np.errstate(over="ignore"):
            r = np.exp(np.abs(self.log()))
        return SurfaceVector._unchecked(r, np.zeros_like(r))

    def shift_sheet(self, m):
        """Add ``2*pi*m`` to every argument (same projection, different sheet)."""
        return SurfaceVector(self.modulus, self.argument + 2.0 * np.pi * np.asarray(m), closure=self.closure)

    def __mul__(self, other):
        return vec_mul(self, other)

    def __truediv__(self, other):
        return vec_div(self, other)

    def __pow__(self, w):
        """Componentwise power by a complex scalar or complex array."""
        w = np.asarray(w, dtype=complex)
        ln_r = np.log(self.modulus)
        with np.errstate(over="ignore", under="ignore"):
            r = np.exp(w.real * ln_r - self.argument * w.imag)
        return SurfaceVector._unchecked(r, self.argument * w.real + ln_r * w.imag)


def ones(n):
    """The origin of e^X: the vector whose components are all ``(1, 0)``."""
    return SurfaceVector(np.ones(n), np.zeros(n))


def _check_len(u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")


def vec_mul(u, v):
    """Vector addition of e^X: componentwise surface product."""
    if isinstance(v, SurfacePoint):
        v = SurfaceVector(np.full(len(u), v.modulus), np.full(len(u), v.argument))
    _check_len(u, v)
    with np.errstate(over="ignore", under="ignore"):
        r = u.modulus * v.modulus
    if u.closure or v.closure:
        if not np.all(np.isfinite(r)):
            raise SurfaceRangeError("modulus overflow")
        return SurfaceVector(r, u.argument + v.argument, closure=True)
    return SurfaceVector._unchecked(r, u.argument + v.argument)


def vec_div(u, v):
    """Componentwise surface quotient."""
    _check_len(u, v)
    with np.errstate(over="ignore", under="ignore"):
        r = u.modulus / v.modulus
    return SurfaceVector._unchecked(r, u.argument - v.argument)


def scalar_pow(a, u):
    """Scalar multiplication of e^X: ``a (x) u = u ** log(a)`` componentwise."""
    return u ** log_surface(a)


def apply_log_matrix(A, u):
    """Multiplicative matrix-vector product ``u ** log(A)``, i.e. ``exp(A @ log u)``."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[1] != len(u):
        raise ValueError(f"matrix of shape {A.shape} does not act on vectors of length {len(u)}")
    return exp_lift(A @ u.log())


@dataclass(frozen=True)
class NormSpec:
    """Norm on the log space plus its equivalence constant with the max norm.

    ``C`` satisfies ``||x||_inf <= C ||x||``; it is 1 for every p-norm.  A
    custom ``norm`` callable (acting on complex arrays) may be supplied
    together with its own ``C``.
    """

    p: float = 2
    C: float = 1.0
    norm: Optional[Callable[[np.ndarray], float]] = None

    def __post_init__(self):
        if self.norm is None:
            if self.p not in (1, 2, np.inf):
                raise ValueError(f"p must be 1, 2 or inf, got {self.p!r}")
            if self.C != 1.0:
                raise ValueError("C is 1 for every p-norm")
        elif self.C < 1.0:
            raise ValueError("C must be >= 1")

    @classmethod
    def parse(cls, text):
        text = str(text).strip().lower()
        if text in ("inf", "infinity", "max"):
            return cls(np.inf)
        return cls(int(text))

    def __call__(self, x):
        x = np.asarray(x)
        if self.norm is not None:
            return float(self.norm(x))
        return float(np.linalg.norm(x, ord=self.p))


def star_norm(u, spec=NormSpec()):
    """``exp ||log u||``, returned as a float >= 1."""
    nrm = spec(u.log())
    with np.errstate(over="ignore"):
        out = float(np.exp(nrm))
    if not np.isfinite(out):
        raise SurfaceRangeError("*norm overflow")
    return out


def star_inner(u, v):
    """*Inner product ``exp <log u, log v>`` (second slot conjugated)."""
    _check_len(u, v)
    return exp_lift(complex(np.vdot(v.log(), u.log())))


def project_vec(u):
    """Componentwise projection onto C^n."""
    return u.project()


def embed_vec(z, branch_center=0.0):
    """Componentwise embedding of a complex array (principal branch by default)."""
    from .surface import embed

    return embed(np.asarray(z, dtype=complex), branch_center)


def relative_bound(u, v, spec=NormSpec()):
    """``||v / u||_*^C - 1``: bounds ``||Pr u - Pr v|| / ||Pr u||`` from above."""
    _check_len(u, v)
    return float(np.expm1(spec.C * spec((v / u).log())))
