"""
Multiplicative leapfrog solver for the advection equation on e^C.

The *PDE ``v_t^* (v_x^*)^c = 1`` is discretised with centered finite
quotients in time and space, which gives the update

    w[j]^{n+1} = w[j]^{n-1} * (w[j+1]^n / w[j-1]^n) ** (-c_j dt / dx)

Its logarithm is exactly the classical leapfrog scheme applied to ``log w``,
so the scheme is second order, conditionally stable (``|c dt/dx| < 1``) and
exact whenever ``log v`` is quadratic in ``x`` and ``t``.  Exactness does not
depend on how many grid points fall in one wavelength of ``Pr v``.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .calculus import QuotientStencil, finite_quotient
from .mvector import NormSpec, SurfaceVector, star_norm
from .surface import SurfaceRangeError, _check_modulus

__all__ = [
    "CFLError",
    "Grid1D",
    "BoundaryRule",
    "AdvectionProblem",
    "GridFunction",
    "leapfrog_step",
    "advance",
    "run",
    "classical_leapfrog",
    "star_rel_error",
    "projected_rel_error",
    "taylor_start",
    "characteristic_foot",
    "characteristic_solution",
]


class CFLError(ValueError):
    """The Courant number ``|c dt / dx|`` is not below 1."""


@dataclass(frozen=True)
class Grid1D:
    x0: float
    dx: float
    n_points: int

    def __post_init__(self):
        if not self.dx > 0:
            raise ValueError("dx must be positive")
        if self.n_points < 3:
            raise ValueError("a grid needs at least 3 points")

    @classmethod
    def periodic(cls, x0, length, n_points):
        """Grid of ``n_points`` cells covering one period ``[x0, x0 + length)``."""
        return cls(x0, length / n_points, n_points)

    @classmethod
    def covering(cls, x_min, x_max, dx):
        """Grid from ``x_min`` with spacing ``dx`` reaching at least ``x_max``."""
        n = int(np.ceil((x_max - x_min) / dx - 1e-9)) + 1
        return cls(x_min, dx, n)

    @property
    def x(self):
        return self.x0 + self.dx * np.arange(self.n_points)

    @property
    def length(self):
        return self.dx * self.n_points

    def refine(self, factor=2):
        return Grid1D(self.x0, self.dx / factor, self.n_points * factor)


@dataclass(frozen=True)
class BoundaryRule:
    """How the end points are updated.

    ``periodic``: neighbours wrap around.  ``winding`` lets a solution whose
    argument gains ``2*pi*winding`` per period (e.g. ``exp(i k x)`` with
    integer ``k`` on ``[0, 2*pi)``) be treated as periodic on the surface.

    ``exact_injection``: end points at the new level are taken from
    ``reference(x, t)``.
    """

    kind: str = "periodic"
    reference: Optional[Callable] = None
    winding: int = 0

    def __post_init__(self):
        if self.kind not in ("periodic", "exact_injection"):
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.kind == "exact_injection" and self.reference is None:
            raise ValueError("exact_injection needs a reference callable")

    @classmethod
    def periodic(cls, winding=0):
        return cls("periodic", None, int(winding))

    @classmethod
    def exact_injection(cls, reference):
        return cls("exact_injection", reference)


def _sample(fn, x):
    """Evaluate a surface-valued function on an array, vectorised if it can be."""
    out = fn(x)
    if isinstance(out, SurfaceVector):
        return out
    return SurfaceVector.from_points(fn(float(xi)) for xi in x)


def _speed_values(speed, x):
    if isinstance(speed, numbers.Real):
        return np.full(x.shape, float(speed))
    c = np.asarray(speed(x), dtype=float)
    return np.broadcast_to(c, x.shape).astype(float)


@dataclass(frozen=True)
class AdvectionProblem:
    """Advection of a lifted initial condition ``h`` with speed ``c(x)``.

    ``speed`` is a number or a vectorised callable; ``initial_lift`` gives the
    level ``t = 0`` and ``second_level`` the level ``t = -dt``.
    """

    speed: object
    initial_lift: Callable
    second_level: Callable
    grid: Grid1D
    dt: float
    boundary: BoundaryRule = BoundaryRule()

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")

    @property
    def courant(self):
        """``c_j dt / dx`` at every grid point."""
        return _speed_values(self.speed, self.grid.x) * self.dt / self.grid.dx

    def check_cfl(self):
        nu = float(np.max(np.abs(self.courant)))
        if not nu < 1.0:
            raise CFLError(f"Courant number {nu:.6g} violates |c dt/dx| < 1")
        return nu

    def initial_levels(self):
        x = self.grid.x
        prev = GridFunction(self.grid, _sample(self.second_level, x), -self.dt)
        curr = GridFunction(self.grid, _sample(self.initial_lift, x), 0.0)
        return prev, curr


@dataclass(frozen=True)
class GridFunction:
    grid: Grid1D
    values: SurfaceVector
    time: float

    def __post_init__(self):
        if len(self.values) != self.grid.n_points:
            raise ValueError("values do not match the grid")

    def project(self):
        return self.values.project()

    def log(self):
        return self.values.log()


def _neighbours(a, shift):
    """Left/right neighbours with periodic wrap; ``shift`` is added across the seam."""
    left = np.roll(a, 1)
    right = np.roll(a, -1)
    if shift:
        left[0] -= shift
        right[-1] += shift
    return left, right


def _step_arrays(r_prev, t_prev, r_cur, t_cur, nu, boundary, grid, t_next):
    if boundary.kind == "periodic":
        r_l, r_r = _neighbours(r_cur, 0.0)
        t_l, t_r = _neighbours(t_cur, 2.0 * np.pi * boundary.winding)
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            r_new = r_prev * (r_r / r_l) ** (-nu)
        t_new = t_prev - nu * (t_r - t_l)
    else:
        r_new = np.empty_like(r_cur)
        t_new = np.empty_like(t_cur)
        n = nu[1:-1]
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            r_new[1:-1] = r_prev[1:-1] * (r_cur[2:] / r_cur[:-2]) ** (-n)
        t_new[1:-1] = t_prev[1:-1] - n * (t_cur[2:] - t_cur[:-2])
        edge = _sample(lambda xx: boundary.reference(xx, t_next), grid.x[[0, -1]])
        r_new[[0, -1]] = edge.modulus
        t_new[[0, -1]] = edge.argument
    try:
        _check_modulus(r_new)
    except SurfaceRangeError as exc:
        raise SurfaceRangeError(f"{exc} at t={t_next:g}") from None
    if not np.all(np.isfinite(t_new)):
        raise SurfaceRangeError(f"argument overflow at t={t_next:g}")
    return r_new, t_new


def leapfrog_step(prev, curr, problem, check_cfl=True):
    """One multiplicative leapfrog step from levels ``n-1``, ``n`` to ``n+1``."""
    if check_cfl:
        problem.check_cfl()
    if not np.isclose(curr.time - prev.time, problem.dt, rtol=1e-9, atol=1e-12):
        raise ValueError("levels are not dt apart")
    t_next = curr.time + problem.dt
    r, t = _step_arrays(
        prev.values.modulus, prev.values.argument,
        curr.values.modulus, curr.values.argument,
        problem.courant, problem.boundary, problem.grid, t_next,
    )
    return GridFunction(problem.grid, SurfaceVector(r, t), t_next)


def advance(prev, curr, problem, n_steps, check_cfl=True, history=None, monitor=None):
    """Apply ``n_steps`` leapfrog steps; returns the last two levels.

    ``history`` (a list) collects every new level.  ``monitor(level)`` is
    called after each step; returning True stops early.
    """
    if check_cfl:
        problem.check_cfl()
    nu = problem.courant
    r0, t0 = prev.values.modulus, prev.values.argument
    r1, t1 = curr.values.modulus, curr.values.argument
    time = curr.time
    for _ in range(n_steps):
        time = time + problem.dt
        r2, t2 = _step_arrays(r0, t0, r1, t1, nu, problem.boundary, problem.grid, time)
        r0, t0, r1, t1 = r1, t1, r2, t2
        if history is not None or monitor is not None:
            level = GridFunction(problem.grid, SurfaceVector(r1, t1), time)
            if history is not None:
                history.append(level)
            if monitor is not None and monitor(level):
                break
    prev = GridFunction(problem.grid, SurfaceVector(r0, t0), time - problem.dt)
    curr = GridFunction(problem.grid, SurfaceVector(r1, t1), time)
    return prev, curr


def run(problem, n_steps, history=False, check_cfl=True):
    """Start from the two initial levels and take ``n_steps`` steps.

    Returns the final level, or ``(final, levels)`` with ``history=True``
    where ``levels`` starts with the levels at ``-dt`` and ``0``.
    """
    if int(n_steps) != n_steps or n_steps < 1:
        raise ValueError("run needs at least one step")
    prev, curr = problem.initial_levels()
    levels = [prev, curr] if history else None
    _, final = advance(prev, curr, problem, int(n_steps), check_cfl=check_cfl, history=levels)
    return (final, levels) if history else final


def classical_leapfrog(u_prev, u_curr, c, dt, dx, boundary="periodic", edges=None,
                       period_offset=0.0, check_cfl=True):
    """Classical leapfrog step ``u^{n+1} = u^{n-1} - (c dt/dx)(u_{j+1} - u_{j-1})``.

    ``boundary='periodic'`` wraps around, adding ``period_offset`` across the
    seam (use ``2j*pi*winding`` on logged surface data).  ``boundary='injection'``
    sets the two end values to ``edges``.
    """
    u_prev = np.asarray(u_prev, dtype=complex)
    u_curr = np.asarray(u_curr, dtype=complex)
    nu = np.broadcast_to(np.asarray(c, dtype=float) * dt / dx, u_curr.shape)
    if check_cfl and not np.max(np.abs(nu)) < 1.0:
        raise CFLError(f"Courant number {np.max(np.abs(nu)):.6g} violates |c dt/dx| < 1")
    if boundary == "periodic":
        left, right = _neighbours(u_curr, period_offset)
        return u_prev - nu * (right - left)
    if boundary == "injection":
        if edges is None:
            raise ValueError("injection boundary needs edge values")
        out = np.empty_like(u_curr)
        out[1:-1] = u_prev[1:-1] - nu[1:-1] * (u_curr[2:] - u_curr[:-2])
        out[0], out[-1] = edges
        return out
    raise ValueError(f"unknown boundary {boundary!r}")


def _reference_values(ref, grid):
    if isinstance(ref, SurfaceVector):
        return ref
    return _sample(ref, grid.x)


def star_rel_error(w, ref, spec=NormSpec(np.inf)):
    """``||ref / w||_*`` on the grid: 1 iff exact, growing with the error."""
    return star_norm(_reference_values(ref, w.grid) / w.values, spec)


def projected_rel_error(w, exact, spec=NormSpec(np.inf)):
    """``||Pr w - exact|| / ||exact||`` for a complex-valued exact solution."""
    ex = exact(w.grid.x) if callable(exact) else exact
    ex = np.asarray(ex, dtype=complex)
    den = spec(ex)
    if den == 0:
        raise ZeroDivisionError("exact solution has zero norm on the grid")
    return spec(w.project() - ex) / den


def taylor_start(initial_lift, speed, grid, dt, stencil=None):
    """Second-level values ``w^{-1} = h * (h*)**(c dt)`` from one *Taylor step.

    ``h*`` is the centered finite quotient of ``h`` with step ``dx`` unless a
    stencil is given.  The local error is ``O(dt**2)``, which keeps the
    leapfrog scheme second order.
    """
    stencil = stencil or QuotientStencil("centered", grid.dx)
    x = grid.x
    h = _sample(initial_lift, x)
    hstar = finite_quotient(lambda xx: _sample(initial_lift, xx), x, stencil)
    return h * hstar ** (_speed_values(speed, x) * dt)


def characteristic_foot(speed, x, t, rtol=1e-12, atol=1e-12):
    """Foot ``X(0)`` of the characteristic ``dX/ds = c(X)`` through ``(x, t)``."""
    x = np.asarray(x, dtype=float)
    if isinstance(speed, numbers.Real):
        return x - float(speed) * t
    if t == 0:
        return x.copy()
    from scipy.integrate import solve_ivp

    sol = solve_ivp(lambda s, X: -_speed_values(speed, X), (0.0, t), x.ravel(),
                    method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"characteristic integration failed: {sol.message}")
    return sol.y[:, -1].reshape(x.shape)


def characteristic_solution(initial_lift, speed):
    """Exact solution ``(x, t) -> h(X(0; x, t))``; ``log v`` is constant along characteristics."""

    def solution(x, t):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return _sample(initial_lift, characteristic_foot(speed, x, t))

    return solution

