"""
Batch experiments: each takes an :class:`ExperimentConfig` and returns a
:class:`Report` (column names plus rows) ready to be written as CSV.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .advection import (
    AdvectionProblem,
    BoundaryRule,
    CFLError,
    Grid1D,
    advance,
    characteristic_solution,
    classical_leapfrog,
    projected_rel_error,
    run,
    star_rel_error,
)
from .interp import fit_exp_poly
from .lifting import lift_hankel
from .mvector import NormSpec, SurfaceVector
from .surface import SurfaceRangeError, embed, exp_lift

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "Report",
    "EXPERIMENTS",
    "parse_speed",
    "run_experiment",
    "emit_csv",
    "format_value",
]


class ConfigError(ValueError):
    """Experiment parameters fail validation (CFL, T-compatibility, ...)."""


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    a: Optional[float] = None
    k: Optional[float] = None
    speed: Optional[str] = None
    dx: Optional[float] = None
    dt: Optional[float] = None
    T: Optional[float] = None
    norm: str = "inf"
    seed: int = 0
    out: Optional[str] = None

    def with_defaults(self):
        defaults = DEFAULTS[self.experiment]
        filled = {k: (getattr(self, k) if getattr(self, k) is not None else v) for k, v in defaults.items()}
        if self.experiment == "stability-probe" and self.T is None:
            filled["T"] = PROBE_STEPS * filled["dt"]
        return replace(self, **filled)

    @property
    def norm_spec(self):
        return NormSpec.parse(self.norm)


@dataclass
class Report:
    columns: list
    rows: list = field(default_factory=list)

    def add(self, **row):
        missing = set(self.columns) ^ set(row)
        if missing:
            raise KeyError(f"row keys do not match schema: {sorted(missing)}")
        self.rows.append(row)

    def column(self, name):
        return [r[name] for r in self.rows]


def parse_speed(text):
    """``const:<v>`` or ``sinusoid:<base>:<amp>`` (``base + amp sin x``)."""
    parts = str(text).split(":")
    try:
        if parts[0] == "const" and len(parts) == 2:
            return float(parts[1])
        if parts[0] == "sinusoid" and len(parts) == 3:
            base, amp = float(parts[1]), float(parts[2])
            return lambda x: base + amp * np.sin(x)
    except ValueError:
        pass
    raise ConfigError(f"cannot parse speed {text!r}; use const:<v> or sinusoid:<base>:<amp>")


def _steps(T, dt):
    n = T / dt
    if not (n > 0.5 and abs(n - round(n)) <= 1e-9 * max(1.0, n)):
        raise ConfigError(f"T/dt = {n:.12g} is not a positive integer")
    return int(round(n))


def points_per_wavelength(k, dx):
    return math.inf if k == 0 else 2 * math.pi / (abs(k) * dx)


def _check_courant(nu):
    if not nu < 1.0:
        raise ConfigError(f"Courant number {nu:.6g} violates |c dt/dx| < 1")


# -- whole-line Gaussian wave packet ----------------------------------------


def _packet_setup(cfg):
    c = parse_speed(cfg.speed)
    if callable(c):
        raise ConfigError("this experiment needs a constant speed")
    if not cfg.a > 0:
        raise ConfigError("a must be positive")
    n_steps = _steps(cfg.T, cfg.dt)
    _check_courant(abs(c) * cfg.dt / cfg.dx)
    margin = 4.0 / math.sqrt(cfg.a)
    lo, hi = min(0.0, c * cfg.T) - margin, max(0.0, c * cfg.T) + margin
    grid = Grid1D.covering(lo, hi, cfg.dx)
    return c, grid, n_steps


def _packet_log(a, k):
    return lambda x: -a * np.asarray(x) ** 2 + 1j * k * np.asarray(x)


def _solve_packet(cfg, log_g):
    """Multiplicative solve of exp(log_g) with exact second level and boundaries."""
    c, grid, n_steps = _packet_setup(cfg)
    ref = lambda x, t: exp_lift(log_g(np.asarray(x) - c * t))  # noqa: E731
    problem = AdvectionProblem(
        c, lambda x: ref(x, 0.0), lambda x: ref(x, -cfg.dt), grid, cfg.dt, BoundaryRule.exact_injection(ref)
    )
    return run(problem, n_steps), ref


def _classical_packet(cfg, g):
    """Classical leapfrog on the complex (or real) function ``g`` on the same grid."""
    c, grid, n_steps = _packet_setup(cfg)
    x = grid.x
    u_prev, u_curr = g(x + c * cfg.dt), g(x)
    for n in range(1, n_steps + 1):
        edges = g(x[[0, -1]] - c * n * cfg.dt)
        u_prev, u_curr = u_curr, classical_leapfrog(u_prev, u_curr, c, cfg.dt, cfg.dx, "injection", edges)
    return grid, u_curr


def advect_exact(cfg):
    rep = Report(["a", "k", "c", "dx", "dt", "T", "steps", "courant", "points_per_wavelength",
                  "projected_rel_error", "star_rel_error"])
    log_g = _packet_log(cfg.a, cfg.k)
    w, ref = _solve_packet(cfg, log_g)
    c, _, n_steps = _packet_setup(cfg)
    spec = cfg.norm_spec
    rep.add(
        a=cfg.a, k=cfg.k, c=c, dx=cfg.dx, dt=cfg.dt, T=cfg.T, steps=n_steps,
        courant=abs(c) * cfg.dt / cfg.dx,
        points_per_wavelength=points_per_wavelength(cfg.k, cfg.dx),
        projected_rel_error=projected_rel_error(w, lambda x: np.exp(log_g(x - c * cfg.T)), spec),
        star_rel_error=star_rel_error(w, lambda x: ref(x, cfg.T), spec),
    )
    return rep


def classical_compare(cfg):
    rep = Report(["method", "dx", "dt", "T", "points_per_wavelength", "projected_rel_error"])
    log_g = _packet_log(cfg.a, cfg.k)
    c, _, _ = _packet_setup(cfg)
    exact = lambda x: np.exp(log_g(x - c * cfg.T))  # noqa: E731
    spec = cfg.norm_spec
    ppw = points_per_wavelength(cfg.k, cfg.dx)
    w, _ = _solve_packet(cfg, log_g)
    rep.add(method="multiplicative", dx=cfg.dx, dt=cfg.dt, T=cfg.T, points_per_wavelength=ppw,
            projected_rel_error=projected_rel_error(w, exact, spec))
    grid, u = _classical_packet(cfg, lambda x: np.exp(log_g(x)))
    ex = exact(grid.x)
    rep.add(method="classical", dx=cfg.dx, dt=cfg.dt, T=cfg.T, points_per_wavelength=ppw,
            projected_rel_error=spec(u - ex) / spec(ex))
    return rep


def offset_failure(cfg):
    """Initial data ``1 + e^{-ax^2} cos(kx) / 2``: polar lifting vs classical vs offset removal."""
    rep = Report(["method", "dx", "dt", "T", "points_per_wavelength", "projected_rel_error"])
    a, k = cfg.a, cfg.k
    f = lambda x: 1.0 + 0.5 * np.exp(-a * np.asarray(x) ** 2) * np.cos(k * np.asarray(x))  # noqa: E731
    c, grid, n_steps = _packet_setup(cfg)
    spec = cfg.norm_spec
    ex = f(grid.x - c * cfg.T)
    ppw = points_per_wavelength(k, cfg.dx)
    row = dict(dx=cfg.dx, dt=cfg.dt, T=cfg.T, points_per_wavelength=ppw)

    # f > 0, so its polar lifting is (f, 0): the modulus carries the oscillation
    polar = lambda x, t: SurfaceVector(f(np.asarray(x) - c * t))  # noqa: E731
    problem = AdvectionProblem(c, lambda x: polar(x, 0.0), lambda x: polar(x, -cfg.dt), grid, cfg.dt,
                               BoundaryRule.exact_injection(polar))
    w = run(problem, n_steps)
    rep.add(method="multiplicative-polar", projected_rel_error=spec(w.project().real - ex) / spec(ex), **row)

    _, u = _classical_packet(cfg, lambda x: f(x).astype(complex))
    rep.add(method="classical", projected_rel_error=spec(u.real - ex) / spec(ex), **row)

    # subtract the offset, lift the wave packet, add the offset back
    w2, _ = _solve_packet(cfg, lambda x: np.log(0.5) - a * np.asarray(x) ** 2 + 1j * k * np.asarray(x))
    u2 = 1.0 + w2.project().real
    rep.add(method="multiplicative-offset-removed", projected_rel_error=spec(u2 - ex) / spec(ex), **row)
    return rep


# -- periodic variable-speed convergence ------------------------------------


def _periodic_problem(c, a, k, n_points, dt):
    grid = Grid1D.periodic(0.0, 2 * np.pi, n_points)
    h = lambda x: exp_lift(a * (np.cos(x) - 1.0) + 1j * k * np.asarray(x))  # noqa: E731
    exact = characteristic_solution(h, c)
    problem = AdvectionProblem(c, h, lambda x: exact(x, -dt), grid, dt, BoundaryRule.periodic(k))
    return problem, exact


def convergence_study(c, a=1.0, k=2, n0=44, m0=28, T=1.0, levels=4, ref_factor=8, spec=NormSpec(np.inf)):
    """Dyadic refinement at fixed dt/dx against an ``ref_factor``-times finer run.

    Returns ``(dx, dt, star_rel_error, projected_rel_error)`` per level.
    """
    n_fine = n0 * 2 ** (levels - 1) * ref_factor
    m_fine = m0 * 2 ** (levels - 1) * ref_factor
    ref_problem, _ = _periodic_problem(c, a, k, n_fine, T / m_fine)
    ref = run(ref_problem, m_fine)
    out = []
    for lev in range(levels):
        n, m = n0 * 2**lev, m0 * 2**lev
        problem, _ = _periodic_problem(c, a, k, n, T / m)
        w = run(problem, m)
        stride = n_fine // n
        rv = SurfaceVector(ref.values.modulus[::stride], ref.values.argument[::stride])
        out.append((problem.grid.dx, problem.dt, star_rel_error(w, rv, spec),
                    projected_rel_error(w, rv.project(), spec)))
    return out


def observed_orders(errors):
    e = np.asarray(errors, dtype=float)
    return np.log2(e[:-1] / e[1:])


def advect_converge(cfg):
    rep = Report(["dx", "dt", "star_rel_error", "projected_rel_error", "observed_order"])
    c = parse_speed(cfg.speed)
    if float(cfg.k) != round(cfg.k):
        raise ConfigError("advect-converge needs an integer k (the lifted data winds k times per period)")
    L = 2 * np.pi
    n0 = L / cfg.dx
    if abs(n0 - round(n0)) > 1e-6:
        raise ConfigError(f"dx must divide the period 2*pi; 2*pi/dx = {n0:.9g}")
    n0 = int(round(n0))
    m0 = _steps(cfg.T, cfg.dt)
    dx0 = L / n0
    xs = Grid1D.periodic(0.0, L, n0).x
    cmax = float(np.max(np.abs(np.full(xs.shape, c) if not callable(c) else c(xs))))
    _check_courant(cmax * cfg.dt / dx0)
    results = convergence_study(c, cfg.a, int(round(cfg.k)), n0, m0, cfg.T, spec=cfg.norm_spec)
    log_err = [math.log(r[2]) for r in results]
    orders = [None] + list(observed_orders(log_err))
    for (dx, dt, se, pe), order in zip(results, orders):
        rep.add(dx=dx, dt=dt, star_rel_error=se, projected_rel_error=pe,
                observed_order=None if order is None else float(order))
    return rep


# -- sampling / interpolation -------------------------------------------------


def nyquist_demo(cfg):
    """Recover ``exp(ikx)`` from 2 and ``exp(-ax^2)`` from 3 lifted samples."""
    rep = Report(["target", "source", "n_samples", "node_spacing", "points_per_wavelength",
                  "true_coefficient", "recovered_coefficient", "coeff_error", "max_offnode_log_error"])
    k, a, h = cfg.k, cfg.a, cfg.dx
    probe = np.linspace(0.0, 1.0, 100)

    def add(target, source, xs, ws, exact_coeffs, idx, log_fn):
        p = fit_exp_poly(xs, ws)
        err = float(np.max(np.abs(p.coeffs - exact_coeffs)))
        off = float(np.max(np.abs(p.log(probe) - log_fn(probe))))
        ppw = points_per_wavelength(k, h) if target == "exp(ikx)" else math.inf
        rep.add(target=target, source=source, n_samples=len(xs), node_spacing=h, points_per_wavelength=ppw,
                true_coefficient=exact_coeffs[idx], recovered_coefficient=p.coeffs[idx],
                coeff_error=err, max_offnode_log_error=off)

    xs = np.array([0.0, h])
    wave = lambda x: 1j * k * np.asarray(x)  # noqa: E731
    add("exp(ikx)", "lifted", xs, exp_lift(wave(xs)), np.array([0, 1j * k]), 1, wave)
    # principal embedding of the projected samples forgets the sheet
    add("exp(ikx)", "embedded-projection", xs, embed(np.exp(wave(xs))), np.array([0, 1j * k]), 1, wave)
    xs3 = np.array([0.0, h, 2 * h])
    gauss = lambda x: -a * np.asarray(x) ** 2 + 0j  # noqa: E731
    add("exp(-ax^2)", "lifted", xs3, exp_lift(gauss(xs3)), np.array([0, 0, -a]), 2, gauss)
    return rep


def hankel_lift(cfg, x_min=0.5, x_max=30.0):
    rep = Report(["kind", "n", "x", "modulus", "argument", "re", "im", "argument_jump"])
    xs = x_min + cfg.dx * np.arange(int(np.floor((x_max - x_min) / cfg.dx + 1e-9)) + 1)
    for kind in (1, 2):
        for n in (0, 1):
            w = lift_hankel(kind, n, xs)
            z = w.project()
            jumps = np.concatenate([[0.0], np.abs(np.diff(w.argument))])
            for i in range(xs.size):
                rep.add(kind=kind, n=n, x=float(xs[i]), modulus=float(w.modulus[i]),
                        argument=float(w.argument[i]), re=float(z[i].real), im=float(z[i].imag),
                        argument_jump=float(jumps[i]))
    return rep


# -- stability ----------------------------------------------------------------


def stability_run(courant, n_points=64, k=3, delta=1e-6, seed=0, max_steps=500, stop_growth=1e3, c=1.0):
    """Leapfrog on ``exp(ikx)`` (exact for the scheme) with a seeded perturbation of size ``delta``.

    Returns the error ``ln ||v / w||_*`` at level 0 and after each step.
    Stepping stops once the error exceeds ``stop_growth`` times its initial
    value or the modulus leaves floating-point range.
    """
    rng = np.random.default_rng(seed)
    grid = Grid1D.periodic(0.0, 2 * np.pi, n_points)
    dt = courant * grid.dx / abs(c)
    x = grid.x
    log_v = lambda t: 1j * k * (x - c * t)  # noqa: E731
    noise = lambda: delta * (rng.standard_normal(n_points) + 1j * rng.standard_normal(n_points))  # noqa: E731
    n_prev, n_curr = noise(), noise()
    problem = AdvectionProblem(c, lambda _: exp_lift(log_v(0.0) + n_curr), lambda _: exp_lift(log_v(-dt) + n_prev),
                               grid, dt, BoundaryRule.periodic(k))
    prev, curr = problem.initial_levels()
    err = lambda lvl: float(np.max(np.abs(lvl.log() - log_v(lvl.time))))  # noqa: E731
    errors = [err(curr)]

    def monitor(level):
        errors.append(err(level))
        return errors[-1] > stop_growth * errors[0]

    try:
        advance(prev, curr, problem, max_steps, check_cfl=False, monitor=monitor)
    except SurfaceRangeError:
        pass
    return dt, np.array(errors)


def stability_probe(cfg):
    rep = Report(["step", "time", "courant", "log_star_error", "growth"])
    c = parse_speed(cfg.speed)
    if callable(c):
        raise ConfigError("stability-probe needs a constant speed")
    n_points = 2 * np.pi / cfg.dx
    if abs(n_points - round(n_points)) > 1e-6:
        raise ConfigError(f"dx must divide the period 2*pi; 2*pi/dx = {n_points:.9g}")
    n_points = int(round(n_points))
    courant = abs(c) * cfg.dt / (2 * np.pi / n_points)
    max_steps = _steps(cfg.T, cfg.dt)
    dt, errors = stability_run(courant, n_points, k=int(round(cfg.k)), seed=cfg.seed,
                               max_steps=max_steps, c=c)
    for n, e in enumerate(errors):
        rep.add(step=n, time=n * dt, courant=courant, log_star_error=float(e), growth=float(e / errors[0]))
    return rep


EXPERIMENTS = {
    "advect-exact": advect_exact,
    "advect-converge": advect_converge,
    "classical-compare": classical_compare,
    "nyquist-demo": nyquist_demo,
    "hankel-lift": hankel_lift,
    "offset-failure": offset_failure,
    "stability-probe": stability_probe,
}

_PACKET = dict(a=1.0, k=100.0, speed="const:1", dx=0.1, dt=0.05, T=10.0)
_PROBE_DX = 2 * np.pi / 64
PROBE_STEPS = 500
DEFAULTS = {
    "advect-exact": _PACKET,
    "classical-compare": _PACKET,
    "offset-failure": _PACKET,
    "advect-converge": dict(a=1.0, k=2.0, speed="sinusoid:2:1", dx=2 * np.pi / 44, dt=1.0 / 28, T=1.0),
    "nyquist-demo": dict(a=7.0, k=50.0, speed="const:1", dx=0.1, dt=0.05, T=1.0),
    "hankel-lift": dict(a=1.0, k=0.0, speed="const:1", dx=0.01, dt=0.01, T=1.0),
    "stability-probe": dict(a=1.0, k=3.0, speed="const:1", dx=_PROBE_DX, dt=1.05 * _PROBE_DX,
                            T=PROBE_STEPS * 1.05 * _PROBE_DX),
}


def run_experiment(cfg):
    """Run one experiment; returns its :class:`Report`.  Raises :class:`ConfigError` on bad parameters."""
    if cfg.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {cfg.experiment!r}")
    cfg = cfg.with_defaults()
    for name in ("dx", "dt", "T"):
        v = getattr(cfg, name)
        if not (math.isfinite(v) and v > 0):
            raise ConfigError(f"{name} must be positive, got {v!r}")
    try:
        cfg.norm_spec
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    try:
        return EXPERIMENTS[cfg.experiment](cfg)
    except CFLError as exc:
        raise ConfigError(str(exc)) from None


def format_value(v):
    """Shortest round-trip text for floats; complex as ``re+imj``; None as empty."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        return f"{repr(v.real)}{'+' if v.imag >= 0 or math.isnan(v.imag) else '-'}{repr(abs(v.imag))}j"
    return str(v)


def emit_csv(report, path=None):
    """Write the report as UTF-8 CSV (header row first, ``\\n`` line endings).

    Returns the text; writes it to ``path`` if given.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([format_value(row[c]) for c in report.columns])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
