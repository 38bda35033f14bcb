"""Acceptance criteria 1-9, one PASS/FAIL line each (see the summary section)."""
import math
import time

import mpmath
import numpy as np
from numpy.polynomial import polynomial as P

import props
from starcalc import (
    AdvectionProblem,
    BoundaryRule,
    Grid1D,
    QuotientStencil,
    check_rule,
    classical_leapfrog,
    exp_lift,
    finite_quotient,
    fit_exp_poly,
    leapfrog_step,
    lift_hankel,
    star_derivative_oracle,
    star_distance,
    taylor_remainder,
    y_zeros,
)
from starcalc.experiments import ExperimentConfig, convergence_study, observed_orders, run_experiment, stability_run

TWO_PI = 2 * math.pi
PACKET = ExperimentConfig("classical-compare", a=1.0, k=100.0, speed="const:1", dx=0.1, dt=0.05, T=10.0)


def test_criterion_1_sub_nyquist_exactness(criterion):
    cfg = ExperimentConfig("advect-exact", a=1.0, k=100.0, speed="const:1", dx=0.1, dt=0.05, T=10.0)
    start = time.perf_counter()
    row = run_experiment(cfg).rows[0]
    elapsed = time.perf_counter() - start
    err = row["projected_rel_error"]
    ok = err <= 1e-8 and elapsed < 1.0 and row["steps"] == 200 and row["courant"] == 0.5
    criterion(1, "sub-Nyquist exactness", ok,
              f"projected rel error {err:.3g} (<= 1e-8), {row['points_per_wavelength']:.3g} pts/wavelength, "
              f"{elapsed:.2f} s")
    assert ok


def test_criterion_2_classical_baseline_fails(criterion):
    errs = {r["method"]: r["projected_rel_error"] for r in run_experiment(PACKET).rows}
    ok = errs["classical"] >= 0.5
    criterion(2, "classical leapfrog fails on the same grid", ok,
              f"classical rel error {errs['classical']:.3g} (>= 0.5), multiplicative {errs['multiplicative']:.3g}")
    assert ok


def _random_periodic_ic(rng):
    winding = int(rng.integers(-5, 6))
    coef = (rng.normal(size=(4, 2)) @ np.array([1, 1j])) / np.arange(1, 5) ** 2

    def log_h(x):
        x = np.asarray(x, dtype=float)
        m = np.arange(1, 5)[:, None]
        return 1j * winding * x + coef.real @ np.cos(m * x) + 1j * (coef.imag @ np.sin(m * x))

    return log_h, winding


def test_criterion_3_log_equivalence(criterion, rng):
    worst = 0.0
    for _ in range(10):
        log_h, winding = _random_periodic_ic(rng)
        grid = Grid1D.periodic(0.0, TWO_PI, int(rng.integers(16, 97)))
        base, amp = rng.uniform(1.0, 2.0), rng.uniform(0.0, 0.9)
        c = lambda x, base=base, amp=amp: base + amp * np.sin(x)  # noqa: E731
        dt = rng.uniform(0.3, 0.95) * grid.dx / (base + amp)
        # second level deliberately not exact: equivalence is an identity of the recurrences
        problem = AdvectionProblem(c, lambda x: exp_lift(log_h(x)), lambda x: exp_lift(log_h(x + c(x) * dt)),
                                   grid, dt, BoundaryRule.periodic(winding))
        prev, curr = problem.initial_levels()
        for _ in range(500):
            nxt = leapfrog_step(prev, curr, problem)
            oracle = classical_leapfrog(prev.log(), curr.log(), c(grid.x), dt, grid.dx,
                                        period_offset=TWO_PI * winding * 1j)
            worst = max(worst, float(np.max(np.abs(nxt.log() - oracle))))
            prev, curr = curr, nxt
    ok = worst <= 1e-13
    criterion(3, "log-equivalence with additive leapfrog", ok,
              f"max per-step |log w - leapfrog(log w)| = {worst:.3g} (<= 1e-13), 10 ICs x 500 steps")
    assert ok


def test_criterion_4_variable_speed_convergence(criterion):
    c = lambda x: 2 + np.sin(x)  # noqa: E731
    start = time.perf_counter()
    table = convergence_study(c)
    elapsed = time.perf_counter() - start
    dx, dt, star, proj = map(np.array, zip(*table))
    star_orders = observed_orders(np.log(star))
    proj_orders = observed_orders(proj)
    ratio = dt / dx
    ok = (
        len(star_orders) == 3
        and np.all(np.abs(star_orders - 2.0) <= 0.3)
        and np.all(np.abs(proj_orders - 2.0) <= 0.3)
        and np.ptp(ratio) < 1e-12
        and elapsed < 30
    )
    criterion(4, "variable-speed convergence", ok,
              f"dt/dx = {ratio[0]:.4f}; log-*error orders {np.round(star_orders, 3).tolist()}, "
              f"projected orders {np.round(proj_orders, 3).tolist()} (2 +/- 0.3), {elapsed:.1f} s")
    assert ok


def test_criterion_5_property_suites(criterion, rng):
    counts = {name: suite(rng, 1000) for name, suite in props.SUITES.items()}
    ok = all(v == 0 for v in counts.values())
    criterion(5, "algebra/norm property suites", ok,
              "violations per 1000: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    assert ok


def _rand_exp_poly(rng):
    deg = int(rng.integers(0, 4))
    c = rng.uniform(-1, 1, deg + 1) + 1j * rng.uniform(-1, 1, deg + 1)
    return (lambda x: exp_lift(complex(P.polyval(x, c)))), c


def test_criterion_6_rules_and_taylor(criterion, rng):
    stencil = QuotientStencil("centered", 1e-5)
    rules = ("power", "product", "quotient", "func_power", "chain")
    worst = dict.fromkeys(rules, 0.0)
    worst_taylor = 0.0
    for _ in range(100):
        f, cf = _rand_exp_poly(rng)
        g, _ = _rand_exp_poly(rng)
        hc = rng.uniform(-1, 1, int(rng.integers(1, 4)))
        h_fn = lambda x, hc=hc: float(P.polyval(x, hc))  # noqa: E731
        x = rng.uniform(-1, 1)
        power = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        for rule in rules:
            worst[rule] = max(worst[rule], check_rule(rule, f, g, h_fn, x=x, stencil=stencil, c=power))
        # Taylor remainder against the direct polynomial expansion
        x0, step = rng.uniform(-1, 1), rng.uniform(-1, 1)
        dlog = lambda t, cf=cf: complex(P.polyval(t, P.polyder(cf))) if len(cf) > 1 else 0j  # noqa: E731
        direct = abs(P.polyval(x0 + step, cf) - P.polyval(x0, cf) - dlog(x0) * step)
        worst_taylor = max(worst_taylor, abs(taylor_remainder(f, dlog, x0, x0 + step) - direct))

    f = lambda t: exp_lift(math.sin(t))  # noqa: E731
    ref = star_derivative_oracle(math.sin, math.cos, 0.6)
    hs = 0.2 / 2.0 ** np.arange(5)
    errs = np.array([star_distance(finite_quotient(f, 0.6, QuotientStencil("centered", h)), ref) for h in hs])
    orders = np.log2(errs[:-1] / errs[1:])
    ok = max(worst.values()) <= 1e-8 and worst_taylor <= 1e-8 and np.all(np.abs(orders - 2.0) <= 0.2)
    criterion(6, "derivative rules i-v and Taylor", ok,
              "max residuals " + ", ".join(f"{k} {v:.2g}" for k, v in worst.items())
              + f", taylor {worst_taylor:.2g} (<= 1e-8); centered orders {np.round(orders, 3).tolist()}")
    assert ok


def test_criterion_7_interpolation(criterion):
    k, a = 50.0, 7.0
    xs2, xs3 = np.array([0.0, 0.1]), np.array([0.0, 0.1, 0.2])
    wave = fit_exp_poly(xs2, exp_lift(1j * k * xs2))
    gauss = fit_exp_poly(xs3, exp_lift(-a * xs3**2 + 0j))
    wave_err = float(np.max(np.abs(wave.coeffs - [0, 1j * k])))
    gauss_err = float(np.max(np.abs(gauss.coeffs - [0, 0, -a])))
    x = np.linspace(-1, 1, 100)
    off_wave = float(np.max((wave(x) / exp_lift(1j * k * x)).star_abs().modulus))
    off_gauss = float(np.max((gauss(x) / exp_lift(-a * x**2 + 0j)).star_abs().modulus))
    ok = wave_err <= 1e-10 and gauss_err <= 1e-9 and off_wave <= 1 + 1e-9 and off_gauss <= 1 + 1e-9
    criterion(7, "sub-Nyquist interpolation", ok,
              f"exp(ikx) coeff error {wave_err:.2g} (<= 1e-10), exp(-ax^2) coeff error {gauss_err:.2g} (<= 1e-9), "
              f"off-node max |ratio|_* - 1 = {max(off_wave, off_gauss) - 1:.2g}")
    assert ok


def test_criterion_8_hankel(criterion):
    xs = np.round(np.arange(0.5, 30.0 + 1e-9, 0.01), 12)
    w = lift_hankel(1, 0, xs)
    with mpmath.workdps(30):
        ref = np.array([complex(mpmath.besselj(0, x) + 1j * mpmath.bessely(0, x)) for x in xs])
    proj_err = float(np.max(np.abs(w.project() - ref) / np.abs(ref)))
    jump = float(np.max(np.abs(np.diff(w.argument))))

    def bisect(a, b):
        f = lambda t: mpmath.bessely(0, t)  # noqa: E731
        return float(mpmath.findroot(f, (a, b), solver="bisect", tol=1e-20))

    oracle = [bisect(0.5, 1.5), bisect(3.5, 4.5), bisect(6.5, 7.5)]
    zeros = y_zeros(0, 10.0)
    zero_err = float(np.max(np.abs(zeros - oracle))) if zeros.size == 3 else math.inf
    printed = float(np.max(np.abs(zeros - [0.8936, 3.9577, 7.0861]))) if zeros.size == 3 else math.inf
    ok = proj_err <= 1e-8 and jump < math.pi / 4 and zero_err <= 1e-6 and printed <= 5e-5
    criterion(8, "Hankel lifting", ok,
              f"projection rel error {proj_err:.2g} (<= 1e-8), max argument jump {jump:.3g} (< pi/4), "
              f"Y0 zeros {np.round(zeros, 4).tolist()} error {zero_err:.2g}")
    assert ok


def test_criterion_9_stability(criterion):
    unstable, stable = [], []
    for seed in range(3):
        _, e_hi = stability_run(1.05, seed=seed)
        _, e_lo = stability_run(0.95, seed=seed)
        unstable.append((e_hi.max() / e_hi[0], int(np.argmax(e_hi >= 10 * e_hi[0]))))
        stable.append((e_lo.max() / e_lo[0], len(e_lo) - 1))
    ok = all(g >= 10 and 0 < step <= 500 for g, step in unstable) and all(g < 10 and n == 500 for g, n in stable)
    criterion(9, "conditional stability", ok,
              f"CFL 1.05: 10x growth by step {max(s for _, s in unstable)}; "
              f"CFL 0.95: max growth {max(g for g, _ in stable):.3g} over 500 steps")
    assert ok
