import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from starcalc import (
    AdvectionProblem,
    BoundaryRule,
    CFLError,
    Grid1D,
    GridFunction,
    NormSpec,
    SurfaceVector,
    advance,
    characteristic_foot,
    characteristic_solution,
    classical_leapfrog,
    exp_lift,
    leapfrog_step,
    projected_rel_error,
    relative_bound,
    run,
    star_rel_error,
    taylor_start,
)

TWO_PI = 2 * math.pi


def gaussian_problem(a=1.0, k=30.0, c=1.0, dx=0.1, dt=0.05, T=2.0):
    log_g = lambda x: -a * np.asarray(x) ** 2 + 1j * k * np.asarray(x)  # noqa: E731
    ref = lambda x, t: exp_lift(log_g(np.asarray(x) - c * t))  # noqa: E731
    margin = 4 / math.sqrt(a)
    grid = Grid1D.covering(min(0, c * T) - margin, max(0, c * T) + margin, dx)
    problem = AdvectionProblem(c, lambda x: ref(x, 0.0), lambda x: ref(x, -dt), grid, dt,
                               BoundaryRule.exact_injection(ref))
    return problem, ref, log_g


def smooth_periodic_log(rng, winding):
    """Random smooth periodic log data plus ``i * winding * x``."""
    a = rng.normal(size=(3, 2)) * 0.5 / np.arange(1, 4)[:, None]
    b = rng.normal(size=(3, 2)) * 0.5 / np.arange(1, 4)[:, None]

    def log_h(x):
        x = np.asarray(x, dtype=float)
        out = 1j * winding * x + 0j
        for m in range(3):
            out = out + (a[m, 0] + 1j * a[m, 1]) * np.cos((m + 1) * x) + (b[m, 0] + 1j * b[m, 1]) * np.sin((m + 1) * x)
        return out

    return log_h


def periodic_problem(log_h, c, n=64, nu=0.5, winding=0, exact_second=True):
    grid = Grid1D.periodic(0.0, TWO_PI, n)
    cmax = 3.0 if callable(c) else abs(c)
    dt = nu * grid.dx / cmax
    h = lambda x: exp_lift(log_h(x))  # noqa: E731
    if exact_second:
        second = lambda x: characteristic_solution(h, c)(x, -dt)  # noqa: E731
    else:
        vals = taylor_start(h, c, grid, dt)
        second = lambda x: vals  # noqa: E731
    return AdvectionProblem(c, h, second, grid, dt, BoundaryRule.periodic(winding))


class TestGrid:
    def test_grid(self):
        g = Grid1D.periodic(0.0, TWO_PI, 8)
        assert g.dx == pytest.approx(TWO_PI / 8)
        assert g.x[-1] < TWO_PI
        assert g.refine().n_points == 16
        cov = Grid1D.covering(-1.0, 1.0, 0.1)
        assert cov.x[-1] == pytest.approx(1.0)
        with pytest.raises(ValueError):
            Grid1D(0.0, 0.1, 2)
        with pytest.raises(ValueError):
            Grid1D(0.0, -0.1, 5)

    def test_boundary_validation(self):
        with pytest.raises(ValueError):
            BoundaryRule("exact_injection")
        with pytest.raises(ValueError):
            BoundaryRule("absorbing")


class TestStep:
    def test_zero_speed(self, rng):
        log_h = smooth_periodic_log(rng, 2)
        grid = Grid1D.periodic(0.0, TWO_PI, 32)
        prob = AdvectionProblem(0.0, lambda x: exp_lift(log_h(x)), lambda x: exp_lift(log_h(x) + 0.1), grid, 0.1,
                                BoundaryRule.periodic(2))
        prev, curr = prob.initial_levels()
        nxt = leapfrog_step(prev, curr, prob)
        assert nxt.values == prev.values
        assert nxt.time == pytest.approx(0.1)

    def test_one_step_exact(self):
        prob, ref, _ = gaussian_problem(a=0.7, k=40.0, c=1.3, dx=0.2, dt=0.1)
        prev, curr = prob.initial_levels()
        nxt = leapfrog_step(prev, curr, prob)
        assert nxt.values.isclose(ref(prob.grid.x, 0.1), 1e-11)

    def test_levels_must_be_dt_apart(self):
        prob, _, _ = gaussian_problem()
        prev, curr = prob.initial_levels()
        with pytest.raises(ValueError):
            leapfrog_step(prev, GridFunction(curr.grid, curr.values, 0.3), prob)

    def test_cfl_violation(self):
        prob, _, _ = gaussian_problem(dt=0.1, dx=0.1)
        prev, curr = prob.initial_levels()
        with pytest.raises(CFLError):
            leapfrog_step(prev, curr, prob)
        with pytest.raises(CFLError):
            run(prob, 3)
        with pytest.raises(CFLError):
            classical_leapfrog(np.ones(4), np.ones(4), 1.2, 1.0, 1.0)

    def test_run_needs_a_step(self):
        prob, _, _ = gaussian_problem()
        with pytest.raises(ValueError):
            run(prob, 0)

    def test_log_equivalence_variable_speed(self, rng):
        c = lambda x: 2 + np.sin(x)  # noqa: E731
        prob = periodic_problem(smooth_periodic_log(rng, 3), c, n=48, nu=0.9, winding=3)
        prev, curr = prob.initial_levels()
        for _ in range(200):
            nxt = leapfrog_step(prev, curr, prob)
            oracle = classical_leapfrog(prev.log(), curr.log(), c(prob.grid.x), prob.dt, prob.grid.dx,
                                        period_offset=TWO_PI * 3j)
            assert np.max(np.abs(nxt.log() - oracle)) <= 1e-13
            prev, curr = curr, nxt

    def test_log_equivalence_injection(self):
        prob, ref, _ = gaussian_problem(k=80.0)
        prev, curr = prob.initial_levels()
        for _ in range(40):
            nxt = leapfrog_step(prev, curr, prob)
            edges = ref(prob.grid.x[[0, -1]], nxt.time).log()
            oracle = classical_leapfrog(prev.log(), curr.log(), 1.0, prob.dt, prob.grid.dx,
                                        boundary="injection", edges=edges)
            assert np.max(np.abs(nxt.log() - oracle)) <= 1e-13
            prev, curr = curr, nxt


class TestRun:
    @settings(max_examples=15)
    @given(
        st.floats(0.3, 3.0),
        st.floats(-200.0, 200.0),
        st.floats(-2.0, 2.0).filter(lambda c: abs(c) > 0.05),
        st.floats(0.05, 0.3),
        st.floats(0.1, 0.95),
    )
    def test_exact_for_quadratic_log(self, a, k, c, dx, nu):
        dt = nu * dx / abs(c)
        T = 200 * dt
        # keep every grid value inside double range
        assume(a * (abs(c) * T + 4 / math.sqrt(a)) ** 2 < 600)
        prob, ref, log_g = gaussian_problem(a, k, c, dx, dt, T)
        final = run(prob, 200)
        exact = lambda x: np.exp(log_g(x - c * final.time))  # noqa: E731
        assert projected_rel_error(final, exact) <= 1e-8
        assert star_rel_error(final, lambda x: ref(x, final.time)) - 1 <= 1e-8

    def test_history_and_induction(self, rng):
        prob = periodic_problem(smooth_periodic_log(rng, 1), lambda x: 2 + np.sin(x), winding=1)
        final, levels = run(prob, 30, history=True)
        assert len(levels) == 32 and levels[-1] is not None
        assert levels[-1].values == final.values
        again = advance(levels[11], levels[12], prob, 19)[1]
        assert again.values == final.values
        assert again.time == pytest.approx(final.time)

    def test_monitor_stops_early(self, rng):
        prob = periodic_problem(smooth_periodic_log(rng, 0), 1.0)
        prev, curr = prob.initial_levels()
        seen = []
        _, last = advance(prev, curr, prob, 50, monitor=lambda lvl: seen.append(lvl) or len(seen) == 7)
        assert len(seen) == 7 and last.time == pytest.approx(7 * prob.dt)

    def test_real_part_pipeline(self):
        # Re of the projected multiplicative solution solves the real advection problem
        a, k, c = 1.0, 100.0, 1.0
        prob, _, log_g = gaussian_problem(a, k, c, dx=0.1, dt=0.05, T=10.0)
        final = run(prob, 200)
        f = lambda x: np.real(np.exp(log_g(x)))  # noqa: E731
        x = prob.grid.x
        np.testing.assert_allclose(final.project().real, f(x - c * final.time), atol=1e-9)

    def test_unstable_growth(self, rng):
        prob = periodic_problem(smooth_periodic_log(rng, 0), 1.0, n=32, nu=1.2)
        with pytest.raises(CFLError):
            run(prob, 10)
        errs = []
        prev, curr = prob.initial_levels()
        exact = characteristic_solution(prob.initial_lift, 1.0)
        while len(errs) < 300 and (not errs or errs[-1] < 1e3 * errs[0]):
            prev, curr = advance(prev, curr, prob, 1, check_cfl=False)
            errs.append(math.log(star_rel_error(curr, exact(prob.grid.x, curr.time))))
        assert errs[-1] > 1e3 * errs[0]


class TestErrors:
    def test_star_rel_error_examples(self):
        g = Grid1D(0.0, 1.0, 3)
        w = GridFunction(g, SurfaceVector([1.0, 2.0, 3.0], [0.0, 1.0, 2.0]), 0.0)
        assert star_rel_error(w, w.values) == 1.0
        off = SurfaceVector([1.0, 2.0 * math.e, 3.0], [0.0, 1.0, 2.0])
        assert star_rel_error(w, off, NormSpec(np.inf)) == pytest.approx(math.e, rel=1e-14)

    def test_projected_rel_error(self):
        g = Grid1D(0.0, 1.0, 3)
        w = GridFunction(g, SurfaceVector([1.0, 2.0, 3.0], [0.0, 1.0, 2.0]), 0.0)
        assert projected_rel_error(w, w.project()) == 0.0
        with pytest.raises(ZeroDivisionError):
            projected_rel_error(w, lambda x: np.zeros_like(x))

    def test_estimate_chain(self):
        prob, ref, log_g = gaussian_problem(k=60.0, dx=0.25, dt=0.2, T=4.0)
        final = run(prob, 20)
        exact_lift = ref(prob.grid.x, final.time)
        for spec in (NormSpec(2), NormSpec(np.inf)):
            lhs = projected_rel_error(final, exact_lift.project(), spec)
            assert lhs <= relative_bound(exact_lift, final.values, spec) + 1e-15


class TestCharacteristics:
    @staticmethod
    def F(x):
        # antiderivative of 1 / (2 + sin x) on (-pi, pi)
        return 2 / math.sqrt(3) * np.arctan((2 * np.tan(x / 2) + 1) / math.sqrt(3))

    @given(st.floats(-1.5, 1.5), st.floats(0.0, 0.5))
    def test_closed_form_foot(self, x, t):
        foot = characteristic_foot(lambda s: 2 + np.sin(s), np.array([x]), t)[0]
        assert abs(self.F(foot) - (self.F(x) - t)) < 1e-10

    def test_constant_speed(self):
        np.testing.assert_allclose(characteristic_foot(2.0, np.array([1.0, 3.0]), 0.5), [0.0, 2.0])

    def test_taylor_start_converges(self):
        c = lambda x: 2 + np.sin(x)  # noqa: E731
        h = lambda x: exp_lift(np.cos(np.asarray(x)) + 2j * np.asarray(x))  # noqa: E731
        exact = characteristic_solution(h, c)
        errs = []
        for n in (32, 64, 128):
            grid = Grid1D.periodic(0.0, TWO_PI, n)
            dt = 0.25 * grid.dx
            start = taylor_start(h, c, grid, dt)
            errs.append(np.max(np.abs(start.log() - exact(grid.x, -dt).log())))
        orders = np.log2(np.array(errs[:-1]) / errs[1:])
        assert np.all(orders > 1.8)
