"""
Multiplicative (geometric) calculus on the Riemann surface e^C and a
finite-quotient leapfrog solver for the advection equation.
"""
from .surface import (
    ClosurePoint,
    SurfacePoint,
    SurfaceRangeError,
    div,
    embed,
    exp_lift,
    log_surface,
    mul,
    pow_complex,
    pow_surface,
    principal_arg,
    project,
    star_abs,
)
from .mvector import (
    NormSpec,
    SurfaceVector,
    apply_log_matrix,
    embed_vec,
    ones,
    project_vec,
    relative_bound,
    scalar_pow,
    star_inner,
    star_norm,
    vec_div,
    vec_mul,
)
from .calculus import (
    QuotientStencil,
    check_rule,
    finite_quotient,
    projected_log_derivative,
    star_derivative_oracle,
    star_distance,
    taylor_remainder,
)
from .bessel import bessel_j, bessel_y
from .lifting import (
    ComplexSamples1D,
    LiftedSamples1D,
    LiftingError,
    lift_hankel,
    lift_samples,
    y_zeros,
)
from .advection import (
    AdvectionProblem,
    BoundaryRule,
    CFLError,
    Grid1D,
    GridFunction,
    advance,
    characteristic_foot,
    characteristic_solution,
    classical_leapfrog,
    leapfrog_step,
    projected_rel_error,
    run,
    star_rel_error,
    taylor_start,
)
from .interp import ExpPolynomial, eval_exp_poly, fit_exp_poly, truncated_log_lift

__version__ = "0.1.0"
