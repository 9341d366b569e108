"""Deltoid-region polynomials, their walk expansion, and momentum iterations."""

from ._kernels import backend
from .iterate import (
    BreakdownError,
    IterationTrace,
    MomentumConfig,
    augmented_apply,
    chebyshev_momentum,
    deltoid_momentum,
    dynamic_deltoid,
    power_method,
    rate_of_rho,
    relative_error,
    seeded_unit_vector,
)
from .matrices import (
    CsrMatrix,
    DenseMatrix,
    EigenpairResult,
    NoConvergenceWarning,
    barbell_matrix,
    load_matrix_text,
    reference_eigenpair,
    save_matrix_text,
    toy_matrix,
)
from .poly import (
    CubicSolution,
    DeltoidRegion,
    GridSpec,
    ScaledComplex,
    cubic_roots_general,
    cubic_solution_trig,
    eval_P,
    eval_P_scaled,
    eval_P_sequence,
    gamma_point,
    gamma_samples,
    growth_lower_bound,
    in_deltoid,
    raster_magnitude,
    sample_interior,
)
from .walk import (
    BetaCoefficients,
    WalkDistribution,
    approx_monomial,
    beta_coeffs,
    simulate_walk,
    step_distribution,
    tail_bound,
    walk_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "BetaCoefficients",
    "BreakdownError",
    "CsrMatrix",
    "CubicSolution",
    "DeltoidRegion",
    "DenseMatrix",
    "EigenpairResult",
    "GridSpec",
    "IterationTrace",
    "MomentumConfig",
    "NoConvergenceWarning",
    "ScaledComplex",
    "WalkDistribution",
    "approx_monomial",
    "augmented_apply",
    "backend",
    "barbell_matrix",
    "beta_coeffs",
    "chebyshev_momentum",
    "cubic_roots_general",
    "cubic_solution_trig",
    "deltoid_momentum",
    "dynamic_deltoid",
    "eval_P",
    "eval_P_scaled",
    "eval_P_sequence",
    "gamma_point",
    "gamma_samples",
    "growth_lower_bound",
    "in_deltoid",
    "load_matrix_text",
    "power_method",
    "raster_magnitude",
    "rate_of_rho",
    "reference_eigenpair",
    "relative_error",
    "sample_interior",
    "save_matrix_text",
    "seeded_unit_vector",
    "simulate_walk",
    "step_distribution",
    "tail_bound",
    "toy_matrix",
    "walk_distribution",
]
