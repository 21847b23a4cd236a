"""Kernel-based nonparametric regression on [-1, 1].

Three estimators of a regression function from noisy samples: the
empirical Legendre (Christoffel-Darboux) projection, the empirical Sinc
projection, and Tikhonov-regularized least squares over the kernel's
RKHS; plus exact L2 error measurement, closed-form theoretical bounds,
and a seeded Monte-Carlo benchmark harness with a CLI front end.
"""

__version__ = "0.1.0"

from rkhs_regress.bounds import (
    BoundInputs,
    lemma1_lhs_rhs,
    sinc_eigenvalue_bounds,
    theorem1_bound_bandlimited,
    theorem1_bound_sobolev,
    theorem2_bound,
)
from rkhs_regress.estimators import (
    LegendreProjectionModel,
    RegressionSample,
    SincProjectionModel,
    evaluate_model,
    fit_legendre_projection,
    fit_sinc_projection,
    l2_error,
)
from rkhs_regress.kernels import LegendreKernel, SincKernel
from rkhs_regress.krr import (
    ConditionReport,
    GramMatrix,
    KrrModel,
    build_gram,
    condition_number_2,
    fit_krr,
    gcv_select,
    kappa2_lower_bound_expectation,
    kappa2_upper_bound,
    lambda_opt,
)
from rkhs_regress.legendre import (
    ProjectionCoefficients,
    christoffel_darboux,
    christoffel_darboux_ratio,
    eval_all_up_to,
    eval_orthonormal_legendre,
    project_function,
)
from rkhs_regress.quadrature import QuadratureRule, gauss_legendre_rule, integrate, l2_distance
from rkhs_regress.sinc import eval_sinc_kernel, kernel_row_norm, sinc_diagonal
from rkhs_regress.testbed import (
    BandlimitedTruthSpec,
    BrownianFunctionSpec,
    BrownianTruthSpec,
    ExperimentConfig,
    ExperimentReport,
    KrrSpec,
    LegendreProjectionSpec,
    NoiseSpec,
    SincProjectionSpec,
    generate_samples,
    run_experiment,
    sample_uniform_design,
    substream,
    truth_bandlimited_example1,
    truth_brownian,
)

__all__ = [name for name in dir() if not name.startswith("_")]
