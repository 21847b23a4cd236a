"""Tikhonov-regularized least squares over an RKHS (kernel ridge regression).

Assembles the kernel Gram matrix on the design points, solves
(G_0 + n lambda I) C = Y by a symmetric positive-definite factorization,
selects lambda by generalized cross validation, and measures or bounds
2-condition numbers of the (regularized) Gram matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from rkhs_regress.errors import FactorizationError
from rkhs_regress.estimators import RegressionSample, samples_to_arrays
from rkhs_regress.kernels import Kernel
from rkhs_regress.legendre import check_domain
from rkhs_regress.logspace import LogValue

RESIDUAL_RTOL = 1e-8
PRECISION_FLOOR = 1e-14


@dataclass(frozen=True)
class GramMatrix:
    """Dense symmetric matrix of pairwise kernel values on a design."""

    entries: np.ndarray
    design: np.ndarray


@dataclass(frozen=True)
class KrrModel:
    """Fitted Tikhonov estimator: x -> sum_i coefficients[i] K(design[i], x)."""

    kernel: Kernel
    design: np.ndarray
    lam: float
    coefficients: np.ndarray

    def predict(self, xs, strict: bool = True) -> np.ndarray:
        pts = np.atleast_1d(check_domain(xs, strict))
        return self.kernel.pairwise(pts, self.design) @ self.coefficients

    def error_quad_nodes(self) -> int:
        return self.kernel.error_quad_nodes()


@dataclass(frozen=True)
class ConditionReport:
    """Measured 2-condition number of a symmetric matrix.

    ``precision_floor_hit`` flags a smallest eigenvalue magnitude below
    1e-14 of the largest: the eigensolve has bottomed out on double
    precision and ``kappa2_measured`` is then only a lower bound on the
    true condition number. ``kappa2_upper_bound`` is attached by callers
    that know the matrix's (c, n, lambda) provenance.
    """

    kappa2_measured: float
    precision_floor_hit: bool
    lambda_max: float
    lambda_min: float
    kappa2_upper_bound: float | None = None


def build_gram(kernel: Kernel, design) -> GramMatrix:
    """Gram matrix [K(x_i, x_j)] built from one triangle (exactly symmetric)."""
    xs = np.atleast_1d(check_domain(design))
    if xs.size < 1:
        raise ValueError("design must contain at least one point")
    P = kernel.pairwise(xs, xs)
    G = np.triu(P) + np.triu(P, 1).T
    return GramMatrix(entries=G, design=xs)


def fit_krr(kernel: Kernel, samples: Sequence[RegressionSample], lam: float) -> KrrModel:
    """Solve (G_0 + n lambda I) C = Y and return the fitted model.

    The regularized matrix is symmetric positive definite for lam > 0, so
    the solve is a Cholesky factorization, never an explicit inverse.

    Raises
    ------
    FactorizationError
        If the Cholesky factorization fails or the solution's residual
        exceeds 1e-8 ||Y|| (lambda too small for this n at double
        precision).
    EmptySampleError
        If no samples are given.
    """
    if not lam > 0:
        raise ValueError(f"regularization parameter must be > 0, got {lam}")
    xs, ys = samples_to_arrays(samples)
    n = xs.size
    gram = build_gram(kernel, xs)
    A = gram.entries + n * lam * np.eye(n)
    try:
        factor = cho_factor(A, lower=True)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(
            f"Cholesky factorization failed for n={n}, lambda={lam}: {exc}"
        ) from exc
    coeffs = cho_solve(factor, ys)
    resid = np.linalg.norm(A @ coeffs - ys)
    if resid > RESIDUAL_RTOL * np.linalg.norm(ys):
        raise FactorizationError(
            f"solve residual {resid:.3e} exceeds {RESIDUAL_RTOL:.0e} * ||Y||; "
            f"lambda={lam} is too small for n={n}"
        )
    return KrrModel(kernel=kernel, design=xs, lam=float(lam), coefficients=coeffs)


@dataclass(frozen=True)
class GcvSelection:
    """Outcome of a GCV grid search.

    ``scores[i]`` is the GCV objective at ``grid[i]`` (NaN where the
    factorization failed); ties in the objective resolve toward the
    smaller lambda.
    """

    lambda_gcv: float
    grid: np.ndarray
    scores: np.ndarray
    failures: list[tuple[int, str]]


def gcv_select(
    kernel: Kernel, samples: Sequence[RegressionSample], lambda_grid=None
) -> GcvSelection:
    """Pick lambda on a grid by generalized cross validation.

    The objective is ||Y - G_0 C_lambda||^2 / (n (1 - tr(G_lambda^{-1} G_0)/n)^2),
    with the trace taken from the same single factorization of G_lambda
    that produces C_lambda. The default grid is 25 log-spaced points in
    [1e-6, 1].
    """
    if lambda_grid is None:
        lambda_grid = default_lambda_grid()
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("lambda grid must be non-empty")
    if not np.all(grid > 0):
        raise ValueError("lambda grid entries must be > 0")

    xs, ys = samples_to_arrays(samples)
    n = xs.size
    G0 = build_gram(kernel, xs).entries
    scores = np.full(grid.size, np.nan)
    failures: list[tuple[int, str]] = []
    for i, lam in enumerate(grid):
        A = G0 + n * lam * np.eye(n)
        try:
            factor = cho_factor(A, lower=True)
        except np.linalg.LinAlgError as exc:
            failures.append((i, str(exc)))
            continue
        coeffs = cho_solve(factor, ys)
        resid = ys - G0 @ coeffs
        trace = np.trace(cho_solve(factor, G0))
        denom = n * (1.0 - trace / n) ** 2
        scores[i] = float(resid @ resid) / denom
    if np.all(np.isnan(scores)):
        raise FactorizationError("GCV factorization failed at every grid point")
    valid = np.flatnonzero(~np.isnan(scores))
    best = min(valid, key=lambda i: (scores[i], grid[i]))
    return GcvSelection(
        lambda_gcv=float(grid[best]), grid=grid, scores=scores, failures=failures
    )


def default_lambda_grid(num: int = 25) -> np.ndarray:
    return np.logspace(-6.0, 0.0, num)


def condition_number_2(matrix) -> ConditionReport:
    """2-condition number (max |eigenvalue| / min |eigenvalue|) of a symmetric matrix.

    Eigenvalue extremes come from a full symmetric eigendecomposition,
    adequate for the n <= a-few-hundred regime this package targets.
    """
    A = matrix.entries if isinstance(matrix, GramMatrix) else np.asarray(matrix, float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise ValueError("matrix is not symmetric")
    eigs = np.linalg.eigvalsh(A)
    mags = np.abs(eigs)
    amax = float(mags.max())
    amin = float(mags.min())
    kappa = math.inf if amin == 0.0 else amax / amin
    return ConditionReport(
        kappa2_measured=kappa,
        precision_floor_hit=amin < PRECISION_FLOOR * amax,
        lambda_max=float(eigs[-1]),
        lambda_min=float(eigs[0]),
    )


def kappa2_upper_bound(c: float, n: int, lam: float) -> float:
    """High-probability bound 1 + (1 + c/(pi sqrt(n)))/lambda on kappa2 of the
    regularized Sinc Gram matrix."""
    if not (c > 0 and n >= 1 and lam > 0):
        raise ValueError("c, n and lambda must be positive")
    return 1.0 + (1.0 + c / (math.pi * math.sqrt(n))) / lam


def kappa2_lower_bound_expectation(c: float, n: int) -> LogValue | None:
    """Lower bound (1/2) exp(2n log(2n/(e c))) on E[kappa2] of the raw Sinc Gram.

    Valid for c >= 5/2 and n > e c / 2; returns None outside that region.
    The value overflows doubles in the regimes of interest, so it is
    computed in log space and returned as a LogValue.
    """
    if not (c > 0 and n >= 1):
        raise ValueError("c and n must be positive")
    if c < 2.5 or n <= math.e * c / 2.0:
        return None
    log_value = 2.0 * n * math.log(2.0 * n / (math.e * c)) - math.log(2.0)
    return LogValue.from_log(log_value)


def lambda_opt(c: float, n: int, delta: float) -> tuple[float, bool]:
    """Theoretical optimal regularization 8 c log(4/delta) / (pi sqrt(n)).

    Returns the value together with its admissibility flag (the theory
    requires the value to be < 1, i.e. n large enough for the bandwidth).
    """
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not (c > 0 and n >= 1):
        raise ValueError("c and n must be positive")
    value = 8.0 * c * math.log(4.0 / delta) / (math.pi * math.sqrt(n))
    return value, value < 1.0
