"""Empirical projection estimators fit from noisy samples.

Both estimators are plug-in Monte-Carlo versions of kernel projections:
given samples (x_i, y_i) they evaluate (2/n) sum_i y_i K(x_i, .), where K
is either the Christoffel-Darboux kernel of degree N or the Sinc kernel
of bandwidth c. The factor 2 is the reciprocal of the uniform design
density on [-1, 1].
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from rkhs_regress.errors import EmptySampleError, QuadratureResolutionWarning
from rkhs_regress.legendre import check_domain, legendre_vander
from rkhs_regress.quadrature import QuadratureRule, gauss_legendre_rule
from rkhs_regress.sinc import check_bandwidth, eval_sinc_kernel, min_oscillation_nodes


@dataclass(frozen=True)
class RegressionSample:
    """One observation (x, y) with x in [-1, 1] and finite response y."""

    x: float
    y: float


def samples_to_arrays(
    samples: Sequence[RegressionSample],
) -> tuple[np.ndarray, np.ndarray]:
    """Split samples into validated x and y arrays."""
    if len(samples) == 0:
        raise EmptySampleError("at least one sample is required")
    xs = check_domain([s.x for s in samples])
    ys = np.asarray([s.y for s in samples], dtype=float)
    if not np.all(np.isfinite(ys)):
        raise ValueError("sample responses must be finite")
    return xs, ys


def samples_from_arrays(xs, ys) -> list[RegressionSample]:
    return [RegressionSample(float(x), float(y)) for x, y in zip(xs, ys)]


@dataclass(frozen=True)
class LegendreProjectionModel:
    """Fitted Legendre projection estimator, stored in coefficient form.

    ``coeffs[k] = (2/n) sum_i y_i P~_k(x_i)``, so evaluation costs O(N)
    per point independent of the sample size; by linearity this equals the
    defining double sum over samples and degrees.
    """

    degree: int
    coeffs: np.ndarray

    def predict(self, xs, strict: bool = True) -> np.ndarray:
        return legendre_vander(xs, self.degree, strict) @ self.coeffs

    def error_quad_nodes(self) -> int:
        return max(128, 2 * self.degree + 2)

    def l2_norm(self) -> float:
        """L2([-1,1]) norm of the fitted polynomial (Parseval)."""
        return float(np.linalg.norm(self.coeffs))


@dataclass(frozen=True)
class SincProjectionModel:
    """Fitted Sinc projection estimator.

    The samples are retained verbatim: the Sinc estimator has no finite
    coefficient representation, so evaluation is the exact O(n)-per-point
    sum (2/n) sum_i y_i K_c(x, x_i).
    """

    bandwidth: float
    samples: tuple[RegressionSample, ...]

    def predict(self, xs, strict: bool = True) -> np.ndarray:
        design = np.asarray([s.x for s in self.samples])
        ys = np.asarray([s.y for s in self.samples])
        pts = np.atleast_1d(check_domain(xs, strict))
        K = eval_sinc_kernel(self.bandwidth, pts[:, None], design[None, :])
        return (2.0 / len(self.samples)) * (K @ ys)

    def error_quad_nodes(self) -> int:
        return max(128, min_oscillation_nodes(self.bandwidth))


def fit_legendre_projection(
    samples: Sequence[RegressionSample], N: int
) -> LegendreProjectionModel:
    """Fit the degree-N Legendre projection estimator."""
    xs, ys = samples_to_arrays(samples)
    V = legendre_vander(xs, N)
    coeffs = (2.0 / xs.size) * (V.T @ ys)
    return LegendreProjectionModel(degree=N, coeffs=coeffs)


def fit_sinc_projection(
    samples: Sequence[RegressionSample], c: float
) -> SincProjectionModel:
    """Fit the Sinc projection estimator of bandwidth c."""
    check_bandwidth(c)
    samples_to_arrays(samples)  # validation only
    return SincProjectionModel(bandwidth=float(c), samples=tuple(samples))


def evaluate_model(model, xs, strict: bool = True) -> np.ndarray:
    """Pointwise values of any fitted model (projection or Tikhonov)."""
    return np.asarray(model.predict(np.atleast_1d(np.asarray(xs, dtype=float)), strict))


def l2_error(
    model,
    truth: Callable[[np.ndarray], np.ndarray],
    rule: QuadratureRule | None = None,
) -> float:
    """L2([-1, 1]) distance between a fitted model and the true function.

    Without an explicit rule, uses the node count that resolves the most
    oscillatory factor of the model (max(128, ceil(2c), 2N+2)); a coarser
    caller-supplied rule triggers a resolution warning.
    """
    required = model.error_quad_nodes()
    if rule is None:
        rule = gauss_legendre_rule(required)
    elif rule.size < required:
        warnings.warn(
            f"{rule.size}-node rule may under-resolve this model's L2 error; "
            f"use at least {required} nodes",
            QuadratureResolutionWarning,
            stacklevel=2,
        )
    diff = model.predict(rule.nodes) - np.broadcast_to(
        np.asarray(truth(rule.nodes), dtype=float), rule.nodes.shape
    )
    return float(np.sqrt(rule.weights @ (diff * diff)))
