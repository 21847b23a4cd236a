"""Synthetic data generation and replicated Monte-Carlo experiments.

Randomness discipline: every random draw comes from a Philox
counter-based generator keyed by ``SeedSequence(seed, spawn_key=path)``,
where the path encodes (replication, purpose). Streams are therefore
independent, reproducible across platforms, and independent of execution
order, which makes replicated experiments bit-deterministic under any
thread count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from rkhs_regress.estimators import (
    RegressionSample,
    fit_legendre_projection,
    fit_sinc_projection,
    l2_error,
    samples_from_arrays,
)
from rkhs_regress.kernels import LegendreKernel, SincKernel
from rkhs_regress.krr import fit_krr, gcv_select
from rkhs_regress.quadrature import gauss_legendre_rule
from rkhs_regress.sinc import min_oscillation_nodes

# Substream purposes: design points, noise draws, truth-function coefficients.
PURPOSE_DESIGN = 0
PURPOSE_NOISE = 1
PURPOSE_TRUTH = 2


def substream(seed: int, *path: int) -> np.random.Generator:
    """Independent generator for (seed, *path), stable across platforms."""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class NoiseSpec:
    """Additive Gaussian noise scale: eta = sigma * Z with Z standard normal."""

    sigma: float = 0.1

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"noise scale must be >= 0, got {self.sigma}")


def sample_uniform_design(n: int, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. uniform[-1, 1] design points from the given stream."""
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    return rng.uniform(-1.0, 1.0, n)


def truth_bandlimited_example1(x):
    """sin(20 x) / (20 x) with value 1 at the removable singularity x = 0."""
    return np.sinc(20.0 * np.asarray(x, dtype=float) / np.pi)


@dataclass(frozen=True)
class BrownianFunctionSpec:
    """A realized random cosine series sum_k (X_k / k^s) cos(k pi x).

    ``coefficients`` holds the realized standard-normal draws X_1..X_K.
    The infinite series is truncated at K terms; see
    ``truncation_tail_estimate`` for the size of what is dropped.
    """

    s: float
    truncation: int
    coefficients: np.ndarray

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError(f"smoothness must be > 0, got {self.s}")
        if self.truncation < 1 or self.coefficients.shape != (self.truncation,):
            raise ValueError("coefficients must have exactly `truncation` entries")

    def __call__(self, x):
        return truth_brownian(self, x)

    def series_coefficients(self) -> np.ndarray:
        """a_k = X_k / k^s for k = 1..K."""
        k = np.arange(1, self.truncation + 1, dtype=float)
        return self.coefficients / k**self.s

    def l2_norm(self) -> float:
        # the cos(k pi x) family is orthonormal in L2([-1, 1]) for k >= 1
        return float(np.linalg.norm(self.series_coefficients()))


def draw_brownian_spec(
    s: float, truncation: int, rng: np.random.Generator
) -> BrownianFunctionSpec:
    return BrownianFunctionSpec(
        s=float(s), truncation=int(truncation), coefficients=rng.standard_normal(truncation)
    )


def truth_brownian(spec: BrownianFunctionSpec, x):
    """Evaluate the realized series at x (scalar or array)."""
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    k = np.arange(1, spec.truncation + 1, dtype=float)
    out = np.cos(np.outer(xv, k * np.pi)) @ spec.series_coefficients()
    return out if np.ndim(x) else float(out[0])


def truncation_tail_estimate(spec: BrownianFunctionSpec) -> float:
    """Estimate of the L2 norm of the dropped series tail.

    Uses (sum_{k>K} k^{-2s})^{1/2} * max_k |X_k| with the tail sum bounded
    by its integral K^{1-2s}/(2s-1) (requires s > 1/2) and the realized
    coefficient maximum standing in for the unrealized tail draws.
    """
    if spec.s <= 0.5:
        raise ValueError("tail estimate requires s > 1/2")
    tail_sq = spec.truncation ** (1.0 - 2.0 * spec.s) / (2.0 * spec.s - 1.0)
    return math.sqrt(tail_sq) * float(np.max(np.abs(spec.coefficients)))


# --- experiment configuration -------------------------------------------------


@dataclass(frozen=True)
class LegendreProjectionSpec:
    degree: int


@dataclass(frozen=True)
class SincProjectionSpec:
    bandwidth: float


@dataclass(frozen=True)
class KrrSpec:
    """Tikhonov estimator: fixed lambda, or a grid searched by GCV per fit."""

    kernel: str  # "sinc" or "legendre"
    param: float  # bandwidth c or degree N
    lam: float | None = None
    lambda_grid: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kernel not in ("sinc", "legendre"):
            raise ValueError(f"unknown kernel {self.kernel!r}")
        if (self.lam is None) == (self.lambda_grid is None):
            raise ValueError("exactly one of lam and lambda_grid must be set")

    def make_kernel(self):
        if self.kernel == "sinc":
            return SincKernel(bandwidth=float(self.param))
        return LegendreKernel(degree=int(self.param))


EstimatorSpec = Union[LegendreProjectionSpec, SincProjectionSpec, KrrSpec]


@dataclass(frozen=True)
class BandlimitedTruthSpec:
    """The bandwidth-20 test function sin(20x)/(20x)."""


@dataclass(frozen=True)
class BrownianTruthSpec:
    """Random cosine-series truth of smoothness s.

    With ``redraw_per_replication`` (the default) a fresh realization is
    drawn for every replication; otherwise one realization, derived from
    the seed alone, is shared by all replications.
    """

    s: float
    truncation: int = 2000
    redraw_per_replication: bool = True


TruthSpec = Union[BandlimitedTruthSpec, BrownianTruthSpec]


@dataclass(frozen=True)
class ExperimentConfig:
    estimator: EstimatorSpec
    truth: TruthSpec
    n: int
    replications: int
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    seed: int = 0
    quad_nodes: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.replications < 1:
            raise ValueError("n and replications must be >= 1")


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregated replication results; mean is the arithmetic mean of errors."""

    config: ExperimentConfig
    errors: np.ndarray
    mean_l2_error: float
    std_l2_error: float
    selected_lambdas: np.ndarray | None
    wall_time_s: float


def realize_truth(spec: TruthSpec, seed: int, replication: int) -> Callable:
    if isinstance(spec, BandlimitedTruthSpec):
        return truth_bandlimited_example1
    rep_key = replication if spec.redraw_per_replication else 0
    rng = substream(seed, rep_key, PURPOSE_TRUTH)
    return draw_brownian_spec(spec.s, spec.truncation, rng)


def generate_samples(
    truth: Callable, n: int, noise: NoiseSpec, seed: int, replication: int = 0
) -> list[RegressionSample]:
    """Draw one sample set y_i = truth(x_i) + sigma z_i.

    Design points and noise come from disjoint substreams of
    (seed, replication), so either can be varied without disturbing the
    other.
    """
    xs = sample_uniform_design(n, substream(seed, replication, PURPOSE_DESIGN))
    z = substream(seed, replication, PURPOSE_NOISE).standard_normal(n)
    ys = np.asarray(truth(xs), dtype=float) + noise.sigma * z
    return samples_from_arrays(xs, ys)


def required_quad_nodes(estimator: EstimatorSpec) -> int:
    """Node count resolving the most oscillatory factor of the estimator."""
    if isinstance(estimator, LegendreProjectionSpec):
        return max(128, 2 * estimator.degree + 2)
    if isinstance(estimator, SincProjectionSpec):
        return max(128, min_oscillation_nodes(estimator.bandwidth))
    return estimator.make_kernel().error_quad_nodes()


def _fit(estimator: EstimatorSpec, samples) -> tuple[object, float | None]:
    """Fit the configured estimator; returns (model, selected lambda or None)."""
    if isinstance(estimator, LegendreProjectionSpec):
        return fit_legendre_projection(samples, estimator.degree), None
    if isinstance(estimator, SincProjectionSpec):
        return fit_sinc_projection(samples, estimator.bandwidth), None
    kernel = estimator.make_kernel()
    if estimator.lambda_grid is not None:
        lam = gcv_select(kernel, samples, np.asarray(estimator.lambda_grid)).lambda_gcv
    else:
        lam = estimator.lam
    return fit_krr(kernel, samples, lam), lam


def run_replication(config: ExperimentConfig, replication: int, rule) -> tuple[float, float | None]:
    truth = realize_truth(config.truth, config.seed, replication)
    samples = generate_samples(truth, config.n, config.noise, config.seed, replication)
    try:
        model, lam = _fit(config.estimator, samples)
    except Exception as exc:
        raise RuntimeError(f"replication {replication} failed: {exc}") from exc
    return l2_error(model, truth, rule), lam


def run_experiment(config: ExperimentConfig, threads: int = 1) -> ExperimentReport:
    """Run all replications and aggregate.

    Replications are independent work units keyed by their index, so the
    report is identical for any ``threads`` value.
    """
    started = time.perf_counter()
    nodes = config.quad_nodes or required_quad_nodes(config.estimator)
    rule = gauss_legendre_rule(nodes)
    reps = range(config.replications)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda r: run_replication(config, r, rule), reps))
    else:
        results = [run_replication(config, r, rule) for r in reps]
    errors = np.asarray([e for e, _ in results])
    lams = None
    if isinstance(config.estimator, KrrSpec):
        lams = np.asarray([l for _, l in results], dtype=float)
    return ExperimentReport(
        config=config,
        errors=errors,
        mean_l2_error=float(np.mean(errors)),
        std_l2_error=float(np.std(errors, ddof=1)) if errors.size > 1 else 0.0,
        selected_lambdas=lams,
        wall_time_s=time.perf_counter() - started,
    )
