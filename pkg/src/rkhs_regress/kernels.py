"""Kernel specifications shared by the estimators and the Tikhonov solver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rkhs_regress import legendre, sinc


@dataclass(frozen=True)
class SincKernel:
    """Sinc kernel of bandwidth c on [-1, 1]^2."""

    bandwidth: float

    def __post_init__(self):
        sinc.check_bandwidth(self.bandwidth)

    def __call__(self, x, y) -> np.ndarray | float:
        return sinc.eval_sinc_kernel(self.bandwidth, x, y)

    def pairwise(self, xs, ys) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        return sinc.eval_sinc_kernel(self.bandwidth, xs[:, None], ys[None, :])

    def diagonal_value(self) -> float:
        return sinc.sinc_diagonal(self.bandwidth)

    def error_quad_nodes(self) -> int:
        """Node count resolving K_c oscillation in L2-error integrands."""
        return max(128, sinc.min_oscillation_nodes(self.bandwidth))


@dataclass(frozen=True)
class LegendreKernel:
    """Christoffel-Darboux kernel of degree N on [-1, 1]^2."""

    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"kernel degree must be >= 0, got {self.degree}")

    def __call__(self, x, y) -> float:
        return legendre.christoffel_darboux(self.degree, x, y)

    def pairwise(self, xs, ys) -> np.ndarray:
        # V_x V_y^T realizes the direct sum for every pair in one pass.
        Vx = legendre.legendre_vander(xs, self.degree)
        Vy = legendre.legendre_vander(ys, self.degree)
        return Vx @ Vy.T

    def diagonal_value(self) -> float | None:
        """The diagonal K_N(x, x) is not constant; computed per point."""
        return None

    def error_quad_nodes(self) -> int:
        return max(128, 2 * self.degree + 2)


Kernel = SincKernel | LegendreKernel
