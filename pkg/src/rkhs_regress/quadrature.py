"""Gauss-Legendre quadrature on the interval [-1, 1].

All inner products, norms and error functionals in this package are
evaluated with these rules. An m-point rule integrates polynomials of
degree 2m - 1 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from rkhs_regress.errors import ConvergenceError

NEWTON_TOL = 1e-15
NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a Gauss-Legendre rule on [-1, 1].

    Nodes are strictly increasing in (-1, 1) and symmetric about 0;
    weights are positive and sum to 2.
    """

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.nodes.size


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Classical P_n(x) and P_n'(x) for x strictly inside (-1, 1)."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre_rule(m: int) -> QuadratureRule:
    """Build the m-point Gauss-Legendre rule.

    Nodes are the roots of the degree-m Legendre polynomial, found by
    Newton iteration started from the cosine asymptotic guesses; weights
    follow from the derivative at the converged nodes. Only the
    non-negative half is iterated and the rule is mirrored, so node
    symmetry about 0 is exact.

    Parameters
    ----------
    m : int
        Number of nodes, at least 1.

    Returns
    -------
    QuadratureRule

    Raises
    ------
    ConvergenceError
        If Newton iteration does not reach tolerance 1e-15 within 100
        iterations (does not occur for any practical m).
    """
    if m < 1:
        raise ValueError(f"node count must be >= 1, got {m}")
    if m == 1:
        return QuadratureRule(nodes=np.zeros(1), weights=np.full(1, 2.0))

    half = (m + 1) // 2
    k = np.arange(1, half + 1, dtype=float)
    x = np.cos(np.pi * (k - 0.25) / (m + 0.5))
    for _ in range(NEWTON_MAX_ITER):
        p, dp = _legendre_and_derivative(m, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) <= NEWTON_TOL:
            break
    else:
        raise ConvergenceError(
            f"Newton iteration for the {m}-point rule did not converge"
        )
    if m % 2 == 1:
        x[-1] = 0.0  # middle root of an odd-degree Legendre polynomial
    _, dp = _legendre_and_derivative(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    n_pos = m // 2  # x[:n_pos] are the strictly positive roots, descending
    nodes = np.concatenate([-x[:n_pos], x[n_pos:], x[:n_pos][::-1]])
    weights = np.concatenate([w[:n_pos], w[n_pos:], w[:n_pos][::-1]])
    return QuadratureRule(nodes=nodes, weights=weights)


def integrate(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]) -> float:
    """Approximate the integral of f over [-1, 1].

    ``f`` must accept an ndarray of evaluation points and broadcast over it.
    """
    vals = np.broadcast_to(np.asarray(f(rule.nodes), dtype=float), rule.nodes.shape)
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand returned non-finite values at quadrature nodes")
    return float(rule.weights @ vals)


def l2_distance(
    rule: QuadratureRule,
    f: Callable[[np.ndarray], np.ndarray],
    g: Callable[[np.ndarray], np.ndarray],
) -> float:
    """L2([-1, 1]) distance between f and g under the given rule."""
    df = np.broadcast_to(
        np.asarray(f(rule.nodes), dtype=float) - np.asarray(g(rule.nodes), dtype=float),
        rule.nodes.shape,
    )
    if not np.all(np.isfinite(df)):
        raise ValueError("integrand returned non-finite values at quadrature nodes")
    return float(np.sqrt(rule.weights @ (df * df)))
