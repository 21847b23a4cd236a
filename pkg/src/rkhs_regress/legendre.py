"""Orthonormal Legendre polynomials and their Christoffel-Darboux kernel.

The orthonormal polynomials are P~_n = sqrt(n + 1/2) * P_n with P_n the
classical Legendre polynomial, so that the family is an orthonormal basis
of L2([-1, 1]). Evaluation always goes through the stable three-term
recurrence on the classical polynomials with per-degree normalization;
Rodrigues differentiation is never used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rkhs_regress.errors import DomainError, InsufficientQuadratureError
from rkhs_regress.quadrature import QuadratureRule, gauss_legendre_rule


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError(f"polynomial degree must be >= 0, got {n}")


def check_domain(x, strict: bool = True) -> np.ndarray:
    """Validate that all points lie in [-1, 1]; return them as an array.

    With ``strict=False`` out-of-range points are allowed (silent
    extrapolation).
    """
    arr = np.asarray(x, dtype=float)
    if strict and arr.size and (arr.min() < -1.0 or arr.max() > 1.0):
        bad = arr[(arr < -1.0) | (arr > 1.0)].flat[0]
        raise DomainError(f"point {bad!r} lies outside [-1, 1]")
    return arr


def legendre_vander(x, N: int, strict: bool = True) -> np.ndarray:
    """Matrix of orthonormal Legendre values, shape (len(x), N+1).

    Entry (i, k) is P~_k(x_i). This is the shared recurrence pass behind
    every kernel and estimator sum in the package.
    """
    _check_degree(N)
    xv = np.atleast_1d(check_domain(x, strict))
    V = np.empty((xv.size, N + 1))
    V[:, 0] = 1.0
    if N >= 1:
        V[:, 1] = xv
    for k in range(1, N):
        V[:, k + 1] = ((2 * k + 1) * xv * V[:, k] - k * V[:, k - 1]) / (k + 1)
    V *= np.sqrt(np.arange(N + 1) + 0.5)
    return V


def eval_all_up_to(N: int, x: float, strict: bool = True) -> np.ndarray:
    """Vector [P~_0(x), ..., P~_N(x)] from one recurrence pass."""
    return legendre_vander(float(x), N, strict)[0]


def eval_orthonormal_legendre(n: int, x: float, strict: bool = True) -> float:
    """P~_n(x) = sqrt(n + 1/2) P_n(x).

    Raises DomainError for x outside [-1, 1] unless ``strict=False``, and
    ValueError for negative degree.
    """
    return float(eval_all_up_to(n, x, strict)[-1])


def _derivative_pair(N: int, x: float) -> tuple[float, float]:
    """(P~_N'(x), P~_{N+1}'(x)) via the standard derivative identity."""
    v = legendre_vander(float(x), N + 1, strict=False)[0] / np.sqrt(
        np.arange(N + 2) + 0.5
    )  # back to classical P_k
    if abs(x) == 1.0:
        sign = 1.0 if x > 0 else -1.0
        dN = sign ** (N + 1) * N * (N + 1) / 2.0
        dN1 = sign ** (N + 2) * (N + 1) * (N + 2) / 2.0
    else:
        denom = x * x - 1.0
        dN = N * (x * v[N] - v[N - 1]) / denom if N >= 1 else 0.0
        dN1 = (N + 1) * (x * v[N + 1] - v[N]) / denom
    return (np.sqrt(N + 0.5) * dN, np.sqrt(N + 1.5) * dN1)


def christoffel_darboux(N: int, x: float, y: float, strict: bool = True) -> float:
    """Kernel K_N(x, y) = sum_{j=0}^{N} P~_j(x) P~_j(y), by direct summation.

    The direct sum costs O(N), is exactly symmetric in (x, y), and has no
    cancellation near x = y; it is the form used everywhere in the
    package. The closed ratio form is available separately for
    cross-validation.
    """
    vx = eval_all_up_to(N, x, strict)
    vy = eval_all_up_to(N, y, strict)
    return float(vx @ vy)


def christoffel_darboux_ratio(N: int, x: float, y: float, strict: bool = True) -> float:
    """K_N(x, y) through its closed two-term ratio form.

    For x != y this is
    (N+1)/(sqrt(2N+1) sqrt(2N+3)) * (P~_{N+1}(x) P~_N(y) - P~_N(x) P~_{N+1}(y)) / (x - y),
    and on the diagonal the derivative form
    (N+1)/(sqrt(2N+1) sqrt(2N+3)) * (P~_{N+1}'(x) P~_N(x) - P~_N'(x) P~_{N+1}(x)).
    Provided for validation against the direct sum; it cancels badly for
    x near y and is not used in any hot path.
    """
    _check_degree(N)
    check_domain([x, y], strict)
    scale = (N + 1) / (np.sqrt(2 * N + 1.0) * np.sqrt(2 * N + 3.0))
    if x == y:
        dN, dN1 = _derivative_pair(N, x)
        v = eval_all_up_to(N + 1, x, strict)
        return float(scale * (dN1 * v[N] - dN * v[N + 1]))
    vx = eval_all_up_to(N + 1, x, strict)
    vy = eval_all_up_to(N + 1, y, strict)
    return float(scale * (vx[N + 1] * vy[N] - vx[N] * vy[N + 1]) / (x - y))


@dataclass(frozen=True)
class ProjectionCoefficients:
    """Coefficients of the orthogonal projection onto span(P~_0..P~_N).

    ``coeffs[k]`` approximates the inner product of the projected function
    with P~_k; evaluation reconstructs the degree-N polynomial.
    """

    degree: int
    coeffs: np.ndarray

    def evaluate(self, x, strict: bool = True) -> np.ndarray:
        return legendre_vander(x, self.degree, strict) @ self.coeffs

    def l2_norm(self) -> float:
        """L2([-1,1]) norm of the polynomial (Parseval)."""
        return float(np.linalg.norm(self.coeffs))


def project_function(
    f, N: int, rule: QuadratureRule | None = None
) -> ProjectionCoefficients:
    """Exact (quadrature) projection of a function onto degrees 0..N.

    Parameters
    ----------
    f : callable
        Vectorized function on [-1, 1].
    N : int
        Projection degree.
    rule : QuadratureRule, optional
        Defaults to max(64, N+5) nodes, which is exact for polynomial
        integrands of degree <= 2N with margin for non-polynomial f.

    Raises
    ------
    InsufficientQuadratureError
        If the supplied rule has fewer than N+1 nodes.
    """
    _check_degree(N)
    if rule is None:
        rule = gauss_legendre_rule(max(64, N + 5))
    if rule.size < N + 1:
        raise InsufficientQuadratureError(
            f"projection to degree {N} needs at least {N + 1} nodes, "
            f"rule has {rule.size}"
        )
    V = legendre_vander(rule.nodes, N)
    fv = np.broadcast_to(np.asarray(f(rule.nodes), dtype=float), rule.nodes.shape)
    return ProjectionCoefficients(degree=N, coeffs=V.T @ (rule.weights * fv))
