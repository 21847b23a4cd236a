"""Closed-form theoretical bounds for side-by-side reporting.

Evaluates every closed-form quantity of the error analysis: the
two-regime bounds for the Legendre projection estimator, the three-term
bound for the Sinc projection estimator, the factorial-sum inequality
behind the Sinc plunge term, and the non-asymptotic eigenvalue decay
envelopes of the Sinc integral operator. Exponential/factorial
expressions are accumulated in log space with a single exponentiation at
the end; the regimes of interest overflow doubles otherwise.

Bounds that are only valid inside a stated parameter region return None
outside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp


@dataclass(frozen=True)
class BoundInputs:
    """Everything a bound evaluator may need about a regression problem.

    Only the fields the evaluated bound actually uses must be set;
    evaluators raise on missing fields. ``sobolev_norm`` is the
    smoothness-class norm appropriate to the bound in question: the
    H^s(I) norm (or a proxy) for the Legendre bound, and the weighted
    PSWF-based norm, necessarily caller-supplied, for the Sinc bound.
    ``eps_noise`` is the realized max |noise| of the sample at hand.
    The uniform constants of the theory are never quantified; they
    default to 1 and are caller-adjustable.
    """

    n: int | None = None
    degree: int | None = None
    bandwidth: float | None = None
    delta: float | None = None
    s: float | None = None
    sup_norm_f: float | None = None
    l2_norm_f: float | None = None
    sobolev_norm: float | None = None
    bandlimited_l2_norm: float | None = None
    eps_noise: float = 0.0
    c1: float = 1.0
    c2: float = 1.0


@dataclass(frozen=True)
class TwoTermBound:
    total: float
    sampling_term: float
    approximation_term: float


@dataclass(frozen=True)
class ThreeTermBound:
    total: float
    sampling_term: float
    plunge_term: float
    smoothness_term: float


def _require(inp: BoundInputs, *fields: str) -> None:
    missing = [f for f in fields if getattr(inp, f) is None]
    if missing:
        raise ValueError(f"bound inputs missing fields: {', '.join(missing)}")


def _check_delta(delta: float) -> None:
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")


def m_f_legendre(inp: BoundInputs) -> float:
    """Pinelis envelope 2(N+1)(||f||_inf + eps) + sqrt(2) ||f|| for degree N."""
    _require(inp, "degree", "sup_norm_f", "l2_norm_f")
    return 2.0 * (inp.degree + 1) * (inp.sup_norm_f + inp.eps_noise) + math.sqrt(
        2.0
    ) * inp.l2_norm_f


def m_f_sinc(inp: BoundInputs) -> float:
    """Pinelis envelope sqrt(2c/pi) (2||f||_inf + 2 eps + sqrt(2)||f||)."""
    _require(inp, "bandwidth", "sup_norm_f", "l2_norm_f")
    return math.sqrt(2.0 * inp.bandwidth / math.pi) * (
        2.0 * inp.sup_norm_f + 2.0 * inp.eps_noise + math.sqrt(2.0) * inp.l2_norm_f
    )


def _sampling_term(m_f: float, n: int, delta: float) -> float:
    return m_f / math.sqrt(n) * math.sqrt(math.log(2.0 / delta))


def theorem1_bound_sobolev(inp: BoundInputs) -> TwoTermBound:
    """Legendre-estimator bound for f in H^s: sampling + c1 N^{-s} ||f||_{H^s}.

    The two terms are reported separately; tuning N to balance them is
    what fixes the estimator's convergence rate.
    """
    _require(inp, "degree", "n", "delta", "s", "sobolev_norm")
    _check_delta(inp.delta)
    if inp.degree < 1:
        raise ValueError("the Sobolev bound requires degree >= 1")
    sampling = _sampling_term(m_f_legendre(inp), inp.n, inp.delta)
    approx = inp.c1 * inp.degree ** (-inp.s) * inp.sobolev_norm
    return TwoTermBound(sampling + approx, sampling, approx)


def theorem1_bound_bandlimited(inp: BoundInputs) -> TwoTermBound | None:
    """Legendre-estimator bound for f the restriction of a c-bandlimited function.

    Valid for N >= e c / 2; returns None below that. The approximation
    factor exp(-(N+2) log((2N+2)/(e c))) is evaluated from its exponent.
    """
    _require(inp, "degree", "n", "delta", "bandwidth", "bandlimited_l2_norm")
    _check_delta(inp.delta)
    if inp.degree < math.e * inp.bandwidth / 2.0:
        return None
    sampling = _sampling_term(m_f_legendre(inp), inp.n, inp.delta)
    exponent = -(inp.degree + 2) * math.log(
        (2.0 * inp.degree + 2.0) / (math.e * inp.bandwidth)
    )
    approx = inp.c2 * math.exp(exponent) * inp.bandlimited_l2_norm
    return TwoTermBound(sampling + approx, sampling, approx)


def theorem2_bound(inp: BoundInputs) -> ThreeTermBound | None:
    """Sinc-estimator bound: sampling + plunge + smoothness terms.

    Valid for bandwidth c >= 6; returns None below that. The plunge term
    (7/sqrt(6)) (e^2/6)^{-[c/3]} ||f|| tracks the eigenvalue plunge of
    the Sinc operator; the smoothness term [c/3]^{-s} uses the weighted
    Sobolev norm supplied by the caller.
    """
    _require(inp, "bandwidth", "n", "delta", "s", "l2_norm_f", "sobolev_norm")
    _check_delta(inp.delta)
    if inp.bandwidth < 6.0:
        return None
    c3 = math.floor(inp.bandwidth / 3.0)
    sampling = _sampling_term(m_f_sinc(inp), inp.n, inp.delta)
    plunge = (
        7.0
        / math.sqrt(6.0)
        * math.exp(-c3 * math.log(math.e**2 / 6.0))
        * inp.l2_norm_f
    )
    smoothness = c3 ** (-inp.s) * inp.sobolev_norm
    return ThreeTermBound(sampling + plunge + smoothness, sampling, plunge, smoothness)


def lemma1_lhs_rhs(c: float, N: int) -> tuple[float, float]:
    """Both sides of the factorial-sum inequality

        e^{-c}/sqrt(c) * sum_{k=0}^{N} (2c)^k / k!  <=  (1/sqrt(6)) (e^2/6)^{-c/3},

    valid for c >= 6 and N + 1 <= c/3. The left side is accumulated in
    log space (log-sum-exp over k log(2c) - log k!).
    """
    if c < 6.0:
        raise ValueError(f"the inequality requires c >= 6, got {c}")
    if N < 0 or N + 1 > c / 3.0:
        raise ValueError(f"the inequality requires 0 <= N + 1 <= c/3, got N={N}, c={c}")
    k = np.arange(N + 1)
    log_terms = k * math.log(2.0 * c) - gammaln(k + 1.0)
    log_lhs = float(logsumexp(log_terms)) - c - 0.5 * math.log(c)
    lhs = math.exp(log_lhs)
    rhs = math.exp(-(c / 3.0) * math.log(math.e**2 / 6.0)) / math.sqrt(6.0)
    return lhs, rhs


def sinc_eigenvalue_bounds(c: float, n: int) -> tuple[float | None, float | None]:
    """Non-asymptotic envelopes for the n-th eigenvalue of the Sinc operator.

    Returns ``(lower, upper)`` where the lower bound
    1 - (7/sqrt(c)) (2c)^n e^{-c} / n! applies for 0 <= n < c/2.7 and the
    upper bound exp(-(2n+1) log(2(n+1)/(e c))) for n >= max(e c / 2, 2);
    a side outside its region is None. Together they express the plateau
    near 1 followed by super-exponential decay.
    """
    if not (c > 0 and math.isfinite(c)):
        raise ValueError(f"bandwidth must be positive and finite, got {c}")
    if n < 0:
        raise ValueError(f"eigenvalue index must be >= 0, got {n}")
    lower = None
    if n < c / 2.7:
        log_term = n * math.log(2.0 * c) - float(gammaln(n + 1.0)) - c
        lower = 1.0 - 7.0 / math.sqrt(c) * math.exp(log_term)
    upper = None
    if n >= max(math.e * c / 2.0, 2.0):
        upper = math.exp(-(2 * n + 1) * math.log(2.0 * (n + 1) / (math.e * c)))
    return lower, upper


def sobolev_norm_proxy(coefficients: np.ndarray, s: float) -> float:
    """Truncated H^s-norm surrogate for a cosine series sum_k a_k cos(k pi x).

    Computes sqrt(sum_k (1 + (k pi)^2)^s a_k^2) over the realized
    truncation with a_k = coefficients[k-1] / k^s. This is a reporting
    proxy only: it is not the weighted PSWF-based norm of the Sinc-side
    theory, and it grows with the truncation length for this series.
    """
    a = np.asarray(coefficients, dtype=float)
    k = np.arange(1, a.size + 1, dtype=float)
    terms = (1.0 + (k * np.pi) ** 2) ** s * (a / k**s) ** 2
    return float(np.sqrt(terms.sum()))
