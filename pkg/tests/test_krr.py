import math

import numpy as np
import pytest
from _oracles import gcv_scores_explicit_inverse, ge_solve

from rkhs_regress.errors import FactorizationError
from rkhs_regress.estimators import RegressionSample, samples_from_arrays
from rkhs_regress.kernels import LegendreKernel, SincKernel
from rkhs_regress.krr import (
    build_gram,
    condition_number_2,
    fit_krr,
    gcv_select,
    kappa2_lower_bound_expectation,
    kappa2_upper_bound,
    lambda_opt,
)
from rkhs_regress.legendre import christoffel_darboux
from rkhs_regress.sinc import eval_sinc_kernel
from rkhs_regress.testbed import substream


def test_gram_single_point_is_diagonal():
    g = build_gram(SincKernel(20.0), [0.3])
    assert g.entries.shape == (1, 1)
    assert g.entries[0, 0] == pytest.approx(20 / math.pi, rel=1e-15)


def test_gram_two_points_symmetric_offdiagonal():
    a, b = -0.2, 0.55
    g = build_gram(SincKernel(9.0), [a, b]).entries
    expected = math.sin(9.0 * (a - b)) / (math.pi * (a - b))
    assert g[0, 1] == pytest.approx(expected, rel=1e-14)
    assert g[0, 1] == g[1, 0]


def test_gram_matches_entrywise_kernel_calls():
    xs = substream(1, 0).uniform(-1, 1, 10)
    g = build_gram(SincKernel(30.0), xs).entries
    for i in range(10):
        for j in range(10):
            assert g[i, j] == pytest.approx(
                eval_sinc_kernel(30.0, float(xs[i]), float(xs[j])), abs=1e-14
            )
    gl = build_gram(LegendreKernel(6), xs).entries
    for i in range(10):
        for j in range(10):
            assert gl[i, j] == pytest.approx(
                christoffel_darboux(6, float(xs[i]), float(xs[j])), rel=1e-12
            )
    assert np.array_equal(g, g.T)
    assert np.array_equal(gl, gl.T)


def test_fit_single_sample_closed_form():
    lam = 0.3
    model = fit_krr(SincKernel(20.0), [RegressionSample(0.4, 2.0)], lam)
    assert model.coefficients[0] == pytest.approx(2.0 / (20 / math.pi + lam), rel=1e-14)


def test_coefficients_shrink_with_large_lambda():
    rng = substream(2, 0)
    xs = rng.uniform(-1, 1, 12)
    ys = rng.standard_normal(12)
    lam = 1e6
    model = fit_krr(SincKernel(15.0), samples_from_arrays(xs, ys), lam)
    assert np.linalg.norm(model.coefficients) <= np.linalg.norm(ys) / (12 * lam)


def test_fit_matches_elimination_oracle():
    rng = substream(3, 0)
    xs = rng.uniform(-1, 1, 6)
    ys = rng.standard_normal(6)
    model = fit_krr(SincKernel(25.0), samples_from_arrays(xs, ys), 0.01)
    A = build_gram(SincKernel(25.0), xs).entries + 6 * 0.01 * np.eye(6)
    ref = ge_solve(A, ys)
    assert np.allclose(model.coefficients, ref, rtol=1e-11)


def test_residual_invariant_across_fits():
    rng = substream(4, 0)
    for trial in range(10):
        n = int(rng.integers(2, 60))
        xs = rng.uniform(-1, 1, n)
        ys = rng.standard_normal(n)
        lam = 10.0 ** rng.uniform(-5, 0)
        model = fit_krr(SincKernel(20.0), samples_from_arrays(xs, ys), lam)
        A = build_gram(SincKernel(20.0), xs).entries + n * lam * np.eye(n)
        resid = np.linalg.norm(A @ model.coefficients - ys)
        assert resid <= 1e-8 * np.linalg.norm(ys)


def test_fit_rejects_hopeless_regularization():
    xs = substream(0, 0, 0).uniform(-1, 1, 50)
    ys = np.ones(50)
    with pytest.raises(FactorizationError):
        fit_krr(SincKernel(30.0), samples_from_arrays(xs, ys), 1e-20)
    with pytest.raises(ValueError):
        fit_krr(SincKernel(30.0), samples_from_arrays(xs, ys), 0.0)


def test_weyl_floor_on_regularized_spectrum():
    lam = 1e-4
    for c in (30.0, 50.0):
        for n in (50, 75):
            xs = substream(5, int(c), n).uniform(-1, 1, n)
            G = build_gram(SincKernel(c), xs).entries
            eigs = np.linalg.eigvalsh((G + n * lam * np.eye(n)) / n)
            assert eigs[0] >= lam * (1 - 1e-8)


def test_gcv_single_grid_point():
    rng = substream(6, 0)
    xs = rng.uniform(-1, 1, 15)
    ys = rng.standard_normal(15)
    sel = gcv_select(SincKernel(10.0), samples_from_arrays(xs, ys), [0.37])
    assert sel.lambda_gcv == 0.37
    assert sel.scores.shape == (1,)


def test_gcv_matches_explicit_inverse_oracle():
    rng = substream(7, 0)
    for n in (5, 18, 30):
        xs = rng.uniform(-1, 1, n)
        ys = rng.standard_normal(n)
        grid = np.logspace(-4, 0, 9)
        sel = gcv_select(SincKernel(12.0), samples_from_arrays(xs, ys), grid)
        G0 = build_gram(SincKernel(12.0), xs).entries
        ref = gcv_scores_explicit_inverse(G0, ys, grid)
        assert np.allclose(sel.scores, ref, rtol=1e-8)
        assert sel.lambda_gcv == grid[np.argmin(ref)]


def test_gcv_is_grid_order_invariant():
    rng = substream(8, 0)
    xs = rng.uniform(-1, 1, 20)
    ys = rng.standard_normal(20)
    grid = np.logspace(-3, 0, 7)
    a = gcv_select(SincKernel(10.0), samples_from_arrays(xs, ys), grid)
    b = gcv_select(SincKernel(10.0), samples_from_arrays(xs, ys), grid[::-1])
    assert a.lambda_gcv == b.lambda_gcv


def test_gcv_skips_failing_grid_points():
    xs = substream(0, 0, 0).uniform(-1, 1, 50)
    ys = np.sin(3 * xs)
    sel = gcv_select(SincKernel(30.0), samples_from_arrays(xs, ys), [1e-20, 1e-2])
    assert sel.lambda_gcv == 1e-2
    assert len(sel.failures) == 1 and sel.failures[0][0] == 0
    assert math.isnan(sel.scores[0])
    with pytest.raises(FactorizationError):
        gcv_select(SincKernel(30.0), samples_from_arrays(xs, ys), [1e-22, 1e-20])


def test_condition_number_identity_and_diagonal():
    assert condition_number_2(np.eye(5)).kappa2_measured == pytest.approx(1.0)
    rep = condition_number_2(np.diag([4.0, 1.0]))
    assert rep.kappa2_measured == pytest.approx(4.0, rel=1e-14)
    assert not rep.precision_floor_hit
    with pytest.raises(ValueError):
        condition_number_2(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_condition_number_regularized_gram_magnitude():
    # paper regime (c=30, n=50, lambda=1e-4): measured kappa2 ~ 1.1e4, below the bound
    lam, c, n = 1e-4, 30.0, 50
    bound = kappa2_upper_bound(c, n, lam)
    vals = []
    for r in range(3):
        xs = substream(9, r).uniform(-1, 1, n)
        G = build_gram(SincKernel(c), xs).entries
        rep = condition_number_2(G + n * lam * np.eye(n))
        vals.append(rep.kappa2_measured)
        assert rep.kappa2_measured <= bound
        assert not rep.precision_floor_hit
    mean = np.mean(vals)
    assert 1.104737e4 / 2 <= mean <= 1.104737e4 * 2


def test_condition_number_monotone_in_lambda():
    xs = substream(10, 0).uniform(-1, 1, 40)
    G = build_gram(SincKernel(30.0), xs).entries
    ladder = [1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0]
    kappas = [
        condition_number_2(G + 40 * lam * np.eye(40)).kappa2_measured for lam in ladder
    ]
    assert all(a >= b for a, b in zip(kappas, kappas[1:]))


def test_kappa2_upper_bound_values():
    assert f"{kappa2_upper_bound(30, 50, 1e-4):.6e}" == "2.350574e+04"
    assert f"{kappa2_upper_bound(50, 75, 1e-4):.6e}" == "2.837863e+04"
    assert kappa2_upper_bound(7.0, 4, 1.0) == pytest.approx(
        2 + 7.0 / (math.pi * 2.0), rel=1e-15
    )


def test_kappa2_lower_bound_gating_and_values():
    # applicability boundary: n must exceed e*c/2 (= 40.77 at c=30)
    assert kappa2_lower_bound_expectation(30.0, 40) is None
    assert kappa2_lower_bound_expectation(30.0, 41) is not None
    assert kappa2_lower_bound_expectation(2.0, 100) is None  # c below 5/2
    lv = kappa2_lower_bound_expectation(30.0, 50)
    expected_log10 = (2 * 50 * math.log10(100 / (math.e * 30))) - math.log10(2.0)
    assert lv.log10 == pytest.approx(expected_log10, rel=1e-12)
    assert not lv.overflow
    # small value near the boundary for c = 5/2
    c = 2.5
    n = math.ceil(math.e * c / 2) + 1
    lv2 = kappa2_lower_bound_expectation(c, n)
    assert lv2.value == pytest.approx(0.5 * (2 * n / (math.e * c)) ** (2 * n), rel=1e-12)
    # the paper's own Table-3 regime overflows doubles and must be flagged
    big = kappa2_lower_bound_expectation(30.0, 2000)
    assert big.overflow and big.value == math.inf and math.isfinite(big.log_value)


def test_lambda_opt():
    val, ok = lambda_opt(20.0, 10_000, 0.05)
    assert val == pytest.approx(8 * 20 * math.log(80) / (math.pi * 100), rel=1e-14)
    assert ok == (val < 1)
    # admissibility flips across the boundary n = (8 c log(4/delta) / pi)^2
    boundary = (8 * 20 * math.log(80) / math.pi) ** 2
    v_lo, ok_lo = lambda_opt(20.0, math.floor(boundary) - 1, 0.05)
    v_hi, ok_hi = lambda_opt(20.0, math.ceil(boundary) + 1, 0.05)
    assert v_lo > 1 > v_hi
    assert not ok_lo and ok_hi
    _, ok_small = lambda_opt(20.0, 10, 0.05)
    assert not ok_small
    with pytest.raises(ValueError):
        lambda_opt(20.0, 100, 1.5)
