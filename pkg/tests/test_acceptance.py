"""End-to-end acceptance suite.

One test per acceptance criterion, each printing a PASS/FAIL line with
the measured quantities (run with ``pytest -s`` to see the lines for
passing criteria). Stochastic criteria use fixed seeds, so outcomes are
reproducible.
"""

import json
import math
import time
from pathlib import Path

import numpy as np
import pytest
from _oracles import ge_solve

from rkhs_regress.cli import main as cli_main
from rkhs_regress.bounds import lemma1_lhs_rhs
from rkhs_regress.estimators import (
    fit_legendre_projection,
    samples_from_arrays,
)
from rkhs_regress.kernels import LegendreKernel, SincKernel
from rkhs_regress.krr import (
    build_gram,
    condition_number_2,
    fit_krr,
    gcv_select,
    kappa2_lower_bound_expectation,
    kappa2_upper_bound,
)
from rkhs_regress.legendre import (
    christoffel_darboux,
    christoffel_darboux_ratio,
    legendre_vander,
    project_function,
)
from rkhs_regress.quadrature import gauss_legendre_rule
from rkhs_regress.sinc import kernel_row_norm, min_oscillation_nodes
from rkhs_regress.estimators import l2_error, fit_sinc_projection
from rkhs_regress.testbed import (
    BandlimitedTruthSpec,
    BrownianTruthSpec,
    ExperimentConfig,
    LegendreProjectionSpec,
    NoiseSpec,
    SincProjectionSpec,
    generate_samples,
    realize_truth,
    run_experiment,
    substream,
    truth_bandlimited_example1,
)

EX1_L2_NORM = 0.3931045239899279


def report(num: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:02d}: {detail}")


def test_criterion_01_kernel_form_equivalence():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        N = int(rng.integers(0, 51))
        x, y = rng.uniform(-1, 1, 2)
        while abs(x - y) <= 1e-6:
            x, y = rng.uniform(-1, 1, 2)
        a = christoffel_darboux(N, x, y)
        b = christoffel_darboux_ratio(N, x, y)
        worst = max(worst, abs(a - b) / (abs(a) + 1e-10))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 1.0
    report(1, ok, f"worst relative gap {worst:.2e} over 1000 pairs in {elapsed:.2f}s")
    assert ok


def test_criterion_02_orthonormality_suite():
    t0 = time.perf_counter()
    rule = gauss_legendre_rule(32)  # exact for degrees <= 63
    V = legendre_vander(rule.nodes, 30)
    gram = V.T @ (rule.weights[:, None] * V)
    gap = float(np.max(np.abs(gram - np.eye(31))))
    elapsed = time.perf_counter() - t0
    ok = gap <= 1e-10 and elapsed < 1.0
    report(2, ok, f"max |gram - identity| = {gap:.2e} in {elapsed:.2f}s")
    assert ok


def test_criterion_03_sinc_row_norm_bound():
    rng = np.random.default_rng(103)
    worst_ratio = 0.0
    for c in (5.0, 20.0, 50.0):
        rule = gauss_legendre_rule(min_oscillation_nodes(c))
        bound = math.sqrt(c / math.pi) * (1 + 1e-8)
        for x in rng.uniform(-1, 1, 100):
            worst_ratio = max(worst_ratio, kernel_row_norm(c, x, rule) / bound)
    ok = worst_ratio <= 1.0
    report(3, ok, f"worst row-norm / bound = {worst_ratio:.10f}")
    assert ok


def test_criterion_04_unbiasedness():
    t0 = time.perf_counter()
    truth = truth_bandlimited_example1
    target = project_function(truth, 10).coeffs
    reps, n, seed = 10_000, 100, 104
    sums = np.zeros(11)
    sq_sums = np.zeros(11)
    for r in range(reps):
        samples = generate_samples(truth, n, NoiseSpec(0.0), seed, r)
        c = fit_legendre_projection(samples, 10).coeffs
        sums += c
        sq_sums += c * c
    mean = sums / reps
    se = np.sqrt((sq_sums / reps - mean**2) / reps)
    dev_in_se = np.abs(mean - target) / se
    elapsed = time.perf_counter() - t0
    ok = bool(np.all(dev_in_se <= 4.0)) and elapsed < 30.0
    report(4, ok, f"max |mean - target| = {dev_in_se.max():.2f} SE over k<=10 in {elapsed:.1f}s")
    assert ok


def test_criterion_05_table1_reproduction():
    reps, seed = 500, 105
    paper = {"sinc": [1.64e-1, 6.48e-2, 4.78e-2], "legendre": [1.32e-1, 6.07e-2, 3.49e-2]}
    means = {"sinc": [], "legendre": []}
    for name, est in (
        ("sinc", SincProjectionSpec(bandwidth=20.0)),
        ("legendre", LegendreProjectionSpec(degree=20)),
    ):
        for n in (100, 500, 1000):
            config = ExperimentConfig(
                estimator=est, truth=BandlimitedTruthSpec(), n=n,
                replications=reps, noise=NoiseSpec(0.1), seed=seed,
            )
            means[name].append(run_experiment(config).mean_l2_error)
    failures = []
    for name in ("sinc", "legendre"):
        m = means[name]
        detail = " / ".join(f"n={n}: {v:.3e}" for n, v in zip((100, 500, 1000), m))
        print(f"    {name}: {detail}  (reference {paper[name]})")
        if not (m[0] > m[1] > m[2]):
            failures.append(f"{name} errors not decreasing in n: {m}")
        ref = paper[name][2]
        if not (0.7 * ref <= m[2] <= 1.3 * ref):
            failures.append(
                f"{name} n=1000 mean {m[2]:.3e} outside +-30% of {ref:.2e} "
                f"[{0.7 * ref:.3e}, {1.3 * ref:.3e}]"
            )
    ok = not failures
    report(5, ok, "; ".join(failures) if failures else "both n=1000 cells in band, decay monotone")
    assert ok, "; ".join(failures)


def test_criterion_06_table2_reproduction():
    reps, seed = 500, 106
    proj_ns = (100, 500, 1000)
    krr_ns = (50, 100, 150)
    grid = np.logspace(-4, 0, 13)
    rule = gauss_legendre_rule(128)
    means = {}
    for s in (1.0, 2.0):
        truth_spec = BrownianTruthSpec(s=s, truncation=2000, redraw_per_replication=True)
        acc = {("sinc", n): [] for n in proj_ns}
        acc.update({("legendre", n): [] for n in proj_ns})
        acc.update({("krr", n): [] for n in krr_ns})
        for r in range(reps):
            truth = realize_truth(truth_spec, seed, r)
            tv = np.asarray(truth(rule.nodes))
            cached = lambda xs, tv=tv: tv  # truth values cached for the shared rule
            for n in proj_ns:
                samples = generate_samples(truth, n, NoiseSpec(0.1), seed, r)
                acc[("sinc", n)].append(
                    l2_error(fit_sinc_projection(samples, 30.0), cached, rule)
                )
                acc[("legendre", n)].append(
                    l2_error(fit_legendre_projection(samples, 20), cached, rule)
                )
            for n in krr_ns:
                samples = generate_samples(truth, n, NoiseSpec(0.1), seed, r)
                kernel = SincKernel(30.0)
                lam = gcv_select(kernel, samples, grid).lambda_gcv
                acc[("krr", n)].append(l2_error(fit_krr(kernel, samples, lam), cached, rule))
        means[s] = {cell: float(np.mean(v)) for cell, v in acc.items()}
        cells = " / ".join(f"{k[0]}@{k[1]}: {v:.3e}" for k, v in means[s].items())
        print(f"    s={s:g}: {cells}")
    failures = []
    target = means[2.0][("sinc", 1000)]
    if not (0.6 * 9.80e-2 <= target <= 1.4 * 9.80e-2):
        failures.append(
            f"sinc n=1000 s=2 mean {target:.3e} outside +-40% of 9.80e-2 "
            f"[{0.6 * 9.80e-2:.3e}, {1.4 * 9.80e-2:.3e}]"
        )
    for cell, v2 in means[2.0].items():
        if not v2 < means[1.0][cell]:
            failures.append(f"s=2 error not below s=1 at {cell}")
    ok = not failures
    report(6, ok, "; ".join(failures) if failures else "band and cross-s ordering hold")
    assert ok, "; ".join(failures)


def test_criterion_07_gcv_selects_paper_lambda():
    reps, n, seed = 100, 100, 107
    grid = np.logspace(-4, 0, 13)  # one log-step = 10^(1/3)
    step = 10 ** (1 / 3)
    hits = 0
    for r in range(reps):
        samples = generate_samples(truth_bandlimited_example1, n, NoiseSpec(0.1), seed, r)
        lam = gcv_select(SincKernel(30.0), samples, grid).lambda_gcv
        if 1e-2 / step * (1 - 1e-12) <= lam <= 1e-2 * step * (1 + 1e-12):
            hits += 1
    ok = hits >= 80
    report(7, ok, f"{hits}/100 selections within one grid step of 1e-2")
    assert ok


def test_criterion_08_kappa2_bound_formula():
    expected = {
        (30, 50): "2.350574e+04",
        (30, 75): "2.102758e+04",
        (50, 50): "3.250891e+04",
        (50, 75): "2.837863e+04",
    }
    got = {cell: f"{kappa2_upper_bound(cell[0], cell[1], 1e-4):.6e}" for cell in expected}
    ok = got == expected
    report(8, ok, f"formula values {sorted(got.values())}")
    assert ok


def _table3_condition_reports():
    lam = 1e-4
    out = {}
    for ci, c in enumerate((30.0, 50.0)):
        for ni, n in enumerate((50, 75)):
            draws = []
            for r in range(10):
                xs = substream(108, ci, ni, r).uniform(-1, 1, n)
                g0 = build_gram(SincKernel(c), xs)
                glam = g0.entries + n * lam * np.eye(n)
                draws.append((condition_number_2(g0), condition_number_2(glam)))
            out[(c, n)] = draws
    return out


def test_criterion_09_table3_regularized_kappa2():
    paper = {(30.0, 50): 1.104737e4, (30.0, 75): 1.020951e4,
             (50.0, 50): 1.568333e4, (50.0, 75): 1.344763e4}
    failures = []
    for (c, n), draws in _table3_condition_reports().items():
        bound = kappa2_upper_bound(c, n, 1e-4)
        vals = [g.kappa2_measured for _, g in draws]
        mean = float(np.mean(vals))
        print(f"    c={c:g} n={n}: mean {mean:.4e} (reference {paper[(c, n)]:.3e}, bound {bound:.4e})")
        if not (paper[(c, n)] / 2 <= mean <= paper[(c, n)] * 2):
            failures.append(f"(c={c},n={n}) mean {mean:.3e} not within factor 2 of paper")
        if not all(v <= bound for v in vals):
            failures.append(f"(c={c},n={n}) a draw exceeded the bound")
    ok = not failures
    report(9, ok, "; ".join(failures) if failures else "all cells within factor 2 and under the bound")
    assert ok


def test_criterion_10_table3_raw_gram_floor():
    failures = []
    for (c, n), draws in _table3_condition_reports().items():
        k0 = [g0.kappa2_measured for g0, _ in draws]
        floors = [g0.precision_floor_hit for g0, _ in draws]
        print(f"    c={c:g} n={n}: min kappa2(G0) = {min(k0):.2e}, floor flags {sum(floors)}/10")
        if min(k0) < 1e14:
            failures.append(f"(c={c},n={n}) kappa2(G0) fell below 1e14")
        if not all(floors):
            failures.append(f"(c={c},n={n}) precision floor not flagged on every draw")
        lower = kappa2_lower_bound_expectation(c, n)
        if lower is not None and not math.isfinite(lower.log_value):
            failures.append(f"(c={c},n={n}) log-space lower bound overflowed")
    ok = not failures
    report(10, ok, "; ".join(failures) if failures else "floor >= 1e14 with flags; log-space bound finite")
    assert ok


def test_criterion_11_solver_matches_elimination_oracle():
    rng = np.random.default_rng(111)
    worst = 0.0
    for trial in range(50):
        n = int(rng.integers(2, 51))
        xs = rng.uniform(-1, 1, n)
        ys = rng.standard_normal(n)
        if trial % 2 == 0:
            kernel = SincKernel(float(rng.uniform(5, 40)))
        else:
            kernel = LegendreKernel(int(rng.integers(1, 25)))
        lam = float(10 ** rng.uniform(-4, -1))
        model = fit_krr(kernel, samples_from_arrays(xs, ys), lam)
        A = build_gram(kernel, xs).entries + n * lam * np.eye(n)
        ref = ge_solve(A, ys)
        worst = max(worst, np.linalg.norm(model.coefficients - ref) / np.linalg.norm(ref))
    ok = worst <= 1e-9
    report(11, ok, f"worst relative deviation from elimination oracle {worst:.2e}")
    assert ok


def test_criterion_12_weyl_floor():
    lam = 1e-4
    worst = math.inf
    for ci, c in enumerate((30.0, 50.0)):
        for ni, n in enumerate((50, 75)):
            for r in range(10):
                xs = substream(112, ci, ni, r).uniform(-1, 1, n)
                G = build_gram(SincKernel(c), xs).entries
                eigs = np.linalg.eigvalsh((G + n * lam * np.eye(n)) / n)
                worst = min(worst, eigs[0] / lam)
    ok = worst >= 1 - 1e-8
    report(12, ok, f"min eig((1/n) G_lambda) / lambda = {worst:.12f}")
    assert ok


def test_criterion_13_factorial_sum_inequality():
    t0 = time.perf_counter()
    worst_margin = math.inf
    count = 0
    for c in range(6, 61):
        for N in range(0, math.floor(c / 3)):
            lhs, rhs = lemma1_lhs_rhs(float(c), N)
            worst_margin = min(worst_margin, rhs - lhs)
            count += 1
    elapsed = time.perf_counter() - t0
    ok = worst_margin >= 0 and elapsed < 1.0
    report(13, ok, f"lhs <= rhs on all {count} lattice points (min margin {worst_margin:.2e}) in {elapsed:.2f}s")
    assert ok


def test_criterion_14_manifest_replay_determinism(tmp_path):
    runs = [
        (
            "example1",
            ["example1", "--replications", "2", "--n", "60", "--krr-n", "40",
             "--seed", "14", "--grid-points", "64"],
        ),
        (
            "example2",
            ["example2", "--replications", "2", "--s", "1", "--truncation", "200",
             "--n", "50", "--krr-n", "30", "--seed", "14", "--grid-points", "64"],
        ),
        ("example3", ["example3", "--replications", "3", "--seed", "14"]),
    ]
    src = tmp_path / "samples.csv"
    samples = generate_samples(truth_bandlimited_example1, 25, NoiseSpec(0.1), 14, 0)
    from rkhs_regress.reports import write_samples_csv

    write_samples_csv(src, samples)
    runs.append(("fit", ["fit", "--input", str(src), "--estimator", "krr", "--kernel",
                         "sinc", "--c", "30", "--lambda", "0.01", "--grid-points", "64"]))

    failures = []
    for command, args in runs:
        orig = tmp_path / f"{command}_orig"
        assert cli_main(args + ["--out-dir", str(orig)]) == 0
        manifest_path = orig / f"{command}_manifest.json"
        outputs = json.loads(manifest_path.read_text())["outputs"]
        for threads in ("1", "3"):
            replay_dir = tmp_path / f"{command}_replay_{threads}"
            assert cli_main(["replay", str(manifest_path), "--out-dir", str(replay_dir),
                             "--threads", threads]) == 0
            for name in outputs:
                if (orig / name).read_bytes() != (replay_dir / name).read_bytes():
                    failures.append(f"{command}/{name} differs on replay (threads={threads})")
            a = json.loads(manifest_path.read_text())
            b = json.loads((replay_dir / f"{command}_manifest.json").read_text())
            for key in ("started_at", "finished_at"):
                a.pop(key), b.pop(key)
            if a != b:
                failures.append(f"{command} manifest differs on replay (threads={threads})")
    ok = not failures
    report(14, ok, "; ".join(failures) if failures else "all payloads byte-identical across replays and thread counts")
    assert ok


def test_criterion_15_concentration_tail():
    reps, n, N, seed = 2000, 200, 10, 115
    truth = truth_bandlimited_example1
    coeff_rows = np.empty((reps, N + 1))
    for r in range(reps):
        samples = generate_samples(truth, n, NoiseSpec(0.0), seed, r)
        coeff_rows[r] = fit_legendre_projection(samples, N).coeffs
    center = coeff_rows.mean(axis=0)
    # degree-N polynomials: L2 norm equals the coefficient 2-norm
    deviations = np.linalg.norm(coeff_rows - center, axis=1)
    c_fn = math.sqrt(4 * (1.0 + 0.0) ** 2 * (N + 1) ** 2 + 2 * EX1_L2_NORM**2)
    bound = c_fn * math.sqrt(2 * math.log(20.0) / n)
    q90 = float(np.quantile(deviations, 0.9))
    ok = q90 <= bound
    report(15, ok, f"90th percentile {q90:.3e} vs tail bound {bound:.3e}")
    assert ok
