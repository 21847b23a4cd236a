"""Benchmark command-line front end.

Subcommands reproduce the three numerical studies (error tables for a
bandlimited truth, error tables for random cosine-series truths, and
condition numbers of Sinc Gram matrices) and expose ad-hoc fitting of a
samples CSV. Every run writes CSV payloads, a PNG rendering, and a JSON
manifest; ``replay`` re-executes a manifest and must reproduce the CSV
payloads byte for byte.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from rkhs_regress import __version__, figures
from rkhs_regress.errors import CsvFormatError, DomainError
from rkhs_regress.estimators import (
    evaluate_model,
    fit_legendre_projection,
    fit_sinc_projection,
)
from rkhs_regress.kernels import LegendreKernel, SincKernel
from rkhs_regress.krr import (
    build_gram,
    condition_number_2,
    default_lambda_grid,
    fit_krr,
    gcv_select,
    kappa2_lower_bound_expectation,
    kappa2_upper_bound,
)
from rkhs_regress.reports import (
    RunManifest,
    read_manifest,
    read_samples_csv,
    utc_now,
    write_csv,
    write_manifest,
    write_samples_csv,
)
from rkhs_regress.testbed import (
    BandlimitedTruthSpec,
    BrownianTruthSpec,
    ExperimentConfig,
    KrrSpec,
    LegendreProjectionSpec,
    NoiseSpec,
    SincProjectionSpec,
    generate_samples,
    realize_truth,
    run_experiment,
    sample_uniform_design,
    substream,
)

DEFAULT_SEED = 20240
DEFAULT_REPLICATIONS = 100  # the original protocol (500) is one flag away
GRID_POINTS = 401
ERRORS_HEADER = ["estimator", "param", "n", "mean_l2_error", "std_l2_error"]
THREADS_ENV = "RKHS_REGRESS_THREADS"


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def resolve_threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get(THREADS_ENV)
    return max(1, int(env)) if env else 1


def _dense_grid(points: int) -> np.ndarray:
    return np.linspace(-1.0, 1.0, points)


# --- example 1: bandlimited truth ---------------------------------------------


def run_example1(config: dict, out_dir: Path, threads: int) -> list[str]:
    seed = config["seed"]
    noise = NoiseSpec(config["noise_sigma"])
    truth_spec = BandlimitedTruthSpec()
    reps = config["replications"]
    grid = tuple(config["lambda_grid"])

    rows = []
    runs = [("sinc", config["sinc_c"], SincProjectionSpec(config["sinc_c"]), config["proj_n"])]
    runs.append(
        ("legendre", config["legendre_degree"], LegendreProjectionSpec(config["legendre_degree"]), config["proj_n"])
    )
    runs.append(
        ("krr", config["krr_c"], KrrSpec("sinc", config["krr_c"], lambda_grid=grid), config["krr_n"])
    )
    for name, param, estimator, n_list in runs:
        for n in n_list:
            cfg = ExperimentConfig(
                estimator=estimator,
                truth=truth_spec,
                n=n,
                replications=reps,
                noise=noise,
                seed=seed,
                quad_nodes=config["quad_nodes"],
            )
            report = run_experiment(cfg, threads=threads)
            rows.append([name, float(param), n, report.mean_l2_error, report.std_l2_error])
    write_csv(out_dir / "example1_errors.csv", ERRORS_HEADER, rows)

    # Figure data: the truth, one noisy sample set, and one fitted curve
    # (the Sinc projection at the largest sample size).
    n_show = max(config["proj_n"])
    truth = realize_truth(truth_spec, seed, 0)
    samples = generate_samples(truth, n_show, noise, seed, 0)
    model = fit_sinc_projection(samples, config["sinc_c"])
    gx = _dense_grid(config["grid_points"])
    tv = np.asarray(truth(gx))
    fv = evaluate_model(model, gx)
    write_csv(out_dir / "example1_grid.csv", ["x", "truth", "fit"], np.column_stack([gx, tv, fv]).tolist())
    write_samples_csv(out_dir / "example1_samples.csv", samples)
    figures.render_example_figure(
        out_dir / "example1_figure.png", gx, tv, fv,
        np.asarray([s.x for s in samples]), np.asarray([s.y for s in samples]),
    )
    return ["example1_errors.csv", "example1_grid.csv", "example1_samples.csv", "example1_figure.png"]


def cmd_example1(args) -> int:
    config = {
        "seed": args.seed,
        "replications": args.replications,
        "noise_sigma": args.noise_sigma,
        "quad_nodes": args.quad_nodes,
        "sinc_c": args.c,
        "legendre_degree": args.N,
        "proj_n": _int_list(args.n),
        "krr_c": args.krr_c,
        "krr_n": _int_list(args.krr_n),
        "lambda_grid": _float_list(args.lambda_grid) if args.lambda_grid else default_lambda_grid().tolist(),
        "grid_points": args.grid_points,
    }
    return _execute("example1", config, args)


# --- example 2: random cosine-series truth -------------------------------------


def _s_tag(s: float) -> str:
    return f"{s:g}".replace(".", "p").replace("-", "m")


def run_example2(config: dict, out_dir: Path, threads: int) -> list[str]:
    seed = config["seed"]
    noise = NoiseSpec(config["noise_sigma"])
    reps = config["replications"]
    grid = tuple(config["lambda_grid"])
    outputs: list[str] = []

    for s in config["s_values"]:
        truth_spec = BrownianTruthSpec(
            s=s,
            truncation=config["truncation"],
            redraw_per_replication=not config["frozen_coefficients"],
        )
        rows = []
        runs = [("sinc", config["sinc_c"], SincProjectionSpec(config["sinc_c"]), config["proj_n"])]
        runs.append(
            ("legendre", config["legendre_degree"], LegendreProjectionSpec(config["legendre_degree"]), config["proj_n"])
        )
        runs.append(
            ("krr", config["krr_c"], KrrSpec("sinc", config["krr_c"], lambda_grid=grid), config["krr_n"])
        )
        for name, param, estimator, n_list in runs:
            for n in n_list:
                cfg = ExperimentConfig(
                    estimator=estimator,
                    truth=truth_spec,
                    n=n,
                    replications=reps,
                    noise=noise,
                    seed=seed,
                    quad_nodes=config["quad_nodes"],
                )
                report = run_experiment(cfg, threads=threads)
                rows.append([name, float(param), n, report.mean_l2_error, report.std_l2_error])
        tag = _s_tag(s)
        write_csv(out_dir / f"example2_s{tag}_errors.csv", ERRORS_HEADER, rows)

        n_show = max(config["proj_n"])
        truth = realize_truth(truth_spec, seed, 0)
        samples = generate_samples(truth, n_show, noise, seed, 0)
        model = fit_sinc_projection(samples, config["sinc_c"])
        gx = _dense_grid(config["grid_points"])
        tv = np.asarray(truth(gx))
        fv = evaluate_model(model, gx)
        write_csv(out_dir / f"example2_s{tag}_grid.csv", ["x", "truth", "fit"], np.column_stack([gx, tv, fv]).tolist())
        write_samples_csv(out_dir / f"example2_s{tag}_samples.csv", samples)
        figures.render_example_figure(
            out_dir / f"example2_s{tag}_figure.png", gx, tv, fv,
            np.asarray([s_.x for s_ in samples]), np.asarray([s_.y for s_ in samples]),
        )
        outputs += [
            f"example2_s{tag}_errors.csv",
            f"example2_s{tag}_grid.csv",
            f"example2_s{tag}_samples.csv",
            f"example2_s{tag}_figure.png",
        ]
    return outputs


def cmd_example2(args) -> int:
    config = {
        "seed": args.seed,
        "replications": args.replications,
        "noise_sigma": args.noise_sigma,
        "quad_nodes": args.quad_nodes,
        "s_values": _float_list(args.s),
        "truncation": args.truncation,
        "frozen_coefficients": args.frozen_coefficients,
        "sinc_c": args.c,
        "legendre_degree": args.N,
        "proj_n": _int_list(args.n),
        "krr_c": args.krr_c,
        "krr_n": _int_list(args.krr_n),
        "lambda_grid": _float_list(args.lambda_grid) if args.lambda_grid else default_lambda_grid().tolist(),
        "grid_points": args.grid_points,
    }
    return _execute("example2", config, args)


# --- example 3: Gram-matrix condition numbers ----------------------------------

EXAMPLE3_HEADER = [
    "c",
    "n",
    "lambda",
    "kappa2_g0_mean",
    "kappa2_g0_floor_hit",
    "kappa2_g0_log10_lower_bound",
    "kappa2_glambda_mean",
    "kappa2_glambda_max",
    "kappa2_upper_bound",
]


def run_example3(config: dict, out_dir: Path, threads: int) -> list[str]:
    seed = config["seed"]
    lam = config["lambda"]
    rows = []
    labels, measured, bounds = [], [], []
    for ci, c in enumerate(config["c_values"]):
        for ni, n in enumerate(config["n_values"]):
            k_g0, k_glam, floors = [], [], []
            for r in range(config["realizations"]):
                xs = sample_uniform_design(n, substream(seed, ci, ni, r))
                g0 = build_gram(SincKernel(c), xs)
                rep0 = condition_number_2(g0)
                k_g0.append(rep0.kappa2_measured)
                floors.append(rep0.precision_floor_hit)
                glam = g0.entries + n * lam * np.eye(n)
                k_glam.append(condition_number_2(glam).kappa2_measured)
            lower = kappa2_lower_bound_expectation(c, n)
            bound = kappa2_upper_bound(c, n, lam)
            rows.append(
                [
                    c,
                    n,
                    lam,
                    float(np.mean(k_g0)),
                    all(floors),
                    lower.log10 if lower is not None else None,
                    float(np.mean(k_glam)),
                    float(np.max(k_glam)),
                    bound,
                ]
            )
            labels.append(f"c={c:g}\nn={n}")
            measured.append(float(np.mean(k_glam)))
            bounds.append(bound)
    write_csv(out_dir / "example3_condition.csv", EXAMPLE3_HEADER, rows)
    figures.render_condition_figure(out_dir / "example3_figure.png", labels, measured, bounds)
    return ["example3_condition.csv", "example3_figure.png"]


def cmd_example3(args) -> int:
    config = {
        "seed": args.seed,
        "lambda": args.lam,
        "c_values": _float_list(args.c),
        "n_values": _int_list(args.n),
        "realizations": args.realizations,
    }
    return _execute("example3", config, args)


# --- ad-hoc fit ----------------------------------------------------------------


def run_fit(config: dict, out_dir: Path, threads: int) -> list[str]:
    samples = read_samples_csv(Path(config["input"]))
    estimator = config["estimator"]
    diagnostics: dict = {}
    if estimator == "sinc":
        model = fit_sinc_projection(samples, config["c"])
    elif estimator == "legendre":
        model = fit_legendre_projection(samples, config["legendre_degree"])
    elif estimator == "krr":
        kernel = (
            SincKernel(config["c"])
            if config["kernel"] == "sinc"
            else LegendreKernel(config["legendre_degree"])
        )
        if config["lambda"] is not None:
            lam = config["lambda"]
        else:
            lam = gcv_select(kernel, samples, np.asarray(config["lambda_grid"])).lambda_gcv
        model = fit_krr(kernel, samples, lam)
        gram = build_gram(kernel, model.design)
        n = model.design.size
        report = condition_number_2(gram.entries + n * lam * np.eye(n))
        diagnostics = {
            "selected_lambda": lam,
            "kappa2_glambda": report.kappa2_measured,
            "kappa2_upper_bound": (
                kappa2_upper_bound(config["c"], n, lam) if config["kernel"] == "sinc" else None
            ),
        }
    else:
        raise ValueError(f"unknown estimator {estimator!r}")

    if config["eval_at"] is not None:
        gx = np.asarray(config["eval_at"], dtype=float)
    else:
        gx = _dense_grid(config["grid_points"])
    fv = evaluate_model(model, gx)
    write_csv(out_dir / "fit_predictions.csv", ["x", "fit"], np.column_stack([gx, fv]).tolist())
    figures.render_fit_figure(
        out_dir / "fit_figure.png", gx, fv,
        np.asarray([s.x for s in samples]), np.asarray([s.y for s in samples]),
    )
    config["diagnostics"] = diagnostics
    return ["fit_predictions.csv", "fit_figure.png"]


def cmd_fit(args) -> int:
    config = {
        "seed": args.seed,
        "input": str(args.input),
        "estimator": args.estimator,
        "kernel": args.kernel,
        "c": args.c,
        "legendre_degree": args.N,
        "lambda": args.lam,
        "lambda_grid": _float_list(args.lambda_grid) if args.lambda_grid else default_lambda_grid().tolist(),
        "grid_points": args.grid_points,
        "eval_at": _float_list(args.eval_at) if args.eval_at else None,
    }
    return _execute("fit", config, args)


# --- manifest replay and dispatch ----------------------------------------------

RUNNERS = {
    "example1": run_example1,
    "example2": run_example2,
    "example3": run_example3,
    "fit": run_fit,
}


def execute_command(command: str, config: dict, out_dir: Path, threads: int) -> RunManifest:
    """Run a resolved command config and write its manifest; used by replay."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = utc_now()
    # runners may enrich the config in place (e.g. fit diagnostics); the
    # manifest records the enriched version
    outputs = RUNNERS[command](config, out_dir, threads)
    manifest = RunManifest(
        command=command,
        config=config,
        library_version=__version__,
        seed=int(config.get("seed", DEFAULT_SEED)),
        started_at=started,
        finished_at=utc_now(),
        outputs=outputs,
    )
    write_manifest(out_dir / f"{command}_manifest.json", manifest)
    return manifest


def _execute(command: str, config: dict, args) -> int:
    execute_command(command, config, Path(args.out_dir), resolve_threads(args.threads))
    return 0


def cmd_replay(args) -> int:
    manifest = read_manifest(Path(args.manifest))
    execute_command(
        manifest.command, manifest.config, Path(args.out_dir), resolve_threads(args.threads)
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkhs-regress",
        description="Kernel-based nonparametric regression benchmarks on [-1, 1].",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master RNG seed")
    shared.add_argument("--out-dir", default=".", help="directory for report files")
    shared.add_argument(
        "--threads", type=int, default=None,
        help=f"replication worker threads (default: ${THREADS_ENV} or 1)",
    )

    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument(
        "--replications", type=int, default=DEFAULT_REPLICATIONS,
        help="Monte-Carlo replications (the original study used 500)",
    )
    mc.add_argument("--quad-nodes", type=int, default=None, help="override L2-error quadrature nodes")
    mc.add_argument("--noise-sigma", type=float, default=0.1, help="noise scale sigma")
    mc.add_argument("--lambda-grid", default=None, help="comma-separated GCV grid for the Tikhonov fit")
    mc.add_argument("--grid-points", type=int, default=GRID_POINTS, help="dense-grid points for figure data")

    p1 = sub.add_parser("example1", parents=[shared, mc], help="bandlimited-truth error tables and figure data")
    p1.add_argument("--c", type=float, default=20.0, help="Sinc projection bandwidth")
    p1.add_argument("--N", type=int, default=20, help="Legendre projection degree")
    p1.add_argument("--n", default="100,500,1000", help="sample sizes for the projection estimators")
    p1.add_argument("--krr-c", type=float, default=30.0, help="Sinc bandwidth for the Tikhonov fit")
    p1.add_argument("--krr-n", default="50,100,500", help="sample sizes for the Tikhonov fit")
    p1.set_defaults(func=cmd_example1)

    p2 = sub.add_parser("example2", parents=[shared, mc], help="cosine-series-truth error tables and figure data")
    p2.add_argument("--s", default="1,2", help="smoothness exponents")
    p2.add_argument("--truncation", type=int, default=2000, help="series truncation length")
    p2.add_argument(
        "--frozen-coefficients", action="store_true",
        help="draw one series realization per run instead of one per replication",
    )
    p2.add_argument("--c", type=float, default=30.0, help="Sinc projection bandwidth")
    p2.add_argument("--N", type=int, default=20, help="Legendre projection degree")
    p2.add_argument("--n", default="100,500,1000", help="sample sizes for the projection estimators")
    p2.add_argument("--krr-c", type=float, default=30.0, help="Sinc bandwidth for the Tikhonov fit")
    p2.add_argument("--krr-n", default="50,100,150", help="sample sizes for the Tikhonov fit")
    p2.set_defaults(func=cmd_example2)

    p3 = sub.add_parser("example3", parents=[shared], help="Gram-matrix condition-number table")
    p3.add_argument("--c", default="30,50", help="comma-separated bandwidths")
    p3.add_argument("--n", default="50,75", help="comma-separated design sizes")
    p3.add_argument("--lambda", dest="lam", type=float, default=1e-4, help="regularization parameter")
    p3.add_argument(
        "--replications", dest="realizations", type=int, default=10,
        help="design draws averaged per (c, n) cell",
    )
    p3.set_defaults(func=cmd_example3)

    pf = sub.add_parser("fit", parents=[shared], help="fit one estimator to a samples CSV")
    pf.add_argument("--input", required=True, help="samples CSV with columns x,y")
    pf.add_argument("--estimator", choices=["sinc", "legendre", "krr"], required=True)
    pf.add_argument("--kernel", choices=["sinc", "legendre"], default="sinc", help="kernel for --estimator krr")
    pf.add_argument("--c", type=float, default=20.0, help="Sinc bandwidth")
    pf.add_argument("--N", type=int, default=20, help="Legendre degree")
    pf.add_argument("--lambda", dest="lam", type=float, default=None, help="fixed regularization (else GCV)")
    pf.add_argument("--lambda-grid", default=None, help="comma-separated GCV grid")
    pf.add_argument("--grid-points", type=int, default=GRID_POINTS)
    pf.add_argument("--eval-at", default=None, help="comma-separated evaluation points (overrides the grid)")
    pf.set_defaults(func=cmd_fit)

    pr = sub.add_parser("replay", parents=[shared], help="re-run a manifest")
    pr.add_argument("manifest", help="path to a *_manifest.json file")
    pr.set_defaults(func=cmd_replay)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CsvFormatError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
