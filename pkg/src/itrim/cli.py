"""Command-line experiment runner.

Subcommands:
  mean        paired ITM vs oracle-mean benchmark over a grid of n
  regression  paired ITSM vs oracle-least-squares benchmark
  diagnose    bound-check reports as JSON
  export      write a generated dataset as CSV plus a metadata sidecar

Exit codes: 0 success, 1 configuration error, 2 I/O error. Output files
are byte-identical across reruns with the same seed: runtime columns are
left blank unless --timings is given, and rows are fully sorted before
writing. ENTEST_SEED is used when --seed is omitted.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .datagen import MeanSetting, gen_mean_data, gen_regression_data
from .experiments import run_diagnose, run_mean_experiment, run_regression_experiment

CSV_HEADER = ["method", "n", "d", "trial", "final_error", "runtime_ms", "converged_at"]


class ConfigError(Exception):
    """Invalid command-line configuration (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _fmt(value):
    return f"{value:.12g}"


def _default_seed():
    return int(os.environ.get("ENTEST_SEED", "0"))


def _parse_n_list(text):
    try:
        values = [int(v) for v in text.split(",") if v]
    except ValueError as err:
        raise ConfigError(f"bad n list {text!r}: {err}") from None
    if not values or any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("n list must be non-empty and strictly increasing")
    return values


def _row_dict(r, timings):
    return {
        "method": r.method,
        "n": r.n,
        "d": r.d,
        "trial": r.trial_index,
        "final_error": _fmt(r.final_error),
        "runtime_ms": _fmt(r.runtime_ms) if timings else "",
        "converged_at": "" if r.converged_at is None else r.converged_at,
    }


def _write_rows(rows, out_path, fmt, timings):
    dicts = [_row_dict(r, timings) for r in rows]
    out_path = Path(out_path)
    if fmt == "json":
        out_path.write_text(json.dumps(dicts, indent=2, sort_keys=True) + "\n")
    else:
        with out_path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
            writer.writeheader()
            writer.writerows(dicts)


def _maybe_plot(rows, out_path, title, enabled):
    if not enabled:
        return
    from .report import render_error_curves

    render_error_curves(rows, Path(out_path).with_suffix(".png"), title=title)


def build_parser():
    parser = _Parser(prog="itrim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials_default):
        p.add_argument("--n", required=True, help="comma-separated sample sizes")
        p.add_argument("--alpha", type=float, default=0.8)
        p.add_argument("--iters", type=int, default=20)
        p.add_argument("--trials", type=int, default=trials_default)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", required=True)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument(
            "--timings", action="store_true", help="write measured runtimes"
        )
        p.add_argument(
            "--plot", action="store_true", help="render an error-vs-n PNG beside --out"
        )

    p_mean = sub.add_parser("mean", help="ITM vs oracle mean benchmark")
    p_mean.add_argument("--setting", type=int, choices=(1, 2, 3, 4), required=True)
    p_mean.add_argument("--d", type=int, default=10, help="dimension for settings 3-4")
    common(p_mean, trials_default=50)

    p_reg = sub.add_parser("regression", help="ITSM vs oracle least squares benchmark")
    p_reg.add_argument("--d", type=int, default=100)
    p_reg.add_argument("--normalize", action="store_true")
    common(p_reg, trials_default=20)

    p_diag = sub.add_parser("diagnose", help="bound-check reports as JSON")
    p_diag.add_argument("--setting", type=int, choices=(1, 2, 3, 4), default=1)
    p_diag.add_argument("--n", type=int, required=True)
    p_diag.add_argument("--d", type=int, default=10)
    p_diag.add_argument("--alpha", type=float, default=0.8)
    p_diag.add_argument("--iters", type=int, default=20)
    p_diag.add_argument("--trials", type=int, default=200)
    p_diag.add_argument("--psi-n", type=int, default=10)
    p_diag.add_argument("--psi-d", type=int, default=2)
    p_diag.add_argument("--psi-trials", type=int, default=64)
    p_diag.add_argument("--seed", type=int, default=None)
    p_diag.add_argument("--out", required=True)

    p_exp = sub.add_parser("export", help="write a generated dataset to CSV")
    p_exp.add_argument("--setting", type=int, choices=(1, 2, 3, 4))
    p_exp.add_argument("--regression", action="store_true")
    p_exp.add_argument("--n", type=int, required=True)
    p_exp.add_argument("--d", type=int, default=10)
    p_exp.add_argument("--alpha", type=float, default=0.8)
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument("--out", required=True)
    return parser


def _cmd_mean(args):
    rows = run_mean_experiment(
        setting=args.setting,
        n_list=_parse_n_list(args.n),
        alpha=args.alpha,
        iterations=args.iters,
        trials=args.trials,
        seed=args.seed if args.seed is not None else _default_seed(),
        d=args.d,
    )
    _write_rows(rows, args.out, args.format, args.timings)
    _maybe_plot(rows, args.out, f"Mean estimation, setting {args.setting}", args.plot)


def _cmd_regression(args):
    rows = run_regression_experiment(
        n_list=_parse_n_list(args.n),
        d=args.d,
        alpha=args.alpha,
        iterations=args.iters,
        trials=args.trials,
        seed=args.seed if args.seed is not None else _default_seed(),
        normalize=args.normalize,
    )
    _write_rows(rows, args.out, args.format, args.timings)
    _maybe_plot(rows, args.out, f"Linear regression, d={args.d}", args.plot)


def _cmd_diagnose(args):
    report = run_diagnose(
        setting=args.setting,
        n=args.n,
        alpha=args.alpha,
        iterations=args.iters,
        trials=args.trials,
        seed=args.seed if args.seed is not None else _default_seed(),
        d=args.d,
        psi_n=args.psi_n,
        psi_d=args.psi_d,
        psi_trials=args.psi_trials,
    )
    Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _cmd_export(args):
    seed = args.seed if args.seed is not None else _default_seed()
    out_path = Path(args.out)
    if args.regression:
        data = gen_regression_data(args.n, args.d, args.alpha, seed)
        header = [f"x_{j}" for j in range(data.d)] + ["y"]
        matrix = np.column_stack([data.design, data.response])
        meta = {
            "kind": "regression",
            "n": data.n,
            "d": data.d,
            "alpha": args.alpha,
            "seed": seed,
            "truth_beta": list(map(float, data.truth_beta)),
            "noise_sd": list(map(float, data.noise_sd)),
        }
    elif args.setting is not None:
        setting = MeanSetting(
            setting=args.setting, n=args.n, alpha=args.alpha, d=args.d, seed=seed
        )
        data = gen_mean_data(setting)
        header = [f"x_{j}" for j in range(data.d)]
        matrix = data.points
        meta = {
            "kind": "mean",
            "setting": args.setting,
            "n": data.n,
            "d": data.d,
            "alpha": args.alpha,
            "seed": seed,
            "truth_mean": list(map(float, data.truth_mean)),
            "noise_scale": list(map(float, data.noise_scale)),
        }
    else:
        raise ConfigError("export needs --setting or --regression")
    with out_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in matrix:
            writer.writerow([_fmt(v) for v in row])
    sidecar = out_path.with_suffix(out_path.suffix + ".meta.json")
    sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


_COMMANDS = {
    "mean": _cmd_mean,
    "regression": _cmd_regression,
    "diagnose": _cmd_diagnose,
    "export": _cmd_export,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args)
    except (ConfigError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
