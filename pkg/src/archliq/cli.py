"""Command-line interface.

Subcommands: simulate, estimate, montecarlo, acf, noise-check.  All CSV
output carries a header row and prints floats with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .acf import estimate_acf
from .errors import ArchLiqError, ConfigError
from .estimators import EstimatorInputs, estimate_def1
from .fgn import FgnConfig, fgn_autocovariance, sample_fgn
from .liquidity import parse_liquidity, theoretical_covariance
from .model import NoiseMoments
from .montecarlo import _fmt, load_config, run_experiment
from .noise import sample_compensated_poisson_increments, sample_gaussian_iid
from .seeding import SeedSpec
from .simulate import simulate_recursive


def _read_series(path: str) -> np.ndarray:
    """Read one column of values from a headered CSV.

    Accepts a single-column file or any file with a column named x_squared.
    """
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ConfigError(f"{path}: empty file")
        if len(header) == 1:
            column = 0
        elif "x_squared" in header:
            column = header.index("x_squared")
        else:
            raise ConfigError(
                f"{path}: expected a single column or a column named 'x_squared'"
            )
        values = [float(row[column]) for row in reader if row]
    if not values:
        raise ConfigError(f"{path}: no data rows")
    return np.asarray(values)


def _parse_noise_preset(name: str) -> NoiseMoments:
    if name.lower() == "gaussian":
        return NoiseMoments.gaussian()
    raise ConfigError(f"unknown noise preset {name!r} (available: gaussian)")


def _cmd_simulate(args) -> int:
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = str(args.seed)
    cfg = load_config(args.config, overrides)
    n = args.n if args.n is not None else cfg.sample_sizes[0]
    path = simulate_recursive(
        cfg.params,
        cfg.liquidity,
        SeedSpec(cfg.master_seed),
        n,
        init_x_squared=cfg.init_x_squared,
        burn_in=cfg.burn_in,
    )
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["t", "x_squared", "sigma_squared", "liquidity"])
        for t in range(n):
            writer.writerow(
                [
                    t,
                    _fmt(float(path.x_squared[t])),
                    _fmt(float(path.sigma_squared[t])),
                    _fmt(float(path.liquidity[t])),
                ]
            )
    print(f"wrote {n} rows to {args.out}")
    return 0


def _cmd_estimate(args) -> int:
    data = _read_series(args.data)
    model = parse_liquidity(args.liquidity)
    noise = _parse_noise_preset(args.noise)
    max_lag = min(abs(args.lag) + 6, len(data) - 2)
    acf = estimate_acf(data, max_lag)
    result = estimate_def1(
        EstimatorInputs(acf, theoretical_covariance(model), noise), args.lag
    )
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["alpha0_hat", "alpha1_hat", "l1_hat", "status", "chosen_root", "discriminant"]
        )
        writer.writerow(
            [
                _fmt(result.alpha0_hat),
                _fmt(result.alpha1_hat),
                _fmt(result.l1_hat),
                result.status,
                result.chosen_root or "",
                _fmt(result.discriminant),
            ]
        )
    print(f"status: {result.status}")
    return 0


def _cmd_montecarlo(args) -> int:
    cfg = load_config(args.config)
    rows, _ = run_experiment(
        cfg, out_dir=args.out_dir, workers=args.workers, histogram_bins=args.bins
    )
    for row in rows:
        print(
            f"N={row.sample_size}: real={row.n_real}/{row.n_replications} "
            f"pct_complex={row.pct_complex:.1f}%"
        )
    print(f"outputs in {args.out_dir}")
    return 0


def _cmd_acf(args) -> int:
    data = _read_series(args.data)
    acf = estimate_acf(data, args.max_lag)
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["lag", "gamma_hat"])
        for lag in range(args.max_lag + 1):
            writer.writerow([lag, _fmt(acf.gamma_hat[lag])])
    print(f"wrote lags 0..{args.max_lag} to {args.out}")
    return 0


def _cmd_noise_check(args) -> int:
    seed = SeedSpec(args.seed)
    max_lag = 5
    if args.kind == "fgn":
        sample = sample_fgn(seed, FgnConfig(args.hurst, args.n))
        theory = fgn_autocovariance(args.hurst, np.arange(max_lag + 1))
        label = f"fgn H={args.hurst}"
    elif args.kind == "gaussian":
        sample = sample_gaussian_iid(seed, args.n)
        theory = np.array([1.0] + [0.0] * max_lag)
        label = "gaussian iid"
    elif args.kind == "poisson":
        sample = sample_compensated_poisson_increments(seed, args.lam, args.n)
        theory = np.array([args.lam] + [0.0] * max_lag)
        label = f"compensated poisson lambda={args.lam}"
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown kind {args.kind!r}")
    # generators have known mean zero, so no mean subtraction here
    n = sample.size
    print(f"{label}, n={n}")
    print(f"{'lag':>4} {'theoretical':>14} {'empirical':>14} {'abs_error':>12}")
    for lag in range(max_lag + 1):
        emp = float(np.dot(sample[: n - lag], sample[lag:]) / n)
        print(f"{lag:>4} {theory[lag]:>14.6f} {emp:>14.6f} {abs(emp - theory[lag]):>12.2e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="archliq",
        description="Simulation and closed-form estimation for ARCH with a liquidity factor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate one path to CSV")
    p.add_argument("--config", required=True, help="experiment config file")
    p.add_argument("--n", type=int, default=None, help="path length (default: first sample size)")
    p.add_argument("--seed", type=int, default=None, help="override the master seed")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("estimate", help="estimate parameters from observed X^2 data")
    p.add_argument("--data", required=True, help="CSV of X^2 observations")
    p.add_argument(
        "--liquidity",
        required=True,
        help="liquidity covariance spec: fgn:H=0.333 | poisson:lambda=1 | white",
    )
    p.add_argument("--lag", type=int, default=1)
    p.add_argument("--noise", default="gaussian", help="innovation moment preset")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("montecarlo", help="run a replication sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--bins", type=int, default=30, help="histogram bins")
    p.set_defaults(func=_cmd_montecarlo)

    p = sub.add_parser("acf", help="sample autocovariances of an X^2 series")
    p.add_argument("--data", required=True)
    p.add_argument("--max-lag", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_acf)

    p = sub.add_parser("noise-check", help="empirical vs theoretical generator covariance")
    p.add_argument("--kind", choices=["fgn", "gaussian", "poisson"], required=True)
    p.add_argument("--hurst", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_noise_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ArchLiqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
