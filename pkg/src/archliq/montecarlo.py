"""Experiment orchestration: replication runner, summaries, histograms, config.

A run sweeps the configured sample sizes; each (size, replication) pair is an
independent work item whose random streams derive purely from
(master_seed, replication, size_index), so results are byte-identical for a
fixed master seed no matter how many workers execute them.  The paper-style
protocol is the default: forward recursion from a pinned initial squared
value with no burn-in, single-lag estimation at the configured lag.
"""

from __future__ import annotations

import csv
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .acf import estimate_acf
from .errors import ConfigError
from .estimators import (
    STATUS_COMPLEX,
    STATUS_DEGENERATE,
    STATUS_REAL,
    EstimationResult,
    EstimatorInputs,
    estimate_def1,
)
from .liquidity import LiquidityModel, parse_liquidity, theoretical_covariance
from .model import ModelParams, NoiseMoments, validate_regime
from .seeding import SeedSpec
from .simulate import simulate_recursive

#: extra autocovariance lags computed beyond the estimation lag, enough for
#: the residual-based root selection.
ACF_LAG_MARGIN = 6

_PARAM_NAMES = ("alpha0", "alpha1", "l1")


@dataclass(frozen=True)
class ExperimentConfig:
    params: ModelParams
    liquidity: LiquidityModel
    noise: NoiseMoments
    sample_sizes: tuple[int, ...]
    replications: int
    lag: int = 1
    master_seed: int = 0
    init_x_squared: float = 1.7
    burn_in: int = 0

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if not self.sample_sizes:
            raise ConfigError("at least one sample size is required")
        if self.lag == 0:
            raise ConfigError("lag must be nonzero")
        for size in self.sample_sizes:
            if size < abs(self.lag) + 3:
                raise ConfigError(
                    f"sample size {size} too small for lag {self.lag} "
                    f"(need at least lag + 3)"
                )


@dataclass(frozen=True)
class ReplicationRecord:
    sample_size: int
    replication: int
    result: EstimationResult


@dataclass(frozen=True)
class SummaryRow:
    """Per-sample-size summary over replications.

    Moments are over real-status replications (sample sd, divisor R-1).
    ``pct_complex`` counts discarded replications; the in-interval
    percentages count, over all replications, estimates that are real and
    inside their theoretical interval (alpha0 >= 0, 0 < alpha1 < the
    consistency bound, l1 > 0).  alpha1 is counted through its real root
    even when the l1 radicand made the full triple complex, which is why its
    percentage can exceed 100 - pct_complex.
    """

    sample_size: int
    n_replications: int
    n_real: int
    n_complex: int
    mean_alpha0: float | None
    sd_alpha0: float | None
    mean_alpha1: float | None
    sd_alpha1: float | None
    mean_l1: float | None
    sd_l1: float | None
    pct_complex: float
    pct_in_interval_alpha0: float
    pct_in_interval_alpha1: float
    pct_in_interval_l1: float


def run_replication(cfg: ExperimentConfig, size_index: int, replication: int) -> ReplicationRecord:
    """Simulate and estimate one independent replication."""
    sample_size = cfg.sample_sizes[size_index]
    seed = SeedSpec(cfg.master_seed, replication).child(size_index)
    path = simulate_recursive(
        cfg.params,
        cfg.liquidity,
        seed,
        sample_size,
        init_x_squared=cfg.init_x_squared,
        burn_in=cfg.burn_in,
    )
    max_lag = min(abs(cfg.lag) + ACF_LAG_MARGIN, sample_size - 2)
    acf = estimate_acf(path.x_squared, max_lag)
    inputs = EstimatorInputs(acf, theoretical_covariance(cfg.liquidity), cfg.noise)
    result = estimate_def1(inputs, cfg.lag)
    return ReplicationRecord(sample_size, replication, result)


def run_experiment(
    cfg: ExperimentConfig,
    out_dir: Path | str | None = None,
    workers: int = 1,
    histogram_bins: int = 30,
) -> tuple[list[SummaryRow], list[ReplicationRecord]]:
    """Run the full sweep; optionally write raw.csv, summary.csv and histograms.

    Output is sorted by (sample size, replication) before any writing, so a
    fixed master seed gives byte-identical files at any worker count.
    """
    validate_regime(cfg.params, cfg.noise, "consistency")
    items = [
        (size_index, rep)
        for size_index in range(len(cfg.sample_sizes))
        for rep in range(cfg.replications)
    ]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(
                pool.map(lambda it: run_replication(cfg, it[0], it[1]), items)
            )
    else:
        records = [run_replication(cfg, si, rep) for si, rep in items]
    records.sort(key=lambda r: (r.sample_size, r.replication))
    rows = summarize(records, cfg.noise)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_raw_csv(out_dir / "raw.csv", records)
        write_summary_csv(out_dir / "summary.csv", rows)
        for size in cfg.sample_sizes:
            size_records = [r for r in records if r.sample_size == size]
            for param in _PARAM_NAMES:
                if not any(r.result.status == STATUS_REAL for r in size_records):
                    continue
                table = emit_histogram(size_records, param, histogram_bins)
                write_histogram_csv(out_dir / f"hist_{param}_{size}.csv", table)
    return rows, records


def summarize(records: list[ReplicationRecord], noise: NoiseMoments) -> list[SummaryRow]:
    """Reduce per-replication records to one row per sample size."""
    if not records:
        raise ValueError("no records to summarize")
    rows = []
    for size in sorted({r.sample_size for r in records}):
        group = [r.result for r in records if r.sample_size == size]
        total = len(group)
        real = [r for r in group if r.status == STATUS_REAL]
        n_complex = sum(1 for r in group if r.status == STATUS_COMPLEX)
        n_degenerate = sum(1 for r in group if r.status == STATUS_DEGENERATE)
        assert n_complex + len(real) + n_degenerate == total
        if len(real) == 1:
            warnings.warn(
                "single real replication: standard deviations reported as 0",
                stacklevel=2,
            )

        def moments(values: list[float]):
            if not values:
                return None, None
            mean = math.fsum(values) / len(values)
            if len(values) == 1:
                return mean, 0.0
            var = math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1)
            return mean, math.sqrt(var)

        mean_a0, sd_a0 = moments([r.alpha0_hat for r in real])
        mean_a1, sd_a1 = moments([r.alpha1_hat for r in real])
        mean_l1, sd_l1 = moments([r.l1_hat for r in real])

        upper = noise.consistency_bound
        ok_a1 = sum(
            1
            for r in group
            if r.alpha1_real is not None and 0.0 < r.alpha1_real < upper
        )
        ok_a0 = sum(
            1 for r in group if r.alpha0_hat is not None and r.alpha0_hat >= 0.0
        )
        ok_l1 = sum(1 for r in group if r.l1_hat is not None and r.l1_hat > 0.0)
        rows.append(
            SummaryRow(
                sample_size=size,
                n_replications=total,
                n_real=len(real),
                n_complex=n_complex,
                mean_alpha0=mean_a0,
                sd_alpha0=sd_a0,
                mean_alpha1=mean_a1,
                sd_alpha1=sd_a1,
                mean_l1=mean_l1,
                sd_l1=sd_l1,
                pct_complex=100.0 * n_complex / total,
                pct_in_interval_alpha0=100.0 * ok_a0 / total,
                pct_in_interval_alpha1=100.0 * ok_a1 / total,
                pct_in_interval_l1=100.0 * ok_l1 / total,
            )
        )
    return rows


def emit_histogram(
    records: list[ReplicationRecord], parameter: str, bins: int
) -> list[tuple[float, float, int]]:
    """Equal-width histogram of one parameter over real-status records."""
    if parameter not in _PARAM_NAMES:
        raise ValueError(f"parameter must be one of {_PARAM_NAMES}")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    attr = f"{parameter}_hat"
    values = [
        getattr(r.result, attr) for r in records if r.result.status == STATUS_REAL
    ]
    if not values:
        raise ValueError("no real estimates to histogram")
    counts, edges = np.histogram(values, bins=bins)
    return [
        (float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(bins)
    ]


# ---------------------------------------------------------------------------
# CSV output (17 significant digits so floats round-trip)

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_raw_csv(path: Path, records: list[ReplicationRecord]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["replication", "N", "alpha0_hat", "alpha1_hat", "l1_hat", "status", "chosen_root"]
        )
        for rec in records:
            res = rec.result
            writer.writerow(
                [
                    rec.replication,
                    rec.sample_size,
                    _fmt(res.alpha0_hat),
                    _fmt(res.alpha1_hat),
                    _fmt(res.l1_hat),
                    res.status,
                    res.chosen_root or "",
                ]
            )


def write_summary_csv(path: Path, rows: list[SummaryRow]) -> None:
    columns = [
        "sample_size",
        "n_replications",
        "n_real",
        "n_complex",
        "mean_alpha0",
        "sd_alpha0",
        "mean_alpha1",
        "sd_alpha1",
        "mean_l1",
        "sd_l1",
        "pct_complex",
        "pct_in_interval_alpha0",
        "pct_in_interval_alpha1",
        "pct_in_interval_l1",
    ]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(getattr(row, col)) for col in columns])


def write_histogram_csv(path: Path, table: list[tuple[float, float, int]]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["bin_left", "bin_right", "count"])
        for left, right, count in table:
            writer.writerow([_fmt(left), _fmt(right), count])


# ---------------------------------------------------------------------------
# Config files: flat "key = value" lines, '#' comments, CLI flags override.

_CONFIG_KEYS = (
    "alpha0",
    "alpha1",
    "l1",
    "liquidity",
    "noise",
    "sample_sizes",
    "replications",
    "lag",
    "master_seed",
    "init_x_squared",
    "burn_in",
)

_DEFAULTS = {
    "noise": "gaussian",
    "lag": "1",
    "master_seed": "0",
    "init_x_squared": "1.7",
    "burn_in": "0",
}


def parse_config_text(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def _parse_noise(name: str) -> NoiseMoments:
    if name.strip().lower() == "gaussian":
        return NoiseMoments.gaussian()
    raise ConfigError(f"unknown noise preset {name!r} (available: gaussian)")


def config_from_values(values: dict[str, str]) -> ExperimentConfig:
    merged = {**_DEFAULTS, **values}
    missing = [
        key
        for key in ("alpha0", "alpha1", "l1", "liquidity", "sample_sizes", "replications")
        if key not in merged
    ]
    if missing:
        raise ConfigError(f"missing required config keys: {', '.join(missing)}")
    try:
        params = ModelParams(
            float(merged["alpha0"]), float(merged["alpha1"]), float(merged["l1"])
        )
        sizes = tuple(
            int(part) for part in merged["sample_sizes"].split(",") if part.strip()
        )
        return ExperimentConfig(
            params=params,
            liquidity=parse_liquidity(merged["liquidity"]),
            noise=_parse_noise(merged["noise"]),
            sample_sizes=sizes,
            replications=int(merged["replications"]),
            lag=int(merged["lag"]),
            master_seed=int(merged["master_seed"]),
            init_x_squared=float(merged["init_x_squared"]),
            burn_in=int(merged["burn_in"]),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc


def load_config(path: Path | str, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    """Read a config file and apply CLI overrides on top."""
    text = Path(path).read_text()
    values = parse_config_text(text)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return config_from_values(values)


def override_config(cfg: ExperimentConfig, **changes) -> ExperimentConfig:
    return replace(cfg, **changes)
