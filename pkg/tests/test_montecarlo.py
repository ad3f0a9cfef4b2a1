import math

import pytest

from archliq import (
    CompensatedPoissonSquared,
    ConfigError,
    EstimationResult,
    ExperimentConfig,
    FgnSquared,
    ModelParams,
    NoiseMoments,
    RegimeError,
    ReplicationRecord,
    WhiteSquared,
    emit_histogram,
    run_experiment,
    run_replication,
    summarize,
)
from archliq.estimators import STATUS_COMPLEX, STATUS_REAL
from archliq.montecarlo import (
    config_from_values,
    load_config,
    override_config,
    parse_config_text,
)

CONFIG_TEXT = """\
# experiment description
alpha0 = 1.0
alpha1 = 0.1
l1 = 0.5
liquidity = fgn:H=0.3333333333333333
noise = gaussian          # innovation preset
sample_sizes = 60,120
replications = 8
lag = 1
master_seed = 77
init_x_squared = 1.7
burn_in = 0
"""


def real_record(size, rep, alpha0, alpha1, l1):
    return ReplicationRecord(
        size,
        rep,
        EstimationResult(
            status=STATUS_REAL,
            alpha0_hat=alpha0,
            alpha1_hat=alpha1,
            l1_hat=l1,
            chosen_root="minus",
            discriminant=1.0,
            alpha1_real=alpha1,
        ),
    )


def complex_record(size, rep, alpha1_real=None):
    return ReplicationRecord(
        size,
        rep,
        EstimationResult(
            status=STATUS_COMPLEX,
            discriminant=-1.0,
            reason="negative_discriminant",
            alpha1_real=alpha1_real,
        ),
    )


@pytest.fixture
def small_config():
    return ExperimentConfig(
        params=ModelParams(1.0, 0.1, 0.5),
        liquidity=WhiteSquared(),
        noise=NoiseMoments.gaussian(),
        sample_sizes=(60, 120),
        replications=8,
        master_seed=77,
    )


class TestConfigParsing:
    def test_full_round_trip(self):
        cfg = config_from_values(parse_config_text(CONFIG_TEXT))
        assert cfg.params == ModelParams(1.0, 0.1, 0.5)
        assert cfg.liquidity == FgnSquared(0.3333333333333333)
        assert cfg.sample_sizes == (60, 120)
        assert cfg.replications == 8
        assert cfg.master_seed == 77

    def test_defaults_apply(self):
        cfg = config_from_values(
            parse_config_text(
                "alpha0 = 1\nalpha1 = 0.1\nl1 = 0.5\nliquidity = white\n"
                "sample_sizes = 50\nreplications = 2\n"
            )
        )
        assert cfg.lag == 1
        assert cfg.init_x_squared == 1.7
        assert cfg.burn_in == 0

    @pytest.mark.parametrize(
        "line", ["alpha9 = 1", "alpha0", "alpha0 = ", "= 5"]
    )
    def test_bad_lines(self, line):
        with pytest.raises(ConfigError):
            parse_config_text(line)

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config_text("alpha0 = 1\nalpha0 = 2\n")

    def test_missing_required(self):
        with pytest.raises(ConfigError, match="missing"):
            config_from_values({"alpha0": "1"})

    def test_unknown_noise(self):
        with pytest.raises(ConfigError, match="noise"):
            config_from_values(
                {
                    "alpha0": "1",
                    "alpha1": "0.1",
                    "l1": "0.5",
                    "liquidity": "white",
                    "sample_sizes": "50",
                    "replications": "1",
                    "noise": "student",
                }
            )

    def test_file_overrides(self, tmp_path):
        path = tmp_path / "exp.cfg"
        path.write_text(CONFIG_TEXT)
        cfg = load_config(path, {"replications": "3", "master_seed": "9"})
        assert cfg.replications == 3
        assert cfg.master_seed == 9

    def test_validation(self):
        params = ModelParams(1.0, 0.1, 0.5)
        noise = NoiseMoments.gaussian()
        with pytest.raises(ConfigError):
            ExperimentConfig(params, WhiteSquared(), noise, (50,), 0)
        with pytest.raises(ConfigError):
            ExperimentConfig(params, WhiteSquared(), noise, (3,), 5)
        with pytest.raises(ConfigError):
            ExperimentConfig(params, WhiteSquared(), noise, (), 5)
        with pytest.raises(ConfigError):
            ExperimentConfig(params, WhiteSquared(), noise, (50,), 5, lag=0)


class TestSummarize:
    def test_hand_moments(self):
        records = [
            real_record(100, 0, 1.0, 1.0, 1.0),
            real_record(100, 1, 3.0, 3.0, 3.0),
        ]
        row = summarize(records, NoiseMoments.gaussian())[0]
        assert row.mean_alpha0 == pytest.approx(2.0)
        assert row.sd_alpha0 == pytest.approx(math.sqrt(2.0))
        assert row.mean_l1 == pytest.approx(2.0)
        assert row.pct_complex == 0.0

    def test_all_complex(self):
        records = [complex_record(100, rep) for rep in range(4)]
        row = summarize(records, NoiseMoments.gaussian())[0]
        assert row.pct_complex == 100.0
        assert row.n_real == 0
        assert row.mean_alpha0 is None
        assert row.sd_alpha1 is None
        assert row.pct_in_interval_l1 == 0.0

    def test_single_real_warns_and_reports_zero_sd(self):
        records = [real_record(100, 0, 1.0, 0.1, 0.5)]
        with pytest.warns(UserWarning, match="single"):
            row = summarize(records, NoiseMoments.gaussian())[0]
        assert row.sd_alpha0 == 0.0

    def test_accounting_identity(self, small_config):
        _, records = run_experiment(small_config)
        rows = summarize(records, small_config.noise)
        for row in rows:
            n_degenerate = row.n_replications - row.n_real - row.n_complex
            assert row.n_complex + row.n_real + n_degenerate == row.n_replications
            assert row.pct_complex == 100.0 * row.n_complex / row.n_replications

    @pytest.mark.filterwarnings("ignore:single real replication")
    def test_alpha1_interval_counts_radicand_failures(self):
        # a replication whose l1 radicand failed still contributes its real
        # alpha1 root to the alpha1 interval percentage
        records = [
            real_record(100, 0, 1.0, 0.1, 0.5),
            complex_record(100, 1, alpha1_real=0.2),
            complex_record(100, 2, alpha1_real=0.9),  # outside the bound
            complex_record(100, 3),
        ]
        row = summarize(records, NoiseMoments.gaussian())[0]
        assert row.pct_in_interval_alpha1 == pytest.approx(50.0)
        assert row.pct_in_interval_l1 == pytest.approx(25.0)
        assert row.pct_complex == pytest.approx(75.0)


class TestHistogram:
    def test_single_record(self):
        table = emit_histogram([real_record(100, 0, 1.0, 0.1, 0.5)], "alpha1", 5)
        assert sum(count for _, _, count in table) == 1

    def test_one_bin_counts_everything(self):
        records = [real_record(100, i, 1.0, 0.1 * i, 0.5) for i in range(7)]
        table = emit_histogram(records, "alpha1", 1)
        assert len(table) == 1
        assert table[0][2] == 7

    def test_counts_sum_to_real_records(self):
        records = [real_record(100, i, 1.0, 0.01 * i, 0.5) for i in range(25)]
        records.append(complex_record(100, 99))
        table = emit_histogram(records, "alpha1", 6)
        assert sum(count for _, _, count in table) == 25

    def test_no_real_records(self):
        with pytest.raises(ValueError):
            emit_histogram([complex_record(100, 0)], "alpha1", 5)

    def test_unknown_parameter(self):
        with pytest.raises(ValueError):
            emit_histogram([real_record(100, 0, 1, 0.1, 0.5)], "beta", 5)


class TestRunExperiment:
    def test_regime_gate(self, small_config):
        bad = override_config(small_config, params=ModelParams(1.0, 0.5, 0.5))
        with pytest.raises(RegimeError):
            run_experiment(bad)

    def test_byte_identical_reruns(self, small_config, tmp_path):
        run_experiment(small_config, out_dir=tmp_path / "a")
        run_experiment(small_config, out_dir=tmp_path / "b")
        for name in ("raw.csv", "summary.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_parallel_matches_serial(self, small_config, tmp_path):
        run_experiment(small_config, out_dir=tmp_path / "serial", workers=1)
        run_experiment(small_config, out_dir=tmp_path / "parallel", workers=4)
        assert (tmp_path / "serial" / "raw.csv").read_bytes() == (
            tmp_path / "parallel" / "raw.csv"
        ).read_bytes()

    def test_raw_csv_layout(self, small_config, tmp_path):
        run_experiment(small_config, out_dir=tmp_path)
        lines = (tmp_path / "raw.csv").read_text().splitlines()
        assert lines[0] == "replication,N,alpha0_hat,alpha1_hat,l1_hat,status,chosen_root"
        assert len(lines) == 1 + 2 * small_config.replications
        # sorted by (N, replication)
        keys = [tuple(map(int, line.split(",")[:2]))[::-1] for line in lines[1:]]
        assert keys == sorted(keys)

    def test_histogram_files_written(self, small_config, tmp_path):
        run_experiment(small_config, out_dir=tmp_path)
        for size in small_config.sample_sizes:
            for param in ("alpha0", "alpha1", "l1"):
                path = tmp_path / f"hist_{param}_{size}.csv"
                assert path.exists()
                header = path.read_text().splitlines()[0]
                assert header == "bin_left,bin_right,count"

    def test_matches_direct_replication(self, small_config):
        _, records = run_experiment(small_config)
        probe = run_replication(small_config, 1, 3)
        match = next(
            r
            for r in records
            if r.sample_size == small_config.sample_sizes[1] and r.replication == 3
        )
        assert match.result == probe.result

    def test_poisson_runs(self, small_config):
        cfg = override_config(small_config, liquidity=CompensatedPoissonSquared(1.0))
        rows, _ = run_experiment(cfg)
        assert len(rows) == 2
