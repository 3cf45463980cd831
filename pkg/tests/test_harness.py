import json
import math

import pytest

from uavsec import ScenarioGeometry
from uavsec.harness import (
    CSV_HEADER,
    ConfigError,
    ExperimentConfig,
    Strategy,
    dbm_to_mw,
    parse_config_text,
    parse_strategy,
    read_results_csv,
    run_experiment,
    serialize_config,
    summarize,
    with_overrides,
    write_results,
)
from uavsec.cli import main


SHORT_CONFIG = """
# ten-point flight for fast tests
geometry.flight_end=80,0,20
sweep.power_dbm=20
sweep.antennas=4
strategies=fixed:0.5
"""


class TestConfigParsing:
    def test_empty_text_gives_defaults(self):
        cfg = parse_config_text("")
        assert cfg == ExperimentConfig()
        assert cfg.noise_dbm_bob == -110.0
        assert cfg.power_sweep_dbm == (10.0, 20.0, 30.0)
        assert [s.name for s in cfg.strategies] == ["ais", "fixed:0.5", "fixed:0.9"]

    def test_invalid_speed_reported(self):
        with pytest.raises(ConfigError, match="speed must be positive"):
            parse_config_text("geometry.speed=0")

    def test_unknown_key_reported(self):
        with pytest.raises(ConfigError, match="unknown config key"):
            parse_config_text("geometry.velocity=8")

    def test_malformed_line_reported(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config_text("just words")

    def test_round_trip_through_serializer(self):
        cfg = parse_config_text(SHORT_CONFIG)
        assert parse_config_text(serialize_config(cfg)) == cfg
        default = ExperimentConfig()
        assert parse_config_text(serialize_config(default)) == default

    def test_strategy_tokens(self):
        assert parse_strategy("ais") == Strategy("ais")
        assert parse_strategy("grid_oracle") == Strategy("grid_oracle")
        assert parse_strategy("fixed:0.25") == Strategy("fixed", 0.25)
        assert parse_strategy("fixed(0.25)") == Strategy("fixed", 0.25)
        assert Strategy("fixed", 0.5).name == "fixed:0.5"
        with pytest.raises(ConfigError):
            parse_strategy("fixed:1.5")
        with pytest.raises(ConfigError):
            parse_strategy("annealing")

    def test_dbm_conversion(self):
        assert dbm_to_mw(0.0) == 1.0
        assert abs(dbm_to_mw(30.0) - 1000.0) < 1e-9
        assert abs(dbm_to_mw(-110.0) - 1e-11) < 1e-22

    def test_overrides(self):
        cfg = ExperimentConfig()
        out = with_overrides(cfg, power_sweep_dbm=[5.0], antenna_sweep=[4, 8])
        assert out.power_sweep_dbm == (5.0,)
        assert out.antenna_sweep == (4, 8)
        assert with_overrides(cfg) == cfg


class TestRunExperiment:
    def test_record_count_full_trajectory(self):
        cfg = parse_config_text(
            "sweep.power_dbm=20\nsweep.antennas=8\nstrategies=fixed:0.5\n"
        )
        records = run_experiment(cfg)
        assert len(records) == 100
        assert [r.n for r in records] == list(range(1, 101))
        assert all(r.strategy == "fixed:0.5" and r.m == 8 for r in records)

    def test_record_count_is_cartesian_product(self):
        cfg = parse_config_text(
            "geometry.flight_end=80,0,20\n"
            "sweep.power_dbm=10,20\nsweep.antennas=4,8\n"
            "strategies=fixed:0.5,fixed:0.9\n"
        )
        records = run_experiment(cfg)
        assert len(records) == 2 * 2 * 2 * 10

    def test_eve_on_trajectory_kills_secrecy(self):
        # Eve placed exactly where Bob passes at n=50: identical channels
        cfg = parse_config_text(
            "geometry.eve=400,0,20\nsweep.power_dbm=20\nsweep.antennas=8\n"
            "strategies=fixed:0.5\n"
        )
        records = run_experiment(cfg)
        at_eve = [r for r in records if r.n == 50]
        assert len(at_eve) == 1
        assert at_eve[0].secrecy <= 1e-9

    def test_ais_close_to_grid_oracle(self):
        cfg = parse_config_text(
            "geometry.flight_end=80,0,20\nsweep.power_dbm=20\nsweep.antennas=8\n"
            "strategies=ais,grid_oracle\ngrid.step=1e-4\n"
        )
        records = run_experiment(cfg)
        ais = {r.n: r for r in records if r.strategy == "ais"}
        grid = {r.n: r for r in records if r.strategy == "grid_oracle"}
        assert set(ais) == set(grid) and len(ais) == 10
        for n in ais:
            assert abs(ais[n].secrecy - grid[n].secrecy) <= 1e-3
            assert ais[n].converged and grid[n].converged

    def test_deterministic_and_parallel_consistent(self):
        cfg = parse_config_text(SHORT_CONFIG)
        serial_a = run_experiment(cfg)
        serial_b = run_experiment(cfg)
        parallel = run_experiment(cfg, parallel=2)
        assert serial_a == serial_b == parallel

    def test_summary_mean_matches_records(self):
        cfg = parse_config_text(SHORT_CONFIG)
        records = run_experiment(cfg)
        (row,) = summarize(records)
        assert row["points"] == 10
        assert abs(
            row["mean_secrecy_rate"] - math.fsum(r.secrecy for r in records) / 10
        ) < 1e-12
        assert row["ssr_sum_clamped"] <= row["ssr_per_point_clamped"] + 1e-12


class TestResultFiles:
    def test_csv_shape(self, tmp_path):
        cfg = parse_config_text(SHORT_CONFIG)
        records = run_experiment(cfg)[:1]
        out = tmp_path / "r.csv"
        write_results(records, "csv", out)
        lines = out.read_text().splitlines()
        assert len(lines) == 2
        assert lines[0] == CSV_HEADER
        assert len(lines[1].split(",")) == 11

    def test_csv_round_trip_byte_identical(self, tmp_path):
        cfg = parse_config_text(SHORT_CONFIG)
        records = run_experiment(cfg)
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_results(records, "csv", first)
        write_results(read_results_csv(first), "csv", second)
        assert first.read_bytes() == second.read_bytes()

    def test_json_fields_match_header(self, tmp_path):
        cfg = parse_config_text(SHORT_CONFIG)
        records = run_experiment(cfg)
        out = tmp_path / "r.json"
        write_results(records, "json", out)
        rows = json.loads(out.read_text())
        assert len(rows) == len(records)
        assert list(rows[0].keys()) == CSV_HEADER.split(",")

    def test_empty_and_bad_format_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            write_results([], "csv", tmp_path / "x.csv")
        cfg = parse_config_text(SHORT_CONFIG)
        records = run_experiment(cfg)[:1]
        with pytest.raises(ValueError):
            write_results(records, "yaml", tmp_path / "x.yaml")

    def test_reader_rejects_foreign_header(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_results_csv(bad)


class TestCli:
    def _write_config(self, tmp_path, text=SHORT_CONFIG):
        path = tmp_path / "exp.cfg"
        path.write_text(text)
        return path

    def test_run_success(self, tmp_path, capsys):
        cfg_path = self._write_config(tmp_path)
        out = tmp_path / "results.csv"
        assert main(["run", "--config", str(cfg_path), "--out", str(out)]) == 0
        assert out.read_text().splitlines()[0] == CSV_HEADER
        stdout = capsys.readouterr().out
        assert "wrote 10 records" in stdout
        assert "mean_SR=" in stdout

    def test_bad_config_exits_nonzero(self, tmp_path, capsys):
        cfg_path = self._write_config(tmp_path, "geometry.speed=0\n")
        assert main(["run", "--config", str(cfg_path)]) == 1
        assert "speed must be positive" in capsys.readouterr().err

    def test_missing_config_exits_nonzero(self, tmp_path, capsys):
        assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_sweep_power_override(self, tmp_path):
        cfg_path = self._write_config(tmp_path)
        out = tmp_path / "p.csv"
        code = main(
            ["sweep-power", "--config", str(cfg_path), "--powers", "0,30",
             "--out", str(out)]
        )
        assert code == 0
        records = read_results_csv(out)
        assert sorted({r.ps_dbm for r in records}) == [0.0, 30.0]
        assert len(records) == 20

    def test_sweep_antennas_override(self, tmp_path):
        cfg_path = self._write_config(tmp_path)
        out = tmp_path / "m.json"
        code = main(
            ["sweep-antennas", "--config", str(cfg_path), "--antennas", "2,4",
             "--out", str(out), "--format", "json"]
        )
        assert code == 0
        rows = json.loads(out.read_text())
        assert sorted({row["M"] for row in rows}) == [2, 4]
        assert len(rows) == 20
