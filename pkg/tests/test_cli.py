import numpy as np
import pytest

from zenonm.cli import main


def _read_table(path):
    header = {}
    columns = None
    rows = []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            if "=" in line:
                key, value = line[1:].split("=", 1)
                header[key.strip()] = value.strip()
            continue
        if columns is None:
            columns = line.split(",")
        else:
            rows.append(line.split(","))
    return header, columns, rows


class TestConfigHandling:
    def test_unknown_key_fails(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("regime = good\nbogus = 1\n")
        assert main(["populations", "--config", str(cfg)]) == 1
        assert "bogus" in capsys.readouterr().err

    def test_bad_regime_fails(self, tmp_path):
        assert main(["populations", "--regime", "shiny",
                     "--out", str(tmp_path / "x.csv")]) == 1

    def test_custom_regime_needs_gamma(self, tmp_path):
        assert main(["populations", "--regime", "custom",
                     "--out", str(tmp_path / "x.csv")]) == 1

    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("regime = bad\ng_over_lambda = 1\nn_grid = 301\n"
                       "t_max_lambda = 5\nseed = 7\n")
        out = tmp_path / "pops.csv"
        assert main(["populations", "--config", str(cfg), "--grid", "201",
                     "--out", str(out)]) == 0
        header, _, rows = _read_table(out)
        assert header["n_grid"] == "201"
        assert header["seed"] == "7"
        assert len(rows) == 201

    def test_missing_config_file(self, tmp_path):
        assert main(["populations", "--config", str(tmp_path / "nope.cfg")]) == 1

    def test_runtime_error_maps_to_exit_2(self, tmp_path, monkeypatch):
        import zenonm.cli as cli
        def boom(config):
            raise RuntimeError("injected")
        monkeypatch.setitem(cli.COMMANDS, "populations", boom)
        assert main(["populations", "--out", str(tmp_path / "x.csv")]) == 2


class TestPopulations:
    def test_initial_row_and_normalisation(self, tmp_path):
        out = tmp_path / "pops.csv"
        assert main(["populations", "--regime", "good", "--g", "1",
                     "--grid", "2001", "--tmax", "10", "--out", str(out)]) == 0
        header, columns, rows = _read_table(out)
        assert columns == ["lambda_t", "pop_a", "pop_b_total", "pop_m_total"]
        first = [float(v) for v in rows[0]]
        assert first == [0.0, 1.0, 0.0, 0.0]
        data = np.array([[float(v) for v in row] for row in rows])
        totals = data[:, 1:].sum(axis=1)
        assert np.abs(totals - 1.0).max() < 1e-4
        # good cavity at weak coupling: deep depletion followed by revivals
        pop_a = data[:, 1]
        first_min = int(np.argmax(pop_a < 1e-2))
        assert first_min > 0
        tail = pop_a[first_min:]
        assert np.any((tail[1:-1] > tail[:-2]) & (tail[1:-1] > tail[2:]))

    def test_bad_cavity_monotone_decay(self, tmp_path):
        out = tmp_path / "pops.csv"
        assert main(["populations", "--regime", "bad", "--g", "0.1",
                     "--grid", "2001", "--out", str(out)]) == 0
        _, _, rows = _read_table(out)
        pop_a = np.array([float(r[1]) for r in rows])
        assert np.diff(pop_a).max() <= 1e-6


class TestTraceDistance:
    def test_columns_start_at_one(self, tmp_path):
        out = tmp_path / "td.csv"
        assert main(["trace-distance", "--regime", "good", "--g", "1,10",
                     "--grid", "1001", "--out", str(out)]) == 0
        _, columns, rows = _read_table(out)
        assert columns == ["lambda_t", "D_g1", "D_g10"]
        assert float(rows[0][1]) == 1.0
        assert float(rows[0][2]) == 1.0

    def test_oscillations_and_zeno_protection(self, tmp_path):
        out = tmp_path / "td.csv"
        assert main(["trace-distance", "--regime", "good", "--g", "1,10",
                     "--grid", "4001", "--out", str(out)]) == 0
        _, _, rows = _read_table(out)
        data = np.array([[float(v) for v in row] for row in rows])
        weak = data[:, 1]
        interior = weak[1:-1]
        assert np.sum((interior > weak[:-2]) & (interior > weak[2:])) > 5
        # stronger control freezes the decay, so more distance survives
        assert data[-1, 2] > data[-1, 1]


class TestBlochMap:
    def test_row_count_and_normalisation(self, tmp_path):
        out = tmp_path / "map.csv"
        assert main(["bloch-map", "--regime", "good", "--g", "10",
                     "--samples", "50", "--grid", "1001", "--out", str(out)]) == 0
        _, columns, rows = _read_table(out)
        assert columns == ["rx", "ry", "rz", "raw_value", "normalized_value"]
        assert len(rows) == 51
        normalized = np.array([float(r[4]) for r in rows])
        assert normalized.max() == 1.0
        assert normalized.min() >= 0.0
        best = max(rows, key=lambda r: float(r[4]))
        assert abs(float(best[2])) > 0.95

    def test_default_sample_count(self, tmp_path):
        out = tmp_path / "map.csv"
        assert main(["bloch-map", "--regime", "good", "--g", "10",
                     "--out", str(out)]) == 0
        _, _, rows = _read_table(out)
        assert len(rows) == 501  # default 500 samples plus the poles row


class TestBlpSweep:
    def test_empty_sweep_gives_header_only(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("regime = good\ng_over_lambda =\nn_grid = 301\nn_samples = 5\n")
        out = tmp_path / "sweep.csv"
        assert main(["blp-sweep", "--config", str(cfg), "--out", str(out)]) == 0
        _, columns, rows = _read_table(out)
        assert columns == ["g_over_lambda", "N_good"]
        assert rows == []

    def test_two_regimes_and_companion_file(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["blp-sweep", "--regime", "good,bad", "--g", "0,1",
                     "--samples", "20", "--grid", "501", "--out", str(out)]) == 0
        _, columns, rows = _read_table(out)
        assert columns == ["g_over_lambda", "N_good", "N_bad"]
        assert len(rows) == 2
        companion = tmp_path / "sweep_directions.csv"
        _, dir_columns, dir_rows = _read_table(companion)
        assert dir_columns == ["g_over_lambda", "regime", "rx", "ry", "rz"]
        assert len(dir_rows) == 4


class TestValidate:
    def test_quick_bad_cavity_passes(self, tmp_path):
        cfg = tmp_path / "val.cfg"
        cfg.write_text(
            "regime = bad\ng_over_lambda = 1\nt_max_lambda = 8\nn_grid = 1601\n"
            "n_modes = 2000\nwindow_halfwidth_lambda = 50\n")
        out = tmp_path / "report.txt"
        assert main(["validate", "--config", str(cfg), "--out", str(out)]) == 0
        text = out.read_text()
        assert "PASS overall" in text
        assert "FAIL" not in text

    def test_coarse_oracle_step_surfaces_norm_drift(self, tmp_path):
        cfg = tmp_path / "val.cfg"
        cfg.write_text(
            "regime = good\ng_over_lambda = 1\nt_max_lambda = 5\nn_grid = 1001\n"
            "n_modes = 300\nwindow_halfwidth_lambda = 50\noracle_step_lambda = 0.05\n")
        out = tmp_path / "report.txt"
        assert main(["validate", "--config", str(cfg), "--out", str(out)]) == 3
        text = out.read_text()
        assert "FAIL norm_drift" in text
