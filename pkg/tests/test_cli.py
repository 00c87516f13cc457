import csv
import json

from flatqst.cli import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main


def run(args):
    return main(args)


class TestTrace:
    def test_writes_deterministic_csv(self, tmp_path, capsys):
        out = tmp_path / "trace.csv"
        args = [
            "trace", "--N", "6", "--W", "0.2", "--seed", "7",
            "--window", "500", "--out", str(out),
        ]
        assert run(args) == EXIT_OK
        first = out.read_bytes()
        assert run(args) == EXIT_OK
        assert out.read_bytes() == first

        with open(out) as handle:
            rows = list(csv.DictReader(handle))
        times = [float(r["t"]) for r in rows]
        assert times == sorted(times)
        assert all(0.0 <= float(r["fR_abs"]) <= 1.0 for r in rows)
        assert all(0.5 <= float(r["fidelity"]) <= 1.0 for r in rows)
        printed = capsys.readouterr().out
        assert "tau" in printed and "Csr" in printed

    def test_ordered_chain_reports_no_transfer(self, tmp_path, capsys):
        out = tmp_path / "trace.csv"
        assert run(
            ["trace", "--N", "4", "--W", "0", "--window", "100", "--out", str(out)]
        ) == EXIT_OK
        printed = capsys.readouterr().out
        assert "no-transfer" in printed
        with open(out) as handle:
            rows = list(csv.DictReader(handle))
        assert all(float(r["envelope"]) == 0.0 for r in rows)

    def test_invalid_config_exits_nonzero(self, capsys):
        assert run(["trace", "--N", "1"]) == EXIT_USAGE
        assert capsys.readouterr().err.strip() != ""


class TestScan:
    def test_schema_and_determinism(self, tmp_path):
        out = tmp_path / "scan.csv"
        args = [
            "scan", "--N", "6", "--W", "0.3", "--seed", "3",
            "--window", "800", "--out", str(out),
        ]
        assert run(args) == EXIT_OK
        with open(out) as handle:
            (row,) = list(csv.DictReader(handle))
        assert set(row) == {"seed", "W", "N", "g", "Fmax", "tStar"}
        assert 0.5 <= float(row["Fmax"]) <= 1.0
        first = out.read_bytes()
        assert run(args) == EXIT_OK
        assert out.read_bytes() == first


class TestEnsembleCommand:
    def test_records_and_summary(self, tmp_path):
        out = tmp_path / "records.csv"
        assert run(
            [
                "ensemble", "--N", "5", "--W", "0.2", "--seed", "5",
                "--samples", "12", "--no-dynamics", "--out", str(out),
            ]
        ) == EXIT_OK
        with open(out) as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 12
        summary = json.loads((tmp_path / "records_summary.json").read_text())
        assert summary["count"] == 12
        assert summary["params"]["N"] == 5
        assert "Csr" in summary["observables"]

    def test_parallel_matches_serial(self, tmp_path):
        base = [
            "ensemble", "--N", "5", "--W", "0.3", "--seed", "8",
            "--samples", "10", "--no-dynamics",
        ]
        serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
        assert run(base + ["--out", str(serial)]) == EXIT_OK
        assert run(base + ["--threads", "2", "--out", str(parallel)]) == EXIT_OK
        assert serial.read_bytes() == parallel.read_bytes()


class TestSweepCommand:
    def test_rows_with_mad_columns(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run(
            [
                "sweep", "--N", "5", "--W-list", "0.1", "0.3", "--seed", "2",
                "--samples", "25", "--observable", "deltaEps", "--observable", "Csr",
                "--out", str(out),
            ]
        ) == EXIT_OK
        with open(out) as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 2
        assert "deltaEps_over_g_mean" in rows[0]
        assert "deltaEps_over_g_mad" in rows[0]
        assert "Csr_mad" in rows[0]
        payload = json.loads((tmp_path / "sweep.json").read_text())
        assert len(payload["rows"]) == 2

    def test_multiple_sizes_in_one_table(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run(
            [
                "sweep", "--N-list", "4", "6", "--W-list", "0.2", "--seed", "2",
                "--samples", "10", "--observable", "deltaEps", "--out", str(out),
            ]
        ) == EXIT_OK
        with open(out) as handle:
            rows = list(csv.DictReader(handle))
        assert [int(r["N"]) for r in rows] == [4, 6]

    def test_empty_width_list_is_usage_error(self):
        assert run(["sweep", "--W-list"]) == EXIT_USAGE


class TestValidateCommand:
    def test_default_suite_passes(self, capsys):
        assert run(
            ["validate", "--N", "6", "--W", "0.2", "--seed", "1", "--samples", "5"]
        ) == EXIT_OK
        printed = capsys.readouterr().out
        assert printed.count("[PASS]") == 6

    def test_injected_asymmetry_fails_named_invariant(self, capsys):
        code = run(
            [
                "validate", "--N", "6", "--W", "0.2", "--seed", "1",
                "--samples", "3", "--inject-asymmetry",
            ]
        )
        assert code == EXIT_VALIDATION
        printed = capsys.readouterr().out
        assert "[FAIL] hamiltonian-symmetry" in printed

    def test_unreachable_tolerance_reports_failures(self, capsys):
        code = run(
            [
                "validate", "--N", "6", "--W", "0.2", "--seed", "1",
                "--samples", "3", "--tol", "1e-15",
            ]
        )
        assert code == EXIT_VALIDATION
        assert "[FAIL]" in capsys.readouterr().out


class TestConfigFile:
    def test_key_value_defaults_applied(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("N=5\nW=0.25\nseed=4\nwindow=200\n")
        out = tmp_path / "scan.csv"
        assert run(["scan", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
        with open(out) as handle:
            (row,) = list(csv.DictReader(handle))
        assert row["N"] == "5"
        assert float(row["W"]) == 0.25

    def test_explicit_flag_beats_config(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("N=5\nW=0.25\nwindow=200\n")
        out = tmp_path / "scan.csv"
        assert run(
            ["scan", "--config", str(cfg), "--N", "7", "--out", str(out)]
        ) == EXIT_OK
        with open(out) as handle:
            (row,) = list(csv.DictReader(handle))
        assert row["N"] == "7"

    def test_missing_config_is_usage_error(self, capsys):
        assert run(["scan", "--config", "/nonexistent.cfg"]) == EXIT_USAGE
        assert "config" in capsys.readouterr().err
