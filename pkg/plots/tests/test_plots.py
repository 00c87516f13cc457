import pytest

from flatqst_plots import SchemaError, rebuild_all
from flatqst_plots.cli import main
from flatqst_plots.figures import (
    plot_fidelity_sweep,
    plot_gap_sweep,
    plot_histogram,
    plot_pdf,
    plot_trace,
)
from flatqst_plots.readers import read_sweep_csv, read_trace_csv
from flatqst_plots.style import ERRORBAR_GID, THRESHOLD_GID


class TestFigureKinds:
    def test_trace_figure(self, results_dir, tmp_path):
        out = tmp_path / "trace.svg"
        plot_trace([results_dir / "trace.csv"], out)
        assert out.exists() and out.read_text().startswith("<?xml")

    def test_trace_overlay_two_inputs(self, results_dir, tmp_path):
        out = tmp_path / "overlay.svg"
        trace = results_dir / "trace.csv"
        plot_trace([trace, trace], out, labels=["first", "second"])
        svg = out.read_text()
        assert "first" in svg and "second" in svg

    def test_pdf_figure_labels_widths(self, results_dir, tmp_path):
        out = tmp_path / "pdf.svg"
        plot_pdf(
            [results_dir / "records_a_summary.json", results_dir / "records_b_summary.json"],
            out,
        )
        svg = out.read_text()
        assert "W = 0.15" in svg and "W = 0.35" in svg

    def test_gap_sweep_has_mad_bars_and_series_per_n(self, results_dir, tmp_path):
        out = tmp_path / "gap.svg"
        plot_gap_sweep(results_dir / "sweep.csv", out)
        svg = out.read_text()
        assert ERRORBAR_GID in svg
        assert "N = 4" in svg and "N = 5" in svg

    def test_fidelity_sweep_has_threshold(self, results_dir, tmp_path):
        out = tmp_path / "fid.svg"
        plot_fidelity_sweep(results_dir / "sweep.csv", out)
        svg = out.read_text()
        assert THRESHOLD_GID in svg
        assert ERRORBAR_GID in svg

    def test_histogram_has_threshold(self, results_dir, tmp_path):
        out = tmp_path / "hist.svg"
        plot_histogram(results_dir / "records_a_summary.json", out)
        assert THRESHOLD_GID in out.read_text()


class TestSchemaGuards:
    def test_empty_trace_rejected(self, tmp_path):
        bad = tmp_path / "empty.csv"
        bad.write_text("t,fR_abs,fidelity,envelope\n")
        with pytest.raises(SchemaError, match="no data rows"):
            read_trace_csv(bad)

    def test_wrong_columns_rejected(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        with pytest.raises(SchemaError):
            read_trace_csv(bad)

    def test_sweep_needs_observable_columns(self, tmp_path):
        bad = tmp_path / "sweep.csv"
        bad.write_text("N,W,samples\n4,0.1,2\n")
        with pytest.raises(SchemaError, match="lacks column"):
            read_sweep_csv(bad, "Fmax")

    def test_cli_reports_schema_errors(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        assert main(["trace", "--input", str(bad)]) == 1
        assert "error" in capsys.readouterr().err


class TestDriver:
    def test_rebuilds_all_five_kinds(self, results_dir, tmp_path):
        written = rebuild_all(results_dir, tmp_path / "figs")
        names = sorted(p.name for p in written)
        assert "trace.svg" in names                      # trace-envelope
        assert "lambda_pdf.svg" in names                 # pdf
        assert "sweep_gap.svg" in names                  # gap-sweep
        assert "sweep_fidelity.svg" in names             # fidelity-sweep
        assert any(n.endswith("_fmax_hist.svg") for n in names)  # histogram
        fidelity_svg = (tmp_path / "figs" / "sweep_fidelity.svg").read_text()
        assert THRESHOLD_GID in fidelity_svg
        assert ERRORBAR_GID in fidelity_svg

    def test_byte_stable_regeneration(self, results_dir, tmp_path):
        first = rebuild_all(results_dir, tmp_path / "one")
        second = rebuild_all(results_dir, tmp_path / "two")
        for a, b in zip(first, second):
            assert a.read_bytes() == b.read_bytes()

    def test_empty_results_dir_errors(self, tmp_path):
        with pytest.raises(SchemaError, match="no engine outputs"):
            rebuild_all(tmp_path / "nothing_here", tmp_path / "figs")

    def test_cli_driver(self, results_dir, tmp_path, capsys):
        assert main(["all", "--results", str(results_dir), "--out", str(tmp_path / "f")]) == 0
        assert (tmp_path / "f" / "lambda_pdf.svg").exists()
