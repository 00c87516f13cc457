"""Rebuild every figure kind from a results directory.

Filename conventions consumed (all produced by the flatqst CLI):
    trace*.csv           -> trace-envelope figure per file
    *_summary.json       -> |Lambda| PDF overlay (all files) + Fmax histogram per file
    sweep*.csv           -> gap sweep and, when the columns exist, fidelity sweep
Outputs land in the given figure directory as SVG.
"""

from __future__ import annotations

from pathlib import Path

from . import figures, readers


def rebuild_all(results_dir, figures_dir) -> list[Path]:
    results = Path(results_dir)
    out_dir = Path(figures_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    for trace in sorted(results.glob("trace*.csv")):
        out = out_dir / f"{trace.stem}.svg"
        figures.plot_trace([trace], out)
        written.append(out)

    summaries = sorted(results.glob("*_summary.json"))
    if summaries:
        pdf_out = out_dir / "lambda_pdf.svg"
        figures.plot_pdf(summaries, pdf_out)
        written.append(pdf_out)
        for summary in summaries:
            payload = readers.read_summary_json(summary)
            if "Fmax" in payload.get("histograms", {}):
                out = out_dir / f"{summary.stem.replace('_summary', '')}_fmax_hist.svg"
                figures.plot_histogram(summary, out)
                written.append(out)

    for sweep in sorted(results.glob("sweep*.csv")):
        header = sweep.read_text().splitlines()[0].split(",")
        if "deltaEps_over_g_mean" in header:
            out = out_dir / f"{sweep.stem}_gap.svg"
            figures.plot_gap_sweep(sweep, out)
            written.append(out)
        if "Fmax_mean" in header:
            out = out_dir / f"{sweep.stem}_fidelity.svg"
            figures.plot_fidelity_sweep(sweep, out)
            written.append(out)

    if not written:
        raise readers.SchemaError(f"no engine outputs recognized under {results}")
    return written
