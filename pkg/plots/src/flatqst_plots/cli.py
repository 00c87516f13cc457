"""Command-line front end: one subcommand per figure kind plus the rebuild driver."""

from __future__ import annotations

import argparse
import sys

from . import driver, figures
from .readers import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatqst-plots", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="|f_R(t)| with its slow envelope")
    p_trace.add_argument("--input", action="append", required=True, help="trace CSV (repeatable)")
    p_trace.add_argument("--label", action="append", help="legend label per --input")
    p_trace.add_argument("--out", default="trace.svg")

    p_pdf = sub.add_parser("pdf", help="PDFs of |Lambda| across summaries")
    p_pdf.add_argument("--input", action="append", required=True, help="summary JSON (repeatable)")
    p_pdf.add_argument("--observable", default="absLambda")
    p_pdf.add_argument("--out", default="pdf.svg")

    p_gap = sub.add_parser("gap-sweep", help="doublet splitting vs disorder width")
    p_gap.add_argument("--input", required=True, help="sweep CSV")
    p_gap.add_argument("--out", default="gap_sweep.svg")

    p_fid = sub.add_parser("fidelity-sweep", help="windowed fidelity vs disorder width")
    p_fid.add_argument("--input", required=True, help="sweep CSV")
    p_fid.add_argument("--observable", default="Fmax", choices=("Fmax", "Csr"))
    p_fid.add_argument("--out", default="fidelity_sweep.svg")

    p_hist = sub.add_parser("histogram", help="histogram of one summary observable")
    p_hist.add_argument("--input", required=True, help="summary JSON")
    p_hist.add_argument("--observable", default="Fmax")
    p_hist.add_argument("--out", default="histogram.svg")

    p_all = sub.add_parser("all", help="rebuild every figure from a results directory")
    p_all.add_argument("--results", required=True, help="directory of engine outputs")
    p_all.add_argument("--out", default="figures", help="output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "trace":
            figures.plot_trace(args.input, args.out, labels=args.label)
        elif args.command == "pdf":
            figures.plot_pdf(args.input, args.out, observable=args.observable)
        elif args.command == "gap-sweep":
            figures.plot_gap_sweep(args.input, args.out)
        elif args.command == "fidelity-sweep":
            figures.plot_fidelity_sweep(args.input, args.out, observable=args.observable)
        elif args.command == "histogram":
            figures.plot_histogram(args.input, args.out, observable=args.observable)
        else:
            written = driver.rebuild_all(args.results, args.out)
            for path in written:
                print(path)
            return 0
        print(args.out)
        return 0
    except (SchemaError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
