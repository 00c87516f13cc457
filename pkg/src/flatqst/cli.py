"""Command-line front end: trace | scan | ensemble | sweep | validate.

All energies are in units of J and times in 1/J. Every command is
deterministic given its flags; --seed controls all randomness. Exit codes:
0 success, 1 usage error, 2 validation failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import checks, dynamics, effective, ensemble, flatband, lattice, spectral

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

TRACE_COLUMNS = ("t", "fR_abs", "fidelity", "envelope")
SCAN_COLUMNS = ("seed", "W", "N", "g", "Fmax", "tStar")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(parser):
    parser.add_argument("--N", type=int, default=10, help="number of diamond cells")
    parser.add_argument("--J", type=float, default=1.0, help="base coupling (energy unit)")
    parser.add_argument("--g", type=float, default=0.01, help="sender/receiver coupling")
    parser.add_argument("--W", type=float, default=0.2, help="disorder width in units of J")
    parser.add_argument(
        "--dist", choices=(lattice.UNIFORM, lattice.GAUSSIAN),
        default=lattice.UNIFORM, help="disorder distribution",
    )
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument(
        "--window", type=float, default=None,
        help="scan window in 1/J (default 20*pi/g)",
    )
    parser.add_argument("--out", type=str, default=None, help="output path")
    parser.add_argument(
        "--config", type=str, default=None,
        help="plain key=value file supplying flag defaults",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="flatqst", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="time trace of one realization")
    p_scan = sub.add_parser("scan", help="windowed fidelity maximum of one realization")
    p_ens = sub.add_parser("ensemble", help="disorder ensemble: records CSV + summary JSON")
    p_sweep = sub.add_parser("sweep", help="ensemble aggregates over a list of widths")
    p_val = sub.add_parser("validate", help="run the invariant suite on fresh samples")

    for p in (p_trace, p_scan, p_ens, p_sweep, p_val):
        _add_common(p)

    for p in (p_ens, p_sweep, p_val):
        p.add_argument("--samples", type=int, default=1000, help="realizations per point")
        p.add_argument("--threads", type=int, default=1, help="worker processes")
    p_ens.add_argument("--bins", type=int, default=None, help="histogram bin count")
    p_ens.add_argument(
        "--no-dynamics", action="store_true",
        help="skip the time scan (flat-band and effective observables only)",
    )

    p_sweep.add_argument(
        "--W-list", type=float, nargs="+", default=None,
        help="disorder widths to sweep (overrides --W)",
    )
    p_sweep.add_argument(
        "--N-list", type=int, nargs="+", default=None,
        help="cell counts to sweep (overrides --N)",
    )
    p_sweep.add_argument(
        "--observable", action="append",
        choices=("deltaEps", "Fmax", "Csr"), default=None,
        help="sweep columns to compute (repeatable; default all three)",
    )

    p_val.add_argument("--tol", type=float, default=1e-10, help="check tolerance")
    p_val.add_argument("--inject-asymmetry", action="store_true", help=argparse.SUPPRESS)
    p_val.set_defaults(samples=20)
    return parser


def _apply_config(parser, argv):
    """Pre-parse --config and fold its key=value pairs in as defaults."""
    if "--config" not in argv:
        return argv
    at = argv.index("--config")
    try:
        path = argv[at + 1]
    except IndexError:
        raise SystemExit(EXIT_USAGE)
    overrides = []
    try:
        with open(path) as handle:
            for line in handle:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    print(f"config line without '=': {line!r}", file=sys.stderr)
                    raise SystemExit(EXIT_USAGE)
                overrides.extend((f"--{key.strip()}", value.strip()))
    except OSError as err:
        print(f"cannot read config: {err}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    # Config acts as defaults: put overrides right after the subcommand so
    # explicit flags later on the line still win.
    return argv[:1] + overrides + argv[1:at] + argv[at + 2 :]


def _setup(args):
    spec = lattice.ChainSpec(N=args.N, J=args.J, g=args.g)
    dis = lattice.DisorderSpec(W=args.W, distribution=args.dist, seed=args.seed)
    window = ensemble.default_window(spec) if args.window is None else args.window
    return spec, dis, window


def _single_realization(spec, dis):
    stream = lattice.coupling_stream(dis.seed, 0)
    couplings = lattice.sample_couplings(spec, dis, stream)
    chan_dec = spectral.eigendecompose(lattice.build_channel_hamiltonian(spec, couplings))
    sub = spectral.channel_flat_band(chan_dec, spec.N, tol=spectral.ZERO_MODE_TOL * spec.J)
    sites = lattice.SiteMap(spec.N)
    summary = flatband.summarize_flat_band(sub, sites)
    star = effective.build_effective_hamiltonian(sub, sites, spec.g)
    sol = effective.solve_effective(summary, spec.g, star=star)
    full_dec = spectral.eigendecompose(lattice.build_full_hamiltonian(spec, couplings))
    return summary, sol, full_dec, star


def cmd_trace(args) -> int:
    spec, dis, window = _setup(args)
    summary, sol, full_dec, star = _single_realization(spec, dis)
    full_sites = lattice.SiteMap(spec.N, with_ends=True)
    trace = dynamics.compute_trace(
        full_dec, full_sites.sender, full_sites.receiver, sol, window
    )
    out = args.out or "trace.csv"
    with open(out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(TRACE_COLUMNS)
        for row in zip(trace.times, trace.fR_abs, trace.fidelity, trace.envelope):
            writer.writerow([repr(float(v)) for v in row])

    csr = summary.Csr
    flags = []
    if summary.lambda_zero:
        flags.append(ensemble.FLAG_NO_TRANSFER)
    if summary.degenerate:
        flags.append(ensemble.FLAG_BYPASSED)
        csr = effective.star_correlation_numeric(star)
    print(f"tau = {sol.tau!r} (1/J)")
    print(f"deltaEps = {sol.deltaEps!r} (J)  [effective closed form]")
    try:
        eps1_full, eps2_full = effective.split_levels_from_spectrum(
            full_dec.eigenvalues, zero_tol=spectral.ZERO_MODE_TOL * spec.J,
            upper=5.0 * spec.g,
        )
        gap_full = eps1_full - eps2_full
        if not sol.no_transfer and abs(gap_full - sol.deltaEps) > 0.01 * sol.deltaEps:
            print(f"deltaEps = {gap_full!r} (J)  [full spectrum, differs by >1%]")
    except ValueError:
        pass
    print(f"Csr = {csr!r}")
    if flags:
        print(f"flags = {';'.join(flags)}")
    print(f"wrote {out} ({len(trace.times)} samples)")
    return EXIT_OK


def cmd_scan(args) -> int:
    spec, dis, window = _setup(args)
    stream = lattice.coupling_stream(dis.seed, 0)
    couplings = lattice.sample_couplings(spec, dis, stream)
    full_dec = spectral.eigendecompose(lattice.build_full_hamiltonian(spec, couplings))
    full_sites = lattice.SiteMap(spec.N, with_ends=True)
    result = dynamics.scan_max_fidelity(
        full_dec, full_sites.sender, full_sites.receiver, window
    )
    out = args.out or "scan.csv"
    with open(out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SCAN_COLUMNS)
        writer.writerow(
            [args.seed, repr(dis.W), spec.N, repr(spec.g), repr(result.Fmax), repr(result.tStar)]
        )
    print(f"Fmax = {result.Fmax!r} at t = {result.tStar!r} (window {window!r})")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_ensemble(args) -> int:
    spec, dis, window = _setup(args)
    observables = ensemble.ALL_OBSERVABLES
    if args.no_dynamics:
        observables = frozenset((ensemble.OBS_FLATBAND, ensemble.OBS_EFFECTIVE))
    records = ensemble.run_ensemble(
        spec, dis, args.samples, observables, window=window, workers=args.threads
    )
    out = args.out or "records.csv"
    ensemble.write_records_csv(records, out)
    stats = ensemble.ensemble_stats(records, bins=args.bins)
    params = {
        "N": spec.N, "J": spec.J, "g": spec.g, "W": dis.W,
        "distribution": dis.distribution, "seed": dis.seed,
        "samples": args.samples, "window": window,
    }
    json_path = _sibling(out, "_summary.json")
    ensemble.write_summary_json(stats, params, json_path)
    print(f"wrote {out} and {json_path} ({stats.count} records, {stats.flagged} flagged)")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec, dis, window = _setup(args)
    W_list = args.W_list if args.W_list is not None else [args.W]
    N_list = args.N_list if args.N_list is not None else [args.N]
    if not W_list:
        print("sweep needs a non-empty W list", file=sys.stderr)
        return EXIT_USAGE
    chosen = args.observable or ["deltaEps", "Fmax", "Csr"]
    observables = ["deltaEps_over_g" if o == "deltaEps" else o for o in chosen]
    rows = []
    for n in N_list:
        spec_n = lattice.ChainSpec(N=n, J=args.J, g=args.g)
        rows.extend(
            ensemble.sweep_W(
                spec_n, dis, W_list, args.samples, observables,
                window=window, workers=args.threads,
            )
        )
    out = args.out or "sweep.csv"
    ensemble.write_sweep_csv(rows, observables, out)
    json_path = _sibling(out, ".json")
    with open(json_path, "w") as handle:
        json.dump(
            {
                "params": {
                    "J": args.J, "g": args.g, "distribution": args.dist,
                    "seed": args.seed, "samples": args.samples,
                },
                "rows": rows,
            },
            handle, indent=2, default=float,
        )
        handle.write("\n")
    print(f"wrote {out} and {json_path} ({len(rows)} rows)")
    return EXIT_OK


def cmd_validate(args) -> int:
    spec, dis, _ = _setup(args)
    results = checks.run_checks(
        spec, dis, samples=args.samples, tol=args.tol,
        inject_asymmetry=args.inject_asymmetry,
    )
    failures = [r for r in results if not r.passed]
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    if failures:
        print(f"{len(failures)} invariant(s) failed", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _sibling(path: str, suffix: str) -> str:
    stem = path[:-4] if path.endswith(".csv") else path
    return stem + suffix


_COMMANDS = {
    "trace": cmd_trace,
    "scan": cmd_scan,
    "ensemble": cmd_ensemble,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, spectral.FlatBandError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE if isinstance(err, ValueError) else EXIT_NUMERICAL
    except (RuntimeError, np.linalg.LinAlgError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
