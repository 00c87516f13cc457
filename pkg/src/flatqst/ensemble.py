"""Seeded disorder ensembles: per-realization records, aggregates, CSV/JSON output.

Realization i draws from a counter-based stream keyed by (master seed, i), so
the ensemble is a pure function of its inputs and can be evaluated serially
or across workers with bit-identical results. Flagged realizations stay in
the record list and the CSV but are excluded from means and MADs.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import dynamics, effective, flatband, lattice, spectral

FLAG_NO_TRANSFER = "no-transfer"
FLAG_BYPASSED = "closed-form-bypassed"
FLAG_FAILED = "failed"

OBS_FLATBAND = "flatband"
OBS_EFFECTIVE = "effective"
OBS_DYNAMICS = "dynamics"
ALL_OBSERVABLES = frozenset((OBS_FLATBAND, OBS_EFFECTIVE, OBS_DYNAMICS))

RECORD_COLUMNS = (
    "seed_index",
    "W",
    "N",
    "g",
    "eta1",
    "etaN",
    "Lambda",
    "Delta",
    "Csr",
    "eps1",
    "eps2",
    "deltaEps",
    "tau",
    "Fmax",
    "tStar",
    "flags",
    "CsrFull",
)

SWEEP_OBSERVABLES = ("deltaEps_over_g", "Fmax", "Csr")

_NAN = float("nan")


@dataclass(frozen=True)
class RealizationRecord:
    """Observables of one disorder realization; NaN where not computed."""

    seed_index: int
    W: float
    N: int
    g: float
    eta1: float = _NAN
    etaN: float = _NAN
    Lambda: float = _NAN
    Delta: float = _NAN
    Csr: float = _NAN
    eps1: float = _NAN
    eps2: float = _NAN
    deltaEps: float = _NAN
    tau: float = _NAN
    Fmax: float = _NAN
    tStar: float = _NAN
    CsrFull: float = _NAN
    flags: frozenset = frozenset()

    @property
    def flagged(self) -> bool:
        return bool(self.flags)

    @property
    def absLambda(self) -> float:
        return abs(self.Lambda)


@dataclass(frozen=True)
class EnsembleStats:
    """Aggregates of an ensemble: counts, per-observable (mean, MAD), histograms."""

    count: int
    flagged: int
    means: dict
    histograms: dict


def default_window(spec: lattice.ChainSpec) -> float:
    """Scan window t_max = 20*pi/g."""
    if spec.g <= 0:
        raise ValueError("no default window for g = 0; pass the window explicitly")
    return 20.0 * math.pi / spec.g


def realize(
    spec: lattice.ChainSpec,
    dis: lattice.DisorderSpec,
    index: int,
    observables: frozenset = ALL_OBSERVABLES,
    window: float | None = None,
    points_per_period: int = dynamics.POINTS_PER_PERIOD,
) -> RealizationRecord:
    """Evaluate one realization; failures come back flagged, never raised."""
    try:
        return _realize_strict(spec, dis, index, observables, window, points_per_period)
    except Exception:
        return RealizationRecord(
            seed_index=index, W=dis.W, N=spec.N, g=spec.g, flags=frozenset((FLAG_FAILED,))
        )


def _realize_strict(spec, dis, index, observables, window, points_per_period):
    stream = lattice.coupling_stream(dis.seed, index)
    couplings = lattice.sample_couplings(spec, dis, stream)
    values = {}
    flags = set()

    if observables & {OBS_FLATBAND, OBS_EFFECTIVE}:
        chan_dec = spectral.eigendecompose(lattice.build_channel_hamiltonian(spec, couplings))
        sub = spectral.channel_flat_band(chan_dec, spec.N, tol=spectral.ZERO_MODE_TOL * spec.J)
        sites = lattice.SiteMap(spec.N)
        summary = flatband.summarize_flat_band(sub, sites)
        values.update(
            eta1=summary.eta1, etaN=summary.etaN, Lambda=summary.Lambda,
            Delta=summary.Delta, Csr=summary.Csr,
        )
        if summary.lambda_zero:
            flags.add(FLAG_NO_TRANSFER)

        if OBS_EFFECTIVE in observables:
            star = None
            if summary.degenerate:
                star = effective.build_effective_hamiltonian(sub, sites, spec.g)
            sol = effective.solve_effective(summary, spec.g, star=star)
            values.update(
                eps1=sol.eps1, eps2=sol.eps2, deltaEps=sol.deltaEps, tau=sol.tau
            )
            if summary.degenerate:
                values["Csr"] = effective.star_correlation_numeric(star)
                flags.add(FLAG_BYPASSED)
            if sol.no_transfer:
                flags.add(FLAG_NO_TRANSFER)

    if OBS_DYNAMICS in observables:
        full_dec = spectral.eigendecompose(lattice.build_full_hamiltonian(spec, couplings))
        full_sites = lattice.SiteMap(spec.N, with_ends=True)
        scan = dynamics.scan_max_fidelity(
            full_dec,
            full_sites.sender,
            full_sites.receiver,
            default_window(spec) if window is None else window,
            points_per_period,
        )
        values.update(Fmax=scan.Fmax, tStar=scan.tStar)
        values["CsrFull"] = effective.transfer_weight(
            full_dec.eigenvalues,
            full_dec.eigenvectors,
            full_sites.sender,
            full_sites.receiver,
            zero_tol=spectral.ZERO_MODE_TOL * spec.J,
        )

    return RealizationRecord(
        seed_index=index, W=dis.W, N=spec.N, g=spec.g, flags=frozenset(flags), **values
    )


def _realize_worker(args):
    return realize(*args)


def run_ensemble(
    spec: lattice.ChainSpec,
    dis: lattice.DisorderSpec,
    samples: int,
    observables: frozenset = ALL_OBSERVABLES,
    window: float | None = None,
    workers: int = 1,
    points_per_period: int = dynamics.POINTS_PER_PERIOD,
) -> list[RealizationRecord]:
    """Evaluate ``samples`` realizations, ordered by index regardless of scheduling."""
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    args = [
        (spec, dis, i, observables, window, points_per_period) for i in range(samples)
    ]
    if workers <= 1:
        return [_realize_worker(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, samples // (4 * workers))
        return list(pool.map(_realize_worker, args, chunksize=chunk))


def mean_and_mad(values: np.ndarray) -> tuple[float, float]:
    """Mean and mean absolute deviation around the mean."""
    mean = float(np.mean(values))
    return mean, float(np.mean(np.abs(values - mean)))


def make_histogram(values, bins=None) -> tuple[np.ndarray, np.ndarray]:
    """Density-normalized histogram; default bin count is ceil(sqrt(n))."""
    values = np.asarray([v for v in np.ravel(values) if math.isfinite(v)], dtype=float)
    if len(values) == 0:
        raise ValueError("no finite values to histogram")
    if bins is None:
        bins = int(math.ceil(math.sqrt(len(values))))
    density, edges = np.histogram(values, bins=bins, density=True)
    return edges, density


STAT_FIELDS = (
    "eta1", "etaN", "Lambda", "absLambda", "Delta", "Csr",
    "eps1", "eps2", "deltaEps", "tau", "Fmax", "tStar", "CsrFull",
)


def ensemble_stats(
    records: list[RealizationRecord], bins=None, histogram_fields=("absLambda", "Fmax", "Csr")
) -> EnsembleStats:
    """Aggregate unflagged records into means, MADs, and selected histograms."""
    clean = [r for r in records if not r.flagged]
    means = {}
    histograms = {}
    for name in STAT_FIELDS:
        vals = np.array(
            [getattr(r, name) for r in clean if math.isfinite(getattr(r, name))]
        )
        if len(vals) == 0:
            continue
        means[name] = mean_and_mad(vals)
        if name in histogram_fields:
            edges, density = make_histogram(vals, bins)
            histograms[name] = (edges, density)
    return EnsembleStats(
        count=len(records), flagged=len(records) - len(clean), means=means,
        histograms=histograms,
    )


def sweep_W(
    spec: lattice.ChainSpec,
    dis_template: lattice.DisorderSpec,
    W_list,
    samples: int,
    observables=SWEEP_OBSERVABLES,
    window: float | None = None,
    workers: int = 1,
) -> list[dict]:
    """One aggregate row per disorder width: mean and MAD of each requested observable."""
    if not W_list:
        raise ValueError("W list must not be empty")
    unknown = set(observables) - set(SWEEP_OBSERVABLES)
    if unknown:
        raise ValueError(f"unknown sweep observables {sorted(unknown)}")
    groups = {OBS_FLATBAND, OBS_EFFECTIVE}
    if "Fmax" in observables:
        groups.add(OBS_DYNAMICS)
    rows = []
    for W in W_list:
        dis = replace(dis_template, W=float(W))
        records = run_ensemble(
            spec, dis, samples, frozenset(groups), window=window, workers=workers
        )
        clean = [r for r in records if not r.flagged]
        row = {
            "N": spec.N,
            "W": float(W),
            "samples": len(records),
            "flagged": len(records) - len(clean),
        }
        for name in observables:
            if name == "deltaEps_over_g":
                vals = np.array([r.deltaEps / spec.g for r in clean])
            else:
                vals = np.array(
                    [getattr(r, name) for r in clean if math.isfinite(getattr(r, name))]
                )
            row[f"{name}_mean"], row[f"{name}_mad"] = (
                mean_and_mad(vals) if len(vals) else (_NAN, _NAN)
            )
        rows.append(row)
    return rows


def _fmt(value) -> str:
    """IEEE-754 round-trip decimal formatting."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def format_flags(flags) -> str:
    return ";".join(sorted(flags))


def write_records_csv(records: list[RealizationRecord], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RECORD_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.seed_index, _fmt(r.W), r.N, _fmt(r.g),
                    _fmt(r.eta1), _fmt(r.etaN), _fmt(r.Lambda), _fmt(r.Delta),
                    _fmt(r.Csr), _fmt(r.eps1), _fmt(r.eps2), _fmt(r.deltaEps),
                    _fmt(r.tau), _fmt(r.Fmax), _fmt(r.tStar),
                    format_flags(r.flags), _fmt(r.CsrFull),
                ]
            )


def read_records_csv(path) -> list[RealizationRecord]:
    records = []
    with open(path, newline="") as handle:
        for row in csv.DictReader(handle):
            records.append(
                RealizationRecord(
                    seed_index=int(row["seed_index"]),
                    W=float(row["W"]),
                    N=int(row["N"]),
                    g=float(row["g"]),
                    eta1=float(row["eta1"]),
                    etaN=float(row["etaN"]),
                    Lambda=float(row["Lambda"]),
                    Delta=float(row["Delta"]),
                    Csr=float(row["Csr"]),
                    eps1=float(row["eps1"]),
                    eps2=float(row["eps2"]),
                    deltaEps=float(row["deltaEps"]),
                    tau=float(row["tau"]),
                    Fmax=float(row["Fmax"]),
                    tStar=float(row["tStar"]),
                    CsrFull=float(row["CsrFull"]),
                    flags=frozenset(f for f in row["flags"].split(";") if f),
                )
            )
    return records


def write_summary_json(stats: EnsembleStats, params: dict, path) -> None:
    payload = {
        "params": params,
        "count": stats.count,
        "flagged": stats.flagged,
        "observables": {
            name: {"mean": mean, "mad": mad} for name, (mean, mad) in stats.means.items()
        },
        "histograms": {
            name: {"edges": list(edges), "density": list(density)}
            for name, (edges, density) in stats.histograms.items()
        },
    }
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def write_sweep_csv(rows: list[dict], observables, path) -> None:
    columns = ["N", "W", "samples", "flagged"]
    for name in observables:
        columns.extend((f"{name}_mean", f"{name}_mad"))
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
