"""The five figure kinds built from engine outputs.

Each function takes input path(s) plus an output path and renders one SVG/PNG.
Time axes are expressed in units of the transfer time tau, estimated from the
first maximum of the envelope column (display normalization only).
"""

from __future__ import annotations

import numpy as np

from . import readers, style


def _tau_from_envelope(times, env) -> float | None:
    if np.all(env == 0.0):
        return None
    return float(times[int(np.argmax(env))])


def plot_trace(inputs, output, labels=None) -> None:
    """|f_R(t)| (solid) with the slow envelope (dashed), one pair per input trace."""
    fig, ax = style.new_figure()
    labels = labels or [None] * len(inputs)
    tau = None
    for path, label, series in zip(inputs, labels, style.SERIES):
        trace = readers.read_trace_csv(path)
        tau = tau or _tau_from_envelope(trace["t"], trace["envelope"])
        scale = tau if tau else 1.0
        name = label or str(path)
        ax.plot(trace["t"] / scale, trace["fR_abs"], color=series["color"], label=name)
        ax.plot(
            trace["t"] / scale, trace["envelope"], color=series["color"],
            linestyle="--", linewidth=1.0,
        )
    ax.set_xlabel(r"$t/\tau$" if tau else r"$t\,J$")
    ax.set_ylabel(r"$|f_R(t)|$")
    ax.set_ylim(bottom=0.0)
    if len(inputs) > 1:
        ax.legend()
    style.save(fig, output)


def plot_pdf(inputs, output, observable="absLambda") -> None:
    """Probability density functions of one observable, one curve per summary JSON."""
    fig, ax = style.new_figure()
    for path, series in zip(inputs, style.SERIES):
        payload = readers.read_summary_json(path)
        edges, density = readers.histogram_from_summary(payload, observable, path)
        centers = 0.5 * (edges[:-1] + edges[1:])
        label = f"W = {payload['params'].get('W', '?')}"
        ax.plot(centers, density, marker=series["marker"], markersize=3.5,
                color=series["color"], label=label)
    ax.set_xlabel(r"$|\Lambda|$" if observable == "absLambda" else observable)
    ax.set_ylabel("PDF")
    ax.legend()
    style.save(fig, output)


def plot_gap_sweep(path, output) -> None:
    """Mean doublet splitting over g versus disorder width, MAD error bars, per-N series."""
    rows = readers.read_sweep_csv(path, "deltaEps_over_g")
    fig, ax = style.new_figure()
    _errorbar_series(ax, rows)
    ax.set_xlabel(r"$W/J$")
    ax.set_ylabel(r"$\delta\epsilon / g$")
    ax.legend()
    style.save(fig, output)


def plot_fidelity_sweep(path, output, observable="Fmax") -> None:
    """Mean windowed fidelity (or correlation) versus disorder width with threshold line."""
    rows = readers.read_sweep_csv(path, observable)
    fig, ax = style.new_figure()
    _errorbar_series(ax, rows)
    if observable == "Fmax":
        style.threshold_line(ax, axis="y")
    ax.set_xlabel(r"$W/J$")
    ax.set_ylabel(r"$F_{\max}$" if observable == "Fmax" else r"$C_{S,R}$")
    ax.legend()
    style.save(fig, output)


def plot_histogram(path, output, observable="Fmax") -> None:
    """Histogram of one observable from a summary JSON, with the F = 2/3 marker."""
    payload = readers.read_summary_json(path)
    edges, density = readers.histogram_from_summary(payload, observable, path)
    fig, ax = style.new_figure()
    ax.bar(
        edges[:-1], density, width=np.diff(edges), align="edge",
        color="tab:blue", alpha=0.75, edgecolor="white",
    )
    if observable == "Fmax":
        style.threshold_line(ax, axis="x")
    params = payload.get("params", {})
    title = ", ".join(f"{k}={params[k]}" for k in ("N", "W") if k in params)
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_xlabel(r"$F_{\max}$" if observable == "Fmax" else observable)
    ax.set_ylabel("PDF")
    style.save(fig, output)


def _errorbar_series(ax, rows) -> None:
    for (n, series_rows), series in zip(sorted(readers.group_by_n(rows).items()),
                                        style.SERIES):
        W = [r["W"] for r in series_rows]
        mean = [r["mean"] for r in series_rows]
        mad = [r["mad"] for r in series_rows]
        container = ax.errorbar(
            W, mean, yerr=mad, marker=series["marker"], color=series["color"],
            capsize=2.5, label=f"N = {n}",
        )
        for part in container[1] + container[2]:
            part.set_gid(style.ERRORBAR_GID)
