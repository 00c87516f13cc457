"""Pinned plotting profile so figures regenerate byte-stably from identical inputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

THRESHOLD = 2.0 / 3.0
THRESHOLD_GID = "classical-threshold"
ERRORBAR_GID = "mad-errorbars"

# One marker/color series per chain size, cycled in input order.
SERIES = (
    {"marker": "s", "color": "tab:blue"},
    {"marker": "o", "color": "tab:green"},
    {"marker": "^", "color": "tab:red"},
    {"marker": "D", "color": "tab:purple"},
)

_RC = {
    "figure.figsize": (5.2, 3.6),
    "figure.dpi": 100,
    "font.size": 11,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.4,
    "legend.frameon": False,
    "svg.hashsalt": "flatqst-plots",
    "savefig.bbox": "tight",
}


def new_figure():
    plt.rcParams.update(_RC)
    fig, ax = plt.subplots()
    return fig, ax


def save(fig, path) -> None:
    """Write SVG (or PNG by extension) without volatile metadata."""
    path = str(path)
    if path.endswith(".svg"):
        fig.savefig(path, format="svg", metadata={"Date": None})
    else:
        fig.savefig(path)
    plt.close(fig)


def threshold_line(ax, axis="y") -> None:
    """Dotted classical-transmission threshold at F = 2/3."""
    if axis == "y":
        line = ax.axhline(THRESHOLD, linestyle=":", color="black", linewidth=1.0)
    else:
        line = ax.axvline(THRESHOLD, linestyle=":", color="black", linewidth=1.0)
    line.set_gid(THRESHOLD_GID)
