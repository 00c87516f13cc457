"""Readers for the engine's documented CSV/JSON schemas. No physics is recomputed here."""

from __future__ import annotations

import csv
import json

import numpy as np

TRACE_COLUMNS = ("t", "fR_abs", "fidelity", "envelope")


class SchemaError(ValueError):
    """Input file does not match the documented engine output schema."""


def read_trace_csv(path) -> dict:
    """Trace table as {column: array}; requires the four trace columns."""
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or set(TRACE_COLUMNS) - set(reader.fieldnames):
            raise SchemaError(
                f"{path}: expected trace columns {TRACE_COLUMNS}, got {reader.fieldnames}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: trace file has no data rows")
    return {c: np.array([float(r[c]) for r in rows]) for c in TRACE_COLUMNS}


def read_sweep_csv(path, observable: str) -> list[dict]:
    """Sweep rows for one observable, grouped later by N."""
    mean_col, mad_col = f"{observable}_mean", f"{observable}_mad"
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        fields = reader.fieldnames or []
        for needed in ("N", "W", mean_col, mad_col):
            if needed not in fields:
                raise SchemaError(f"{path}: sweep file lacks column {needed!r}")
        rows = [
            {
                "N": int(r["N"]),
                "W": float(r["W"]),
                "mean": float(r[mean_col]),
                "mad": float(r[mad_col]),
            }
            for r in reader
        ]
    if not rows:
        raise SchemaError(f"{path}: sweep file has no data rows")
    return rows


def read_summary_json(path) -> dict:
    with open(path) as handle:
        payload = json.load(handle)
    for key in ("params", "count", "histograms"):
        if key not in payload:
            raise SchemaError(f"{path}: summary JSON lacks key {key!r}")
    return payload


def histogram_from_summary(payload: dict, observable: str, path="summary"):
    try:
        hist = payload["histograms"][observable]
        edges = np.asarray(hist["edges"], dtype=float)
        density = np.asarray(hist["density"], dtype=float)
    except KeyError as err:
        raise SchemaError(f"{path}: summary has no histogram for {observable!r}") from err
    if len(edges) != len(density) + 1:
        raise SchemaError(f"{path}: histogram edges/density lengths are inconsistent")
    return edges, density


def group_by_n(rows: list[dict]) -> dict[int, list[dict]]:
    grouped: dict[int, list[dict]] = {}
    for row in rows:
        grouped.setdefault(row["N"], []).append(row)
    for series in grouped.values():
        series.sort(key=lambda r: r["W"])
    return grouped
