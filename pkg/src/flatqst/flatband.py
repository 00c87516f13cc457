"""Basis-invariant flat-band observables at the attachment sites.

Everything here is read off the zero-energy projector P of the channel:
eta1 = <a_1|P|a_1> and etaN = <a_N|P|a_N> are the flat-band weights under
the sender and receiver, Lambda = <a_1|P|a_N> is the end-to-end correlation,
and Csr = 2/sqrt(4 + Delta^2) with Delta = (eta1 - etaN)/Lambda bounds the
peak transfer amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import SiteMap
from .spectral import FlatBandSubspace

LAMBDA_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class FlatBandSummary:
    """Projector observables of one realization.

    ``Delta`` is NaN when Lambda is numerically zero. ``lambda_zero`` marks
    that case (no end-to-end correlation, hence no transfer through the
    band); ``degenerate`` additionally marks eta1 == etaN within tolerance,
    where the closed-form Csr is a 0/0 and the reported value must come from
    diagonalizing the effective model instead.
    """

    eta1: float
    etaN: float
    Lambda: float
    Delta: float
    Csr: float
    lambda_zero: bool = False
    degenerate: bool = False


def summarize_flat_band(sub: FlatBandSubspace, sites: SiteMap) -> FlatBandSummary:
    """Read eta1, etaN, Lambda off the projector and evaluate Delta and Csr.

    Conventions for the Lambda ~ 0 corner: with eta1 != etaN the correlation
    parameter is exactly 0 (the end doublets decouple); with eta1 == etaN as
    well, the sample is flagged degenerate and Csr is provisionally set to 0
    pending the numeric effective-model value.
    """
    if sites.with_ends:
        raise ValueError("flat-band summary is defined on the channel site map")
    P = sub.projector
    eta1 = float(P[sites.a(1), sites.a(1)])
    etaN = float(P[sites.a(sites.n_cells), sites.a(sites.n_cells)])
    lam = float(P[sites.a(1), sites.a(sites.n_cells)])

    if abs(lam) >= LAMBDA_ZERO_TOL:
        delta = (eta1 - etaN) / lam
        csr = 2.0 / math.sqrt(4.0 + delta * delta)
        return FlatBandSummary(eta1, etaN, lam, delta, csr)
    degenerate = abs(eta1 - etaN) < LAMBDA_ZERO_TOL
    return FlatBandSummary(
        eta1, etaN, lam, float("nan"), 0.0, lambda_zero=True, degenerate=degenerate
    )
