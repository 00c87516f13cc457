"""Two-hub star model: the sender and receiver coupled through the flat-band modes.

In the perturbative regime the full chain reduces to a star network whose
hubs S and R couple to zero mode k with strengths g*mu_{1,k} and g*mu_{N,k},
mu_{n,k} being the mode amplitude on a_n. The star is itself bipartite, so
its spectrum is {+-eps1, +-eps2, 0 x (N_fb - 2)} and the four split levels
follow in closed form from (eta1, etaN, Lambda) alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .flatband import FlatBandSummary
from .lattice import SiteMap
from .spectral import FlatBandSubspace

# Hub rows of the star matrix.
STAR_S = 0
STAR_R = 1

_SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class EffectiveSolution:
    """Closed-form eigendata of the star model.

    eps1 >= eps2 are the positive split energies; (xS, xR) is the hub
    eigenvector of the eps1 doublet, normalized to xS^2 + xR^2 = 1 with
    xS >= 0 and xR carrying the sign of Lambda. ``tau`` = pi/deltaEps is the
    transfer timescale (inf when the doublets are degenerate) and
    ``Csr_eff`` = 2*|xS*xR| the correlation parameter. ``from_numeric``
    marks solutions where the closed form was singular and the hub vector
    was taken from an explicit diagonalization.
    """

    eps1: float
    eps2: float
    xS: float
    xR: float
    deltaEps: float
    tau: float
    Csr_eff: float
    from_numeric: bool = False

    @property
    def no_transfer(self) -> bool:
        return not math.isfinite(self.tau)


def build_effective_hamiltonian(
    sub: FlatBandSubspace, sites: SiteMap, g: float
) -> np.ndarray:
    """Assemble the (N_fb + 2) star matrix in the basis [S, R, mode_1..mode_Nfb]."""
    if g <= 0:
        raise ValueError(f"end coupling must be positive, got g={g}")
    if sites.with_ends:
        raise ValueError("the star model is built from the channel site map")
    mu1 = sub.vectors[sites.a(1), :]
    muN = sub.vectors[sites.a(sites.n_cells), :]
    dim = sub.dimension + 2
    H = np.zeros((dim, dim))
    H[STAR_S, 2:] = H[2:, STAR_S] = g * mu1
    H[STAR_R, 2:] = H[2:, STAR_R] = g * muN
    return H


def solve_effective(
    summary: FlatBandSummary, g: float, star: np.ndarray | None = None
) -> EffectiveSolution:
    """Evaluate the closed-form star eigendata from one flat-band summary.

    The split energies are eps_{1,2} = g*sqrt((A +- sqrt(A^2 - 4B))/2) with
    A = eta1 + etaN and B = eta1*etaN - Lambda^2. Inserting the larger root
    eps1 into the hub-vector formulas reproduces the eigenvector of the eps1
    doublet (the other root yields the partner doublet with the roles of S
    and R exchanged):

        xS = sqrt(1 - Lambda^2 / ((eps1t^2 - etaN)^2 + Lambda^2))
        xR = Lambda / (eps1t^2 - etaN) * xS,     eps1t = eps1/g.

    When the denominator eps1t^2 - etaN is numerically zero (a removable
    singularity, reached only when Lambda ~ 0 and eta1 <= etaN) the hub
    vector is taken from an explicit eigensolve of ``star`` if given, or of
    the equivalent 2x2 hub block otherwise.
    """
    if g <= 0:
        raise ValueError(f"end coupling must be positive, got g={g}")
    eta1, etaN, lam = summary.eta1, summary.etaN, summary.Lambda
    A = eta1 + etaN
    disc = math.sqrt((eta1 - etaN) ** 2 + 4.0 * lam * lam)
    eps1 = g * math.sqrt(max((A + disc) / 2.0, 0.0))
    eps2 = g * math.sqrt(max((A - disc) / 2.0, 0.0))
    delta_eps = eps1 - eps2
    # Splittings at rounding level mean degenerate doublets: no finite
    # transfer time, reported through the tau = inf sentinel.
    tau = math.pi / delta_eps if delta_eps > _SINGULAR_TOL * g else math.inf

    denom = (eps1 / g) ** 2 - etaN
    if abs(denom) > _SINGULAR_TOL:
        xS = math.sqrt(1.0 - lam * lam / (denom * denom + lam * lam))
        xR = lam / denom * xS
        from_numeric = False
    else:
        xS, xR = _hub_vector_numeric(eta1, etaN, lam, star)
        from_numeric = True
    return EffectiveSolution(
        eps1=eps1,
        eps2=eps2,
        xS=xS,
        xR=xR,
        deltaEps=delta_eps,
        tau=tau,
        Csr_eff=2.0 * abs(xS * xR),
        from_numeric=from_numeric,
    )


def _hub_vector_numeric(eta1, etaN, lam, star):
    """Hub components of the top eigenvector, from an explicit eigensolve."""
    if star is not None:
        w, V = np.linalg.eigh(star)
        vec = V[:, np.argmax(w)]
        xS, xR = float(vec[STAR_S]), float(vec[STAR_R])
    else:
        # The hub components obey the 2x2 block [[eta1, lam], [lam, etaN]]
        # at eigenvalue (eps1/g)^2, so its top eigenvector is equivalent.
        w, V = np.linalg.eigh(np.array([[eta1, lam], [lam, etaN]]))
        xS, xR = float(V[0, -1]), float(V[1, -1])
    norm = math.hypot(xS, xR)
    if norm == 0.0:
        return 1.0, 0.0
    xS, xR = xS / norm, xR / norm
    if xS < 0 or (xS == 0 and xR < 0):
        xS, xR = -xS, -xR
    return xS, xR


def transfer_weight(
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    site_from: int,
    site_to: int,
    zero_tol: float = 1e-10,
    cluster_tol: float = 1e-9,
) -> float:
    """Basis-invariant amplitude budget 2 * sum_E |<to|P_E|from>| over positive levels.

    Levels are clustered within ``cluster_tol`` so that exactly degenerate
    eigenvectors (whose individual components are solver dependent) only
    enter through their invariant subspace projector. For a two-doublet star
    spectrum this equals 2*|xS*xR|; it vanishes whenever no level connects
    the two sites.
    """
    w = eigenvectors[site_to, :] * eigenvectors[site_from, :]
    order = np.argsort(eigenvalues)
    evals = eigenvalues[order]
    contrib = w[order]
    total = 0.0
    block = 0.0
    prev = None
    for e, c in zip(evals, contrib):
        if e <= zero_tol:
            continue
        if prev is not None and e - prev > cluster_tol:
            total += abs(block)
            block = 0.0
        block += float(c)
        prev = e
    total += abs(block)
    return 2.0 * total


def star_correlation_numeric(star: np.ndarray, zero_tol_scale: float = 1e-10) -> float:
    """Correlation parameter of a star matrix from its numerical spectrum."""
    w, V = np.linalg.eigh(star)
    scale = float(np.abs(w).max()) or 1.0
    return transfer_weight(
        w, V, STAR_S, STAR_R, zero_tol=zero_tol_scale * scale, cluster_tol=1e-9 * scale
    )


def split_levels_from_spectrum(
    eigenvalues: np.ndarray, zero_tol: float, upper: float | None = None
) -> tuple[float, float]:
    """Extract (eps1, eps2) as the two smallest positive levels above ``zero_tol``.

    ``upper`` optionally caps the search window (e.g. below the dispersive
    band when reading the split doublets off a full-chain spectrum).
    """
    pos = eigenvalues[eigenvalues > zero_tol]
    if upper is not None:
        pos = pos[pos < upper]
    if len(pos) < 2:
        raise ValueError("spectrum does not contain two positive split levels")
    pos = np.sort(pos)
    return float(pos[1]), float(pos[0])
