"""Dense symmetric eigendecomposition and certified extraction of the zero-energy subspace."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ZERO_MODE_TOL = 1e-8
B_NULLITY_TOL = 1e-8


class FlatBandError(RuntimeError):
    """The zero-energy subspace violates a structural guarantee."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a symmetric matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def max_abs_eigenvalue(self) -> float:
        return float(np.abs(self.eigenvalues).max())


@dataclass(frozen=True)
class FlatBandSubspace:
    """Zero-energy eigenpairs of a decomposition plus their orthogonal projector.

    ``vectors`` (one column per zero mode) depend on the arbitrary basis the
    solver picked inside the degenerate subspace and are exposed for
    diagnostics only; every physical quantity downstream must be read from
    ``projector``, which is basis independent.
    """

    indices: np.ndarray
    vectors: np.ndarray
    projector: np.ndarray

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]


def eigendecompose(H: np.ndarray) -> SpectralDecomposition:
    """Full eigendecomposition of a real symmetric matrix.

    Requires exact (bitwise) symmetry, which the lattice builders guarantee.
    Eigenvalues come back sorted ascending; the result is deterministic for
    identical input.
    """
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    if not np.array_equal(H, H.T):
        worst = float(np.abs(H - H.T).max())
        raise ValueError(f"matrix is not symmetric (max |H - H^T| = {worst:.3g})")
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(H)
    except np.linalg.LinAlgError as err:
        raise RuntimeError(f"symmetric eigensolver failed to converge: {err}") from err
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def flat_band_subspace(
    dec: SpectralDecomposition,
    tol: float = ZERO_MODE_TOL,
    expected_dim: int | None = None,
    forbidden_sites: list[int] | None = None,
) -> FlatBandSubspace:
    """Select all eigenpairs with |E| < tol and build their projector.

    ``expected_dim`` asserts a lower bound on the degeneracy (N for the
    channel of an N-cell chain); ``forbidden_sites`` asserts that the
    projector has no weight on the given sites (the minority-sublattice
    nullity of a bipartite hopping matrix).
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    indices = np.flatnonzero(np.abs(dec.eigenvalues) < tol)
    if expected_dim is not None and len(indices) < expected_dim:
        nearest = np.sort(np.abs(dec.eigenvalues))[: expected_dim + 2]
        raise FlatBandError(
            f"found {len(indices)} zero modes below tol={tol:g}, expected at least "
            f"{expected_dim}; smallest |E|: {np.array2string(nearest, precision=3)}"
        )
    vectors = dec.eigenvectors[:, indices]
    projector = vectors @ vectors.T
    if forbidden_sites:
        leak = float(np.abs(vectors[forbidden_sites, :]).max()) if len(indices) else 0.0
        if leak > B_NULLITY_TOL:
            raise FlatBandError(
                f"zero modes leak onto forbidden sublattice sites "
                f"(max amplitude {leak:.3g} > {B_NULLITY_TOL:g})"
            )
    return FlatBandSubspace(indices=indices, vectors=vectors, projector=projector)


def channel_flat_band(
    dec: SpectralDecomposition, n_cells: int, tol: float = ZERO_MODE_TOL
) -> FlatBandSubspace:
    """Flat-band subspace of a channel decomposition, with both structural checks on."""
    from .lattice import SiteMap

    sites = SiteMap(n_cells)
    if dec.dim != sites.dim:
        raise ValueError(f"decomposition dim {dec.dim} does not match 3N={sites.dim}")
    return flat_band_subspace(
        dec, tol=tol, expected_dim=n_cells, forbidden_sites=sites.b_sites()
    )
