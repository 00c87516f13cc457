"""Shared builders for the test suite."""

import numpy as np

from flatqst import (
    ChainSpec,
    DisorderSpec,
    SiteMap,
    build_channel_hamiltonian,
    channel_flat_band,
    coupling_stream,
    eigendecompose,
    sample_couplings,
    summarize_flat_band,
)
from flatqst.spectral import FlatBandSubspace


def channel_summary(N, W, seed, J=1.0, g=0.01):
    """Channel pipeline up to the flat-band summary for one realization."""
    spec = ChainSpec(N=N, J=J, g=g)
    dis = DisorderSpec(W=W, seed=seed)
    couplings = sample_couplings(spec, dis, coupling_stream(seed, 0))
    dec = eigendecompose(build_channel_hamiltonian(spec, couplings))
    sub = channel_flat_band(dec, N)
    summary = summarize_flat_band(sub, SiteMap(N))
    return spec, couplings, dec, sub, summary


def synthetic_subspace(N, mu1, muN):
    """Subspace whose modes carry amplitudes mu1 on a_1 and muN on a_N only."""
    sites = SiteMap(N)
    vectors = np.zeros((sites.dim, len(mu1)))
    vectors[sites.a(1), :] = mu1
    vectors[sites.a(N), :] = muN
    return FlatBandSubspace(
        indices=np.arange(len(mu1)), vectors=vectors, projector=vectors @ vectors.T
    )
