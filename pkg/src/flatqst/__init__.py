"""Quantum-state transfer through the zero-energy flat band of a disordered diamond chain."""

from .dynamics import (
    ScanResult,
    TransferTrace,
    compute_trace,
    envelope,
    evolve_state,
    fidelity,
    scan_max_fidelity,
    time_grid,
    transition_amplitude,
)
from .effective import (
    EffectiveSolution,
    build_effective_hamiltonian,
    solve_effective,
    star_correlation_numeric,
    transfer_weight,
)
from .ensemble import (
    EnsembleStats,
    RealizationRecord,
    default_window,
    ensemble_stats,
    make_histogram,
    run_ensemble,
    sweep_W,
)
from .flatband import FlatBandSummary, summarize_flat_band
from .lattice import (
    ChainSpec,
    CouplingSet,
    DisorderSpec,
    SiteMap,
    build_channel_hamiltonian,
    build_full_hamiltonian,
    cell_eigenstates,
    coupling_stream,
    intercell_transition,
    sample_couplings,
)
from .spectral import (
    FlatBandError,
    FlatBandSubspace,
    SpectralDecomposition,
    channel_flat_band,
    eigendecompose,
    flat_band_subspace,
)

__version__ = "0.1.0"
