import numpy as np
import pytest

from flatqst import (
    ChainSpec,
    DisorderSpec,
    SiteMap,
    build_full_hamiltonian,
    compute_trace,
    coupling_stream,
    eigendecompose,
    envelope,
    evolve_state,
    fidelity,
    sample_couplings,
    scan_max_fidelity,
    solve_effective,
    time_grid,
    transition_amplitude,
)
from flatqst.dynamics import POINTS_PER_PERIOD

from helpers import channel_summary

# Typical disordered realization with strong end-to-end correlation
# (Csr ~ 0.99), used for the envelope and peak-location checks.
GOOD_SEED = 2


def full_decomposition(N=10, W=0.2, seed=0, g=0.01):
    spec = ChainSpec(N=N, g=g)
    dis = DisorderSpec(W=W, seed=seed)
    c = sample_couplings(spec, dis, coupling_stream(seed, 0))
    dec = eigendecompose(build_full_hamiltonian(spec, c))
    return spec, dec, SiteMap(N, with_ends=True)


class TestTransitionAmplitude:
    def test_zero_time(self):
        _, dec, sites = full_decomposition()
        assert abs(transition_amplitude(dec, sites.sender, sites.receiver, 0.0)) < 1e-12
        assert transition_amplitude(dec, sites.sender, sites.sender, 0.0) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_decoupled_sender_never_arrives(self):
        spec, dec, sites = full_decomposition(g=0.0)
        times = np.linspace(0.0, 500.0, 64)
        amps = transition_amplitude(dec, sites.sender, sites.receiver, times)
        assert np.abs(amps).max() < 1e-14

    @pytest.mark.parametrize("t", [0.7, 13.0, 211.5])
    def test_magnitude_symmetric_under_site_exchange(self, t):
        _, dec, sites = full_decomposition(seed=4)
        forward = transition_amplitude(dec, sites.sender, sites.receiver, t)
        backward = transition_amplitude(dec, sites.receiver, sites.sender, t)
        assert abs(forward) == pytest.approx(abs(backward), abs=1e-12)

    def test_unitarity_at_random_times(self, rng):
        _, dec, sites = full_decomposition(seed=6)
        for t in rng.uniform(0.0, 200.0, 10):
            state = evolve_state(dec, sites.sender, float(t))
            assert abs(np.sum(np.abs(state) ** 2) - 1.0) < 1e-10


class TestFidelity:
    def test_boundary_values(self):
        assert fidelity(1.0) == pytest.approx(1.0, abs=1e-15)
        assert fidelity(0.0) == pytest.approx(0.5, abs=1e-15)

    def test_half_amplitude(self):
        assert fidelity(0.5) == pytest.approx(0.5 + 1.0 / 6.0 + 1.0 / 24.0, abs=1e-15)

    def test_complex_input_uses_magnitude(self):
        assert fidelity(1j * 0.5) == pytest.approx(fidelity(0.5), abs=1e-15)

    def test_broken_unitarity_raises(self):
        with pytest.raises(ValueError, match="unitary"):
            fidelity(1.0 + 1e-6)

    def test_tiny_overshoot_clamped(self):
        assert fidelity(1.0 + 1e-12) == pytest.approx(1.0, abs=1e-12)


class TestEnvelope:
    def test_peaks_at_tau_and_vanishes_at_cycle_edges(self):
        _, _, _, _, summary = channel_summary(10, 0.2, GOOD_SEED)
        sol = solve_effective(summary, 0.01)
        assert envelope(sol, 0.0) == 0.0
        assert envelope(sol, sol.tau) == pytest.approx(sol.Csr_eff, abs=1e-12)
        assert envelope(sol, 2.0 * sol.tau) == pytest.approx(0.0, abs=1e-9)

    def test_no_transfer_envelope_is_flat_zero(self):
        _, _, _, _, summary = channel_summary(10, 0.0, 0)
        sol = solve_effective(summary, 0.01)
        assert np.all(envelope(sol, np.linspace(0, 1e4, 32)) == 0.0)


class TestScan:
    def test_grid_step_resolves_fastest_phase(self):
        _, dec, _ = full_decomposition(seed=1)
        times = time_grid(100.0, dec.max_abs_eigenvalue)
        step = times[1] - times[0]
        assert step <= np.pi / (10.0 * dec.max_abs_eigenvalue) + 1e-15
        assert times[0] == 0.0 and times[-1] == 100.0

    def test_vanishing_window(self):
        _, dec, sites = full_decomposition(seed=1)
        result = scan_max_fidelity(dec, sites.sender, sites.receiver, 1e-12)
        assert result.Fmax == pytest.approx(0.5, abs=1e-9)
        assert result.tStar == pytest.approx(0.0, abs=1e-12)

    def test_envelope_bounds_fast_dynamics(self):
        spec, _, _, _, summary = channel_summary(10, 0.2, GOOD_SEED)
        sol = solve_effective(summary, spec.g)
        _, dec, sites = full_decomposition(seed=GOOD_SEED)
        trace = compute_trace(dec, sites.sender, sites.receiver, sol, 2.0 * sol.tau)
        assert np.max(trace.fR_abs - trace.envelope) < 0.05
        assert np.all(trace.fR_abs <= 1.0)
        assert np.all(trace.fidelity >= 0.5) and np.all(trace.fidelity <= 1.0)
        assert np.allclose(
            trace.fidelity, 0.5 + trace.fR_abs / 3.0 + trace.fR_abs**2 / 6.0, atol=1e-14
        )

    def test_first_peak_near_tau_for_strong_correlation(self):
        spec, _, _, _, summary = channel_summary(10, 0.2, GOOD_SEED)
        assert summary.Csr > 0.8
        sol = solve_effective(summary, spec.g)
        _, dec, sites = full_decomposition(seed=GOOD_SEED)
        scan = scan_max_fidelity(dec, sites.sender, sites.receiver, 2.0 * sol.tau)
        assert abs(scan.tStar - sol.tau) < 0.1 * sol.tau

    def test_points_per_period_constant(self):
        assert POINTS_PER_PERIOD == 20
