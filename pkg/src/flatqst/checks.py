"""Runtime self-checks over fresh random samples, backing the ``validate`` command.

Each check returns a named result so failures can be reported precisely.
Tolerances are parameters, not constants, so deliberately unattainable
settings (e.g. 1e-15) produce clean failures rather than crashes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dynamics, effective, flatband, lattice, spectral


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _sample_setup(spec, dis, index):
    stream = lattice.coupling_stream(dis.seed, index)
    couplings = lattice.sample_couplings(spec, dis, stream)
    H = lattice.build_channel_hamiltonian(spec, couplings)
    return couplings, H


def check_hamiltonian_symmetry(spec, dis, samples, inject_asymmetry=False) -> CheckResult:
    worst = 0.0
    for i in range(samples):
        _, H = _sample_setup(spec, dis, i)
        if inject_asymmetry:
            H[0, 1] += 1e-3
        worst = max(worst, float(np.abs(H - H.T).max()))
    return CheckResult(
        "hamiltonian-symmetry", worst == 0.0, f"max |H - H^T| = {worst:.3g}"
    )


def check_bipartite_nullity(spec, dis, samples, tol) -> CheckResult:
    sites = lattice.SiteMap(spec.N)
    worst = 0.0
    for i in range(samples):
        _, H = _sample_setup(spec, dis, i)
        dec = spectral.eigendecompose(H)
        sub = spectral.flat_band_subspace(dec, expected_dim=spec.N)
        worst = max(worst, float(np.abs(sub.vectors[sites.b_sites(), :]).max()))
    return CheckResult(
        "bipartite-nullity", worst <= tol, f"max zero-mode |b amplitude| = {worst:.3g}"
    )


def check_chiral_spectrum(spec, dis, samples, tol) -> CheckResult:
    worst = 0.0
    for i in range(samples):
        _, H = _sample_setup(spec, dis, i)
        w = spectral.eigendecompose(H).eigenvalues
        worst = max(worst, float(np.abs(w + w[::-1]).max()))
    return CheckResult(
        "chiral-spectrum", worst <= tol, f"max |E_k + E_reversed| = {worst:.3g}"
    )


def check_basis_invariance(spec, dis, samples, tol) -> CheckResult:
    sites = lattice.SiteMap(spec.N)
    rng = np.random.default_rng(dis.seed)
    worst = 0.0
    for i in range(samples):
        _, H = _sample_setup(spec, dis, i)
        dec = spectral.eigendecompose(H)
        sub = spectral.channel_flat_band(dec, spec.N)
        Q, _ = np.linalg.qr(rng.normal(size=(sub.dimension, sub.dimension)))
        remixed = spectral.FlatBandSubspace(
            indices=sub.indices,
            vectors=sub.vectors @ Q,
            projector=(sub.vectors @ Q) @ (sub.vectors @ Q).T,
        )
        ref = flatband.summarize_flat_band(sub, sites)
        alt = flatband.summarize_flat_band(remixed, sites)
        sol_ref = effective.solve_effective(ref, spec.g)
        sol_alt = effective.solve_effective(alt, spec.g)
        star_ref = effective.build_effective_hamiltonian(sub, sites, spec.g)
        star_alt = effective.build_effective_hamiltonian(remixed, sites, spec.g)
        worst = max(
            worst,
            abs(ref.eta1 - alt.eta1),
            abs(ref.etaN - alt.etaN),
            abs(ref.Lambda - alt.Lambda),
            abs(ref.Csr - alt.Csr),
            abs(sol_ref.eps1 - sol_alt.eps1),
            abs(sol_ref.eps2 - sol_alt.eps2),
            abs(
                effective.star_correlation_numeric(star_ref)
                - effective.star_correlation_numeric(star_alt)
            ),
        )
    return CheckResult(
        "basis-invariance", worst <= tol, f"max remix deviation = {worst:.3g}"
    )


def check_closed_form_spectrum(spec, dis, samples, tol) -> CheckResult:
    sites = lattice.SiteMap(spec.N)
    worst = 0.0
    for i in range(samples):
        _, H = _sample_setup(spec, dis, i)
        dec = spectral.eigendecompose(H)
        sub = spectral.channel_flat_band(dec, spec.N)
        summary = flatband.summarize_flat_band(sub, sites)
        sol = effective.solve_effective(summary, spec.g)
        star = effective.build_effective_hamiltonian(sub, sites, spec.g)
        w = np.linalg.eigvalsh(star)
        predicted = np.sort([-sol.eps1, -sol.eps2, sol.eps2, sol.eps1])
        numeric = np.sort(np.concatenate((w[:2], w[-2:])))
        worst = max(worst, float(np.abs(predicted - numeric).max()))
    return CheckResult(
        "closed-form-spectrum",
        worst <= tol * spec.g,
        f"max |closed form - numeric| = {worst:.3g} (tol {tol * spec.g:.3g})",
    )


def check_unitarity(spec, dis, samples, tol, times_per_sample=10) -> CheckResult:
    rng = np.random.default_rng(dis.seed + 1)
    full_sites = lattice.SiteMap(spec.N, with_ends=True)
    worst = 0.0
    for i in range(samples):
        stream = lattice.coupling_stream(dis.seed, i)
        couplings = lattice.sample_couplings(spec, dis, stream)
        dec = spectral.eigendecompose(lattice.build_full_hamiltonian(spec, couplings))
        for t in rng.uniform(0.0, 100.0 / spec.J, times_per_sample):
            state = dynamics.evolve_state(dec, full_sites.sender, float(t))
            worst = max(worst, abs(float(np.sum(np.abs(state) ** 2)) - 1.0))
    return CheckResult(
        "unitarity", worst <= tol, f"max |norm - 1| = {worst:.3g}"
    )


def run_checks(
    spec: lattice.ChainSpec,
    dis: lattice.DisorderSpec,
    samples: int = 20,
    tol: float = 1e-10,
    inject_asymmetry: bool = False,
) -> list[CheckResult]:
    """Run the whole invariant suite; one result per named check."""
    return [
        check_hamiltonian_symmetry(spec, dis, samples, inject_asymmetry),
        check_bipartite_nullity(spec, dis, samples, max(tol, 1e-8)),
        check_chiral_spectrum(spec, dis, samples, tol),
        check_basis_invariance(spec, dis, samples, tol),
        check_closed_form_spectrum(spec, dis, samples, tol),
        check_unitarity(spec, dis, samples, tol),
    ]
