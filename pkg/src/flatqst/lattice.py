"""Diamond-chain geometry, coupling disorder, and single-excitation Hamiltonians.

The channel is a quasi-1D diamond lattice of N vertical trimer cells with legs
(a, b, c). Neighbouring cells are linked only through the b-site of the next
cell, which makes the lattice bipartite: sublattice {b_n} vs {a_n, c_n}. Two
external spins, a sender S and a receiver R, attach with strength g to a_1 and
a_N. All Hamiltonians act in the single-excitation sector, so they are dense
real symmetric hopping matrices with zero diagonal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

UNIFORM = "uniform"
GAUSSIAN = "gaussian"
_DISTRIBUTIONS = (UNIFORM, GAUSSIAN)

MODE_ZERO = 0
MODE_PLUS = +1
MODE_MINUS = -1
_MODES = (MODE_ZERO, MODE_PLUS, MODE_MINUS)


@dataclass(frozen=True)
class ChainSpec:
    """Geometry and energy scales of the chain: N cells, base coupling J, end coupling g.

    g = 0 is accepted as the decoupled diagnostic limit (S and R detached).
    """

    N: int
    J: float = 1.0
    g: float = 0.01

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"need at least two cells, got N={self.N}")
        if self.J <= 0:
            raise ValueError(f"base coupling must be positive, got J={self.J}")
        if self.g < 0:
            raise ValueError(f"end coupling must be non-negative, got g={self.g}")
        if self.g > 0.5 * self.J / self.N:
            warnings.warn(
                f"g={self.g} exceeds 0.5*J/N={0.5 * self.J / self.N:.4g}; "
                "the perturbative end coupling assumption degrades",
                stacklevel=2,
            )


@dataclass(frozen=True)
class DisorderSpec:
    """Off-diagonal disorder law: width W, distribution, and master seed.

    Couplings are drawn as J*(1+delta). Uniform draws delta from
    [-W/2, W/2]; gaussian draws delta with mean 0 and standard deviation
    W/sqrt(12), which matches the uniform variance so W stays comparable
    across the two laws.
    """

    W: float
    distribution: str = UNIFORM
    seed: int = 0

    def __post_init__(self):
        if self.W < 0:
            raise ValueError(f"disorder width must be non-negative, got W={self.W}")
        if self.distribution not in _DISTRIBUTIONS:
            raise ValueError(
                f"unknown distribution {self.distribution!r}; choose from {_DISTRIBUTIONS}"
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class CouplingSet:
    """One disorder realization of the exchange couplings.

    J1[n] couples a_n to b_n, J2[n] couples b_n to c_n (n = 0..N-1);
    J1p[n] couples a_n to b_{n+1}, J2p[n] couples c_n to b_{n+1}
    (n = 0..N-2). ``rejections`` counts redraws of non-positive
    gaussian couplings.
    """

    J1: np.ndarray
    J2: np.ndarray
    J1p: np.ndarray
    J2p: np.ndarray
    rejections: int = 0

    @property
    def n_cells(self) -> int:
        return len(self.J1)

    def validate(self, spec: ChainSpec) -> None:
        n = spec.N
        if not (len(self.J1) == len(self.J2) == n and len(self.J1p) == len(self.J2p) == n - 1):
            raise ValueError(
                f"coupling arrays sized for {self.n_cells} cells, spec has N={n}"
            )


@dataclass(frozen=True)
class SiteMap:
    """Bijective site -> basis-offset map for the channel or full chain.

    Channel basis (dim 3N): cell-major order a_1, b_1, c_1, ..., a_N, b_N, c_N.
    Full basis (dim 3N+2): S first, then the channel block, then R last.
    """

    n_cells: int
    with_ends: bool = False

    @property
    def dim(self) -> int:
        return 3 * self.n_cells + (2 if self.with_ends else 0)

    def _cell_offset(self, n: int) -> int:
        if not 1 <= n <= self.n_cells:
            raise ValueError(f"cell index {n} outside 1..{self.n_cells}")
        return 3 * (n - 1) + (1 if self.with_ends else 0)

    def a(self, n: int) -> int:
        return self._cell_offset(n)

    def b(self, n: int) -> int:
        return self._cell_offset(n) + 1

    def c(self, n: int) -> int:
        return self._cell_offset(n) + 2

    @property
    def sender(self) -> int:
        if not self.with_ends:
            raise ValueError("channel-only map has no sender site")
        return 0

    @property
    def receiver(self) -> int:
        if not self.with_ends:
            raise ValueError("channel-only map has no receiver site")
        return self.dim - 1

    def b_sites(self) -> list[int]:
        return [self.b(n) for n in range(1, self.n_cells + 1)]

    def ac_sites(self) -> list[int]:
        out = []
        for n in range(1, self.n_cells + 1):
            out.extend((self.a(n), self.c(n)))
        return out

    def minority_sites(self) -> list[int]:
        """Sites of the minority sublattice: all b_n, plus S and R when present."""
        sites = self.b_sites()
        if self.with_ends:
            sites = [self.sender] + sites + [self.receiver]
        return sites

    def label(self, flat: int) -> str:
        if self.with_ends:
            if flat == 0:
                return "S"
            if flat == self.dim - 1:
                return "R"
            flat -= 1
        n, leg = divmod(flat, 3)
        return f"{'abc'[leg]}{n + 1}"


def coupling_stream(seed: int, index: int) -> np.random.Generator:
    """Counter-based random stream keyed by (master seed, realization index).

    Streams for different indices are statistically independent and do not
    depend on the order in which realizations are executed, so ensembles can
    be evaluated serially or in parallel with identical results.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(ss))


def sample_couplings(
    spec: ChainSpec, dis: DisorderSpec, stream: np.random.Generator
) -> CouplingSet:
    """Draw one disorder realization of all exchange couplings.

    Draw order is fixed: J1[0..N), J2[0..N), J1p[0..N-1), J2p[0..N-1), one
    relative fluctuation delta per coupling, so the stream state fully
    determines the sample. Gaussian draws that would produce a non-positive
    coupling (delta <= -1) are redrawn one at a time and counted.
    """
    if dis.distribution == UNIFORM and dis.W >= 2:
        raise ValueError(
            f"uniform disorder needs W < 2 to keep couplings positive, got W={dis.W}"
        )
    sigma = dis.W / np.sqrt(12.0)
    rejections = 0

    def draw_delta() -> float:
        nonlocal rejections
        if dis.distribution == UNIFORM:
            return stream.uniform(-dis.W / 2, dis.W / 2)
        delta = stream.normal(0.0, sigma)
        while delta <= -1.0:
            rejections += 1
            delta = stream.normal(0.0, sigma)
        return delta

    def draw_family(count: int) -> np.ndarray:
        return np.array([spec.J * (1.0 + draw_delta()) for _ in range(count)])

    return CouplingSet(
        J1=draw_family(spec.N),
        J2=draw_family(spec.N),
        J1p=draw_family(spec.N - 1),
        J2p=draw_family(spec.N - 1),
        rejections=rejections,
    )


def build_channel_hamiltonian(spec: ChainSpec, c: CouplingSet) -> np.ndarray:
    """Assemble the 3N x 3N channel hopping matrix.

    Nonzero entries sit exactly at (a_n, b_n) = J1[n], (b_n, c_n) = J2[n],
    (a_n, b_{n+1}) = J1p[n], (c_n, b_{n+1}) = J2p[n] and their mirrors; the
    matrix is assembled once and mirrored so H[i, j] == H[j, i] bit for bit.
    """
    c.validate(spec)
    sites = SiteMap(spec.N)
    H = np.zeros((sites.dim, sites.dim))
    for n in range(1, spec.N + 1):
        H[sites.a(n), sites.b(n)] = H[sites.b(n), sites.a(n)] = c.J1[n - 1]
        H[sites.b(n), sites.c(n)] = H[sites.c(n), sites.b(n)] = c.J2[n - 1]
    for n in range(1, spec.N):
        H[sites.a(n), sites.b(n + 1)] = H[sites.b(n + 1), sites.a(n)] = c.J1p[n - 1]
        H[sites.c(n), sites.b(n + 1)] = H[sites.b(n + 1), sites.c(n)] = c.J2p[n - 1]
    return H


def build_full_hamiltonian(spec: ChainSpec, c: CouplingSet) -> np.ndarray:
    """Assemble the (3N+2) x (3N+2) matrix: channel block plus g at (S, a_1) and (R, a_N)."""
    c.validate(spec)
    sites = SiteMap(spec.N, with_ends=True)
    H = np.zeros((sites.dim, sites.dim))
    H[1:-1, 1:-1] = build_channel_hamiltonian(spec, c)
    H[sites.sender, sites.a(1)] = H[sites.a(1), sites.sender] = spec.g
    H[sites.receiver, sites.a(spec.N)] = H[sites.a(spec.N), sites.receiver] = spec.g
    return H


def cell_eigenstates(J1: float, J2: float):
    """Eigenmodes of a single trimer cell with couplings (J1, J2).

    Returns (v0, vplus, vminus, lam) with components ordered (a, b, c):
    the zero mode v0 = (J2, 0, -J1)/lam and the dispersive pair
    v(+-) = (J1, +-lam, J2)/(lam*sqrt(2)) at energies +-lam,
    lam = sqrt(J1^2 + J2^2). All vectors are unit norm.
    """
    if J1 <= 0 or J2 <= 0:
        raise ValueError(f"cell couplings must be positive, got ({J1}, {J2})")
    lam = float(np.hypot(J1, J2))
    v0 = np.array([J2, 0.0, -J1]) / lam
    vplus = np.array([J1, lam, J2]) / (lam * np.sqrt(2.0))
    vminus = np.array([J1, -lam, J2]) / (lam * np.sqrt(2.0))
    return v0, vplus, vminus, lam


def intercell_transition(
    c: CouplingSet, n: int, from_mode: int, to_mode: int
) -> float:
    """Channel matrix element from mode ``from_mode`` of cell n to mode ``to_mode`` of cell n+1.

    Modes are labelled 0 (cell zero mode) and +-1 (dispersive pair). The
    element vanishes whenever the target is a zero mode, because inter-cell
    bonds only reach the b-site of the next cell:

        dispersive -> dispersive: to_mode/(2*lam_n) * (J1*J1p + J2*J2p)
        zero       -> dispersive: to_mode/(sqrt(2)*lam_n) * (J2*J1p - J1*J2p)
        any        -> zero:       0
    """
    if from_mode not in _MODES or to_mode not in _MODES:
        raise ValueError(f"mode labels must be in {_MODES}")
    if not 1 <= n <= c.n_cells - 1:
        raise ValueError(f"cell index {n} outside 1..{c.n_cells - 1}")
    if to_mode == MODE_ZERO:
        return 0.0
    J1, J2 = c.J1[n - 1], c.J2[n - 1]
    J1p, J2p = c.J1p[n - 1], c.J2p[n - 1]
    lam = float(np.hypot(J1, J2))
    if from_mode == MODE_ZERO:
        return to_mode / (np.sqrt(2.0) * lam) * (J2 * J1p - J1 * J2p)
    return to_mode / (2.0 * lam) * (J1 * J1p + J2 * J2p)


def embed_cell_mode(sites: SiteMap, n: int, mode: np.ndarray) -> np.ndarray:
    """Embed a 3-component cell mode of cell n into the channel basis."""
    vec = np.zeros(sites.dim)
    vec[[sites.a(n), sites.b(n), sites.c(n)]] = mode
    return vec
