"""Dense 2^N state-vector reference for the periodic chain.

    H = -sum_j X_j X_{j+1} - Gamma sum_j Z_j,   X, Z Pauli, site N+1 = site 1.

Basis states are bit strings with bit j = 1 meaning spin down on site j, so
Z_j is diagonal with entries 1 - 2 * bit_j. Evolution is exact: each
half-cycle propagator comes from the eigendecomposition of the static
Hamiltonian, no time stepping.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .mode_algebra import DriveParams
from .propagator import time_series
from .quadrature import KGrid
from .series import TimeSeries

MAX_SITES = 12
GAP_FLOOR = 1e-10
COMPARE_THRESHOLD = 1e-8


class DegenerateGroundStateWarning(RuntimeWarning):
    pass


def _check_sites(n_sites):
    if not (2 <= n_sites <= MAX_SITES) or n_sites % 2:
        raise ValueError(f"n_sites must be even with 2 <= N <= {MAX_SITES}, got {n_sites}")


def _bits(n_sites):
    idx = np.arange(1 << n_sites)
    return (idx[:, None] >> np.arange(n_sites)) & 1


def z_diagonal(n_sites) -> np.ndarray:
    """sum_j <Z_j> per basis state."""
    return np.sum(1 - 2 * _bits(n_sites), axis=1).astype(float)


def parity_diagonal(n_sites) -> np.ndarray:
    """prod_j Z_j per basis state."""
    return np.where(np.sum(_bits(n_sites), axis=1) % 2 == 0, 1.0, -1.0)


def build_hamiltonian(n_sites: int, gamma: float) -> np.ndarray:
    _check_sites(n_sites)
    dim = 1 << n_sites
    h = np.diag(-gamma * z_diagonal(n_sites))
    idx = np.arange(dim)
    # N = 2 has the bond (1,2) twice under periodic closure
    for j in range(n_sites):
        flip = (1 << j) | (1 << ((j + 1) % n_sites))
        h[idx ^ flip, idx] -= 1.0
    return h


@dataclass
class DenseState:
    amplitudes: np.ndarray
    n_sites: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def expectation_diag(self, diag) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2 * diag))

    def magnetization(self) -> float:
        return self.expectation_diag(z_diagonal(self.n_sites)) / self.n_sites

    def parity(self) -> float:
        return self.expectation_diag(parity_diagonal(self.n_sites))

    def energy(self, gamma: float) -> float:
        h = build_hamiltonian(self.n_sites, gamma)
        return float(np.real(np.vdot(self.amplitudes, h @ self.amplitudes)))


def ground_state(n_sites: int, gamma0: float) -> DenseState:
    """Lowest state of H(+gamma0) within the even-parity sector.

    Warns when the full-spectrum gap above it (odd sector included) is
    below 1e-10, i.e. the ground level is numerically degenerate.
    """
    if gamma0 <= 0:
        raise ValueError("gamma0 must be positive")
    h = build_hamiltonian(n_sites, gamma0)
    even = np.nonzero(parity_diagonal(n_sites) > 0)[0]
    e_even, v_even = np.linalg.eigh(h[np.ix_(even, even)])
    energies = np.linalg.eigvalsh(h)
    if energies[1] - energies[0] < GAP_FLOOR:
        warnings.warn(
            f"ground level of N={n_sites}, gamma0={gamma0} is degenerate to {energies[1] - energies[0]:.1e}",
            DegenerateGroundStateWarning,
            stacklevel=2,
        )
    psi = np.zeros(1 << n_sites, dtype=complex)
    psi[even] = v_even[:, 0]
    return DenseState(psi, n_sites)


class _HalfCycle:
    """exp(-i H t) applied through a cached eigendecomposition."""

    def __init__(self, h):
        self.e, self.v = np.linalg.eigh(h)

    def apply(self, psi, t):
        return self.v @ (np.exp(-1j * self.e * t) * (self.v.conj().T @ psi))


def evolve_piecewise(
    state: DenseState,
    params: DriveParams,
    n_cycles: int,
    samples_per_cycle: int = 1,
    *,
    flip: bool = True,
    reverse: bool = False,
) -> tuple[TimeSeries, DenseState]:
    """Sample M_z = (1/N) sum_j <Z_j> at t = j T / samples_per_cycle.

    ``flip=False`` holds the field at +gamma0 throughout (a static control).
    ``reverse=True`` applies the inverse of one cycle per step, undoing a
    forward run of the same length. Returns the series and the final state.
    """
    n = state.n_sites
    if abs(state.norm - 1.0) > 1e-10:
        raise ValueError("state must be normalized")
    T = params.period
    plus = _HalfCycle(build_hamiltonian(n, params.gamma0))
    minus = _HalfCycle(build_hamiltonian(n, -params.gamma0)) if flip else plus
    zdiag = z_diagonal(n) / n
    offsets = np.arange(samples_per_cycle) * (T / samples_per_cycle)
    half = 0.5 * T
    sign = -1.0 if reverse else 1.0

    psi = state.amplitudes.astype(complex)
    out = np.empty((n_cycles, samples_per_cycle))
    for c in range(n_cycles):
        mid = None
        for j, s in enumerate(offsets):
            if s < half:
                phi = plus.apply(psi, s) if s > 0 else psi
            else:
                if mid is None:
                    mid = plus.apply(psi, half)
                phi = minus.apply(mid, s - half)
            out[c, j] = np.sum(np.abs(phi) ** 2 * zdiag)
        if reverse:
            psi = plus.apply(minus.apply(psi, sign * half), sign * half)
        else:
            psi = minus.apply(plus.apply(psi, half), half)
    series = TimeSeries(0.0, T / samples_per_cycle, out.ravel(), stroboscopic=samples_per_cycle == 1)
    return series, DenseState(psi, n)


@dataclass(frozen=True)
class CompareReport:
    gamma0: float
    period: float
    n_sites: int
    n_cycles: int
    samples_per_cycle: int
    max_abs_deviation: float
    threshold: float
    dense: np.ndarray
    free_fermion: np.ndarray

    @property
    def passed(self) -> bool:
        return bool(self.max_abs_deviation <= self.threshold)

    def to_dict(self) -> dict:
        return {
            "gamma0": self.gamma0,
            "period": self.period,
            "p": DriveParams(self.gamma0, self.period).p,
            "n_sites": self.n_sites,
            "n_cycles": self.n_cycles,
            "samples_per_cycle": self.samples_per_cycle,
            "max_abs_deviation": self.max_abs_deviation,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def compare(params: DriveParams, n_sites: int, n_cycles: int, samples_per_cycle: int = 1, threshold: float = COMPARE_THRESHOLD) -> CompareReport:
    """Dense evolution vs the free-fermion sum on k = (2j+1) pi / N."""
    _check_sites(n_sites)
    dense, _ = evolve_piecewise(ground_state(n_sites, params.gamma0), params, n_cycles, samples_per_cycle)
    ff = time_series(params, n_cycles, samples_per_cycle, KGrid.chain(n_sites))
    dev = float(np.max(np.abs(dense.values - ff.values)))
    return CompareReport(
        params.gamma0, params.period, n_sites, n_cycles, samples_per_cycle, dev, threshold, dense.values, ff.values
    )
