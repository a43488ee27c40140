"""Exact per-mode evolution under the square-wave drive.

Amplitudes live on the instantaneous eigenbasis {|-〉, |+〉} of the current
half-cycle Hamiltonian. One period maps them by the SU(2) matrix

    U = R(phi) D(mu2) R(-phi) D(mu1),   D(mu) = diag(e^{i mu}, e^{-i mu}),

and integer powers follow from Cayley-Hamilton, U^n = a_n 1 + b_n U with
b_n = sin(n w) / sin(w) and a_n = -b_{n-1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mode_algebra import DriveParams, ModeGeometry, mode_geometry
from .quadrature import as_grid
from .series import TimeSeries

# elements per evaluation chunk in time_series (cycles x samples x modes)
_CHUNK = 1 << 21


@dataclass(frozen=True)
class Amplitudes:
    """Mode amplitudes; ``half`` (1 or 2) names the eigenbasis they refer to."""

    x_minus: np.ndarray
    x_plus: np.ndarray
    half: np.ndarray | int = 1

    @classmethod
    def ground(cls) -> "Amplitudes":
        return cls(np.complex128(1.0), np.complex128(0.0))

    @property
    def norm2(self) -> np.ndarray:
        return np.abs(self.x_minus) ** 2 + np.abs(self.x_plus) ** 2


@dataclass(frozen=True)
class CycleMap:
    u: np.ndarray  # (..., 2, 2) complex
    trace_half: np.ndarray
    sin_omega: np.ndarray
    omega_k: np.ndarray

    @property
    def omega_from_pi(self) -> np.ndarray:
        """pi - omega_k, computed without cancellation near omega_k = pi."""
        return np.arctan2(self.sin_omega, -self.trace_half)


def rotation(phi) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)


def phase(mu) -> np.ndarray:
    mu = np.asarray(mu, dtype=float)
    z = np.zeros(mu.shape, dtype=complex)
    e = np.exp(1j * mu)
    return np.stack([np.stack([e, z], -1), np.stack([z, e.conj()], -1)], -2)


def cycle_map(geom: ModeGeometry) -> CycleMap:
    """One-period map U_k. Entries use the closed product form, which is
    exact and avoids the rounding of four chained 2x2 multiplies."""
    mu1, mu2, phi = np.broadcast_arrays(geom.mu1, geom.mu2, geom.phi)
    c2, s2 = np.cos(2.0 * phi), np.sin(2.0 * phi)
    e1 = np.exp(1j * mu1)
    cm, sm = np.cos(mu2), np.sin(mu2)
    u11 = (cm + 1j * sm * c2) * e1
    u22 = (cm - 1j * sm * c2) * e1.conj()
    u12 = 1j * sm * s2 * e1.conj()
    u21 = 1j * sm * s2 * e1
    u = np.stack([np.stack([u11, u12], -1), np.stack([u21, u22], -1)], -2)
    trace_half = 0.5 * (u11.real + u22.real)
    # |Im U11|^2 + |U21|^2 = sin^2 w for SU(2); no acos cancellation near w = 0
    sin_omega = np.hypot(0.5 * (u11.imag - u22.imag), np.abs(u21))
    omega = np.arctan2(sin_omega, trace_half)
    return CycleMap(u, trace_half, sin_omega, omega)


def _unit_sinc_ratio(n, eps):
    """sin(n eps) / sin(eps), finite at eps = 0 (value n)."""
    eps = np.asarray(eps, dtype=float)
    return n * np.sinc(n * eps / np.pi) / np.sinc(eps / np.pi)


def chebyshev_b(cmap: CycleMap, n):
    """b_n = sin(n w)/sin(w), evaluated from whichever of w, pi - w is small
    so the sin(w) -> 0 limits (n and (-1)^(n+1) n) are reached smoothly."""
    n = np.asarray(n)
    w = cmap.omega_k
    near_zero = w <= 0.5 * np.pi
    eps = np.where(near_zero, w, cmap.omega_from_pi)
    sign = np.where(near_zero, 1.0, np.where(n % 2 == 1, 1.0, -1.0))
    return sign * _unit_sinc_ratio(n, eps)


def chebyshev_coefficients(cmap: CycleMap, n):
    """(a_n, b_n) with U^n = a_n 1 + b_n U."""
    n = np.asarray(n)
    return -chebyshev_b(cmap, n - 1), chebyshev_b(cmap, n)


def cheb_power(cmap: CycleMap, n) -> np.ndarray:
    """U^n for integer n >= 0.

    Assembled as cos(n w) 1 + b_n (U - cos(w) 1), the same matrix as
    a_n 1 + b_n U but without the (n-1) vs n cancellation when w is small.
    """
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("power must be non-negative")
    b = chebyshev_b(cmap, n)[..., None, None]
    cos_nw = np.cos(n * cmap.omega_k)[..., None, None]
    eye = np.eye(2)
    return cos_nw * eye + b * (cmap.u - cmap.trace_half[..., None, None] * eye)


def _cycle_start(cmap: CycleMap, n, alpha, beta):
    """Components of U^n (alpha, beta) without forming the matrix."""
    n = np.asarray(n)
    b = chebyshev_b(cmap, n)
    cos_nw = np.cos(n * cmap.omega_k)
    u = cmap.u
    d11 = u[..., 0, 0] - cmap.trace_half
    d22 = u[..., 1, 1] - cmap.trace_half
    xm = cos_nw * alpha + b * (d11 * alpha + u[..., 0, 1] * beta)
    xp = cos_nw * beta + b * (u[..., 1, 0] * alpha + d22 * beta)
    return xm, xp


def _intra_cycle(geom: ModeGeometry, xm, xp, offset, period):
    """Advance cycle-start amplitudes by ``offset`` in [0, T).

    Returns amplitudes on the basis of the half-cycle containing the
    sample, plus a boolean mask marking second-half samples.
    """
    half_t = 0.5 * period
    second = offset >= half_t
    tau1 = np.where(second, half_t, offset)
    xm = xm * np.exp(1j * tau1 * geom.lambda_plus)
    xp = xp * np.exp(-1j * tau1 * geom.lambda_plus)
    # basis change at the flip: y = R(-phi) x
    c, s = np.cos(geom.phi), np.sin(geom.phi)
    ym = c * xm + s * xp
    yp = -s * xm + c * xp
    tau2 = np.where(second, offset - half_t, 0.0)
    ym = ym * np.exp(1j * tau2 * geom.lambda_minus)
    yp = yp * np.exp(-1j * tau2 * geom.lambda_minus)
    return np.where(second, ym, xm), np.where(second, yp, xp), second


def evolve(params: DriveParams, k, initial: Amplitudes, t) -> Amplitudes:
    """Amplitudes at time(s) t for initial amplitudes given on the +gamma0
    eigenbasis at t = 0. ``t`` and ``k`` broadcast against each other."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("time must be non-negative")
    geom = mode_geometry(params, k)
    cmap = cycle_map(geom)
    T = params.period
    n = np.floor(t / T).astype(np.int64)
    offset = t - n * T
    # floor(t/T) can land one cycle short when t is a rounded multiple of T;
    # snap anything within a few ulps of the boundary onto it
    over = offset >= T - 8.0 * np.finfo(float).eps * np.maximum(t, T)
    n = np.where(over, n + 1, n)
    offset = np.where(over, offset - T, np.maximum(offset, 0.0))
    xm, xp = _cycle_start(cmap, n, initial.x_minus, initial.x_plus)
    xm, xp, second = _intra_cycle(geom, xm, xp, offset, T)
    return Amplitudes(xm, xp, np.where(second, 2, 1))


def mode_magnetization(amps: Amplitudes, theta_j) -> np.ndarray:
    """M_k = |x_- cos(theta_j) + x_+ sin(theta_j)|^2, the pair occupation."""
    return np.abs(amps.x_minus * np.cos(theta_j) + amps.x_plus * np.sin(theta_j)) ** 2


def _theta_for(geom: ModeGeometry, half):
    return np.where(np.asarray(half) == 2, geom.theta2, geom.theta1)


def magnetization(params: DriveParams, t, quadrature=None, initial: Amplitudes | None = None):
    """Transverse magnetization M_z(t) = -1 + (2/pi) * integral of M_k.

    ``quadrature`` is a :class:`~floquet_ising.quadrature.KGrid` or a node
    count; the default is the 4096-node midpoint grid.
    """
    grid = as_grid(quadrature)
    initial = Amplitudes.ground() if initial is None else initial
    t = np.asarray(t, dtype=float)
    geom = mode_geometry(params, grid.k)
    amps = evolve(params, grid.k, initial, t[..., None])
    mk = mode_magnetization(amps, _theta_for(geom, amps.half))
    return -1.0 + 2.0 * grid.mean(mk)


def stroboscopic_mk(params: DriveParams, k, n) -> np.ndarray:
    """M_k(nT) from the ground state by direct propagation."""
    geom = mode_geometry(params, k)
    cmap = cycle_map(geom)
    xm, xp = _cycle_start(cmap, n, 1.0, 0.0)
    return mode_magnetization(Amplitudes(xm, xp), geom.theta1)


def _readout(geom: ModeGeometry, offsets, period):
    """Row vectors v(s, k) with M_k = |v0 x_- + v1 x_+|^2 for cycle-start
    amplitudes (x_-, x_+) and intra-cycle offsets s; shape (S, K) each."""
    offsets = np.asarray(offsets, dtype=float)[:, None]
    half_t = 0.5 * period
    second = offsets >= half_t
    tau1 = np.where(second, half_t, offsets)
    tau2 = np.where(second, offsets - half_t, 0.0)
    p1 = np.exp(1j * tau1 * geom.lambda_plus)
    p2 = np.exp(1j * tau2 * geom.lambda_minus)
    c, s = np.cos(geom.phi), np.sin(geom.phi)
    c1, s1 = np.cos(geom.theta1), np.sin(geom.theta1)
    c2, s2 = np.cos(geom.theta2), np.sin(geom.theta2)
    # second half: [c2, s2] . D(tau2) . R(-phi) . D(tau1)
    w_m = c2 * p2 * c - s2 * p2.conj() * s
    w_p = c2 * p2 * s + s2 * p2.conj() * c
    v0 = np.where(second, w_m * p1, c1 * p1)
    v1 = np.where(second, w_p * p1.conj(), s1 * p1.conj())
    return v0, v1


def time_series(params: DriveParams, n_cycles: int, samples_per_cycle: int = 1, quadrature=None) -> TimeSeries:
    """M_z sampled at t = j T / samples_per_cycle for j < n_cycles * samples_per_cycle."""
    if n_cycles < 1 or samples_per_cycle < 1:
        raise ValueError("need n_cycles >= 1 and samples_per_cycle >= 1")
    grid = as_grid(quadrature)
    geom = mode_geometry(params, grid.k)
    cmap = cycle_map(geom)
    T = params.period
    offsets = np.arange(samples_per_cycle) * (T / samples_per_cycle)
    v0, v1 = _readout(geom, offsets, T)

    out = np.empty((n_cycles, samples_per_cycle))
    step = max(1, _CHUNK // (samples_per_cycle * grid.k.size))
    for start in range(0, n_cycles, step):
        n = np.arange(start, min(start + step, n_cycles))
        xm, xp = _cycle_start(cmap, n[:, None], 1.0, 0.0)
        amp = v0 * xm[:, None, :] + v1 * xp[:, None, :]
        mk = amp.real**2 + amp.imag**2
        out[n] = -1.0 + 2.0 * grid.mean(mk)
    return TimeSeries(0.0, T / samples_per_cycle, out.ravel(), stroboscopic=samples_per_cycle == 1)
