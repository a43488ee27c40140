"""Analytic stroboscopic response, freezing factor and the slow oscillation.

Starting from the +gamma0 ground state, each mode obeys

    M_k(nT) = A_k + R_k cos(2 n w_k + delta_k)

with A_k = cos^2(theta1) + g_k f_k. Everything here is evaluated from the
mode geometry alone (no matrix products or powers), which keeps it an
independent check on :mod:`floquet_ising.propagator`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .mode_algebra import DriveParams, ModeGeometry, mode_geometry
from .quadrature import as_grid

DEGENERATE_SIN = 1e-8
CURVATURE_FLOOR = 1e-8
FD_STEP = 1e-4


class DegenerateCurvatureError(ArithmeticError):
    """The quasi-energy has (numerically) zero curvature at k = pi/2."""


@dataclass(frozen=True)
class ModeEnvelope:
    a_k: np.ndarray
    r_k: np.ndarray
    delta_k: np.ndarray
    omega_k: np.ndarray
    f_k: np.ndarray
    g_k: np.ndarray


@dataclass(frozen=True)
class Asymptote:
    """Long-time form M_z(n) ~ m0 + amp / sqrt(n) * cos(n omega_q_cycle + delta_half_pi)."""

    m0: float
    amp: float
    omega_q_cycle: float
    omega_q_angular: float
    delta_half_pi: float
    c2: float
    r_half_pi: float

    def evaluate(self, n):
        n = np.asarray(n, dtype=float)
        return self.m0 + self.amp / np.sqrt(n) * np.cos(n * self.omega_q_cycle + self.delta_half_pi)

    def evaluate_stationary_phase(self, n):
        """Same asymptote with the full Fresnel integral kept: the (2/pi)
        k-measure, a sqrt(2) from the dropped sine part, and a sgn(C) pi/4 shift."""
        n = np.asarray(n, dtype=float)
        amp = (2.0 / math.pi) * self.r_half_pi * math.sqrt(math.pi / abs(self.c2))
        shift = math.copysign(0.25 * math.pi, self.c2)
        return self.m0 + amp / np.sqrt(n) * np.cos(n * self.omega_q_cycle + self.delta_half_pi + shift)


def _sin_cos_omega(geom: ModeGeometry):
    """(sin w, cos w) from the two halves of the cycle.

    cos w = cos(mu1+mu2) cos^2 phi + cos(mu1-mu2) sin^2 phi, and sin^2 w is
    the matching sum of squares, so sin w stays accurate as w -> 0.
    """
    mu1, mu2, phi = geom.mu1, geom.mu2, geom.phi
    cos_w = np.cos(mu1 + mu2) * np.cos(phi) ** 2 + np.cos(mu1 - mu2) * np.sin(phi) ** 2
    y = np.sin(mu1) * np.cos(mu2) + np.cos(mu1) * np.sin(mu2) * np.cos(2.0 * phi)
    x = np.sin(mu2) * np.sin(2.0 * phi)
    return np.hypot(y, x), cos_w


def quasienergy(geom: ModeGeometry) -> np.ndarray:
    """w_k in [0, pi]; eigenvalues of U_k are exp(+-i w_k)."""
    sin_w, cos_w = _sin_cos_omega(geom)
    return np.arctan2(sin_w, cos_w)


def quasienergy_acos(geom: ModeGeometry) -> np.ndarray:
    """w_k by the plain arccos form, for cross-checks away from w = 0, pi."""
    mu1, mu2, phi = geom.mu1, geom.mu2, geom.phi
    cos_w = np.cos(mu1 + mu2) * np.cos(phi) ** 2 + np.cos(mu1 - mu2) * np.sin(phi) ** 2
    return np.arccos(np.clip(cos_w, -1.0, 1.0))


def envelope_from_geometry(geom: ModeGeometry) -> ModeEnvelope:
    t1, t2 = geom.theta1, geom.theta2
    mu1, mu2, phi = geom.mu1, geom.mu2, geom.phi
    sin_w, cos_w = _sin_cos_omega(geom)
    omega = np.arctan2(sin_w, cos_w)
    c2 = np.cos(t1) ** 2
    x_term = np.sin(2.0 * t1) * np.sin(mu1) * sin_w
    f = np.sin(2.0 * t1) * np.sin(mu1) * cos_w + np.sin(2.0 * t2) * np.sin(mu2)
    numer = np.sin(2.0 * phi) * np.sin(mu2)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(sin_w > 0.0, numer / (2.0 * sin_w**2), 0.0)
    # n = 0 must return cos^2(theta1): R cos(delta) = -g f, R sin(delta) = g X
    rc = -g * f
    rs = g * x_term

    degenerate = sin_w < DEGENERATE_SIN
    if np.any(degenerate):
        rc_d, rs_d = _degenerate_terms(geom, sin_w, c2)
        rc = np.where(degenerate, rc_d, rc)
        rs = np.where(degenerate, rs_d, rs)
    a = c2 - rc
    r = np.hypot(rc, rs)
    delta = np.arctan2(rs, rc)
    return ModeEnvelope(a, r, delta, omega, f, g)


def _degenerate_terms(geom: ModeGeometry, sin_w, c2):
    """R cos(delta), R sin(delta) near sin w = 0 via the rotation axis of U_k.

    Writing U = cos w + i sin w (n . sigma), both terms are quadratic in the
    bounded axis components, so no 0/0 appears; exactly at sin w = 0 the
    mode is frozen and both vanish.
    """
    mu1, mu2, phi, t1 = geom.mu1, geom.mu2, geom.phi, geom.theta1
    im_u11 = np.sin(mu1) * np.cos(mu2) + np.cos(mu1) * np.sin(mu2) * np.cos(2.0 * phi)
    u21 = 1j * np.sin(mu2) * np.sin(2.0 * phi) * np.exp(1j * mu1)
    safe = np.where(sin_w > 0.0, sin_w, 1.0)
    z = (1j * im_u11 * np.cos(t1) + u21 * np.sin(t1)) / safe
    frozen = sin_w == 0.0
    rc = np.where(frozen, 0.0, 0.5 * (c2 - np.abs(z) ** 2))
    rs = np.where(frozen, 0.0, -np.cos(t1) * z.real)
    return rc, rs


def mode_envelope(params: DriveParams, k) -> ModeEnvelope:
    return envelope_from_geometry(mode_geometry(params, k))


def stroboscopic_mk(params: DriveParams, k, n) -> np.ndarray:
    env = mode_envelope(params, k)
    n = np.asarray(n)
    return env.a_k + env.r_k * np.cos(2.0 * n * env.omega_k + env.delta_k)


def q_factor(params: DriveParams, quadrature=None) -> float:
    """Infinite-time average of M_z: -1 + (2/pi) * integral of A_k."""
    grid = as_grid(quadrature)
    return float(-1.0 + 2.0 * grid.mean(mode_envelope(params, grid.k).a_k))


def omega_q(params: DriveParams) -> tuple[float, float]:
    """Slow-oscillation frequency (per cycle, per unit time).

    2 arccos{1 - cos^2(phi) [1 - cos(mu1 + mu2)]} at k = pi/2.
    """
    geom = mode_geometry(params, 0.5 * np.pi)
    # at k = pi/2, mu1 = mu2, so this is the general cos w
    per_cycle = 2.0 * float(quasienergy(geom))
    return per_cycle, per_cycle / params.period


def omega_q_formula(params: DriveParams) -> float:
    """The literal arccos expression, per cycle (ill-conditioned near 0)."""
    geom = mode_geometry(params, 0.5 * np.pi)
    cos2 = np.cos(geom.phi) ** 2
    return float(2.0 * np.arccos(1.0 - cos2 * (1.0 - np.cos(geom.mu1 + geom.mu2))))


def _second_derivative(f, x, h):
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def quasienergy_curvature(params: DriveParams, h: float = FD_STEP) -> tuple[float, float]:
    """d^2 w_k / dk^2 at k = pi/2 with steps h and h/2 (Richardson pair)."""

    def w(k):
        return float(quasienergy(mode_geometry(params, k)))

    x = 0.5 * math.pi
    return _second_derivative(w, x, h), _second_derivative(w, x, 0.5 * h)


def asymptote(params: DriveParams, quadrature=None) -> Asymptote:
    c, c_half = quasienergy_curvature(params)
    spread = abs(c - c_half)
    # a curvature smaller than its own step-size sensitivity is indistinguishable from zero
    if abs(c) < max(CURVATURE_FLOOR, spread):
        raise DegenerateCurvatureError(f"curvature of w_k at pi/2 is {c:.3e} (+-{spread:.1e}); asymptote undefined")
    if spread > 1e-6 * abs(c) + 1e-9:
        warnings.warn(f"curvature not converged in h: {c!r} vs {c_half!r}", RuntimeWarning, stacklevel=2)
    env = mode_envelope(params, 0.5 * np.pi)
    r = float(env.r_k)
    per_cycle, angular = omega_q(params)
    return Asymptote(
        m0=q_factor(params, quadrature),
        amp=r * math.sqrt(math.pi / (2.0 * abs(c))),
        omega_q_cycle=per_cycle,
        omega_q_angular=angular,
        delta_half_pi=float(env.delta_k),
        c2=c,
        r_half_pi=r,
    )


@dataclass(frozen=True)
class QuasienergySpectrum:
    k: np.ndarray
    omega_k: np.ndarray
    quasienergy: np.ndarray  # omega_k / T; the pair is +-quasienergy
    spread: float
    stationary_k: np.ndarray  # interior extrema of omega_k on the grid


def quasienergy_spectrum(params: DriveParams, quadrature=256) -> QuasienergySpectrum:
    grid = as_grid(quadrature)
    w = quasienergy(mode_geometry(params, grid.k))
    dw = np.diff(w)
    turn = np.nonzero(np.sign(dw[1:]) * np.sign(dw[:-1]) < 0)[0] + 1
    return QuasienergySpectrum(
        k=grid.k,
        omega_k=w,
        quasienergy=w / params.period,
        spread=float(w.max() - w.min()),
        stationary_k=grid.k[turn],
    )
