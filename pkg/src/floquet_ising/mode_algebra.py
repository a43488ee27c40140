"""Static per-mode data: dispersion, Bogoliubov angles and half-cycle phases.

Units are fixed to J = hbar = 1 and the spin operators are Pauli matrices,
so that M_z lies in [-1, 1]. Every function broadcasts over ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DriveParams:
    """Square-wave drive: Gamma(t) = +gamma0 on the first half of each period,
    -gamma0 on the second."""

    gamma0: float
    period: float

    def __post_init__(self):
        if not (self.gamma0 > 0 and math.isfinite(self.gamma0)):
            raise ValueError(f"gamma0 must be positive and finite, got {self.gamma0}")
        if not (self.period > 0 and math.isfinite(self.period)):
            raise ValueError(f"period must be positive and finite, got {self.period}")

    @property
    def p(self) -> float:
        """Dimensionless gamma0 * T / pi; integer values are freezing points."""
        return self.gamma0 * self.period / math.pi

    @classmethod
    def from_p(cls, p: float, *, gamma0: float | None = None, period: float | None = None) -> "DriveParams":
        """Build from p plus exactly one of gamma0 / period."""
        if (gamma0 is None) == (period is None):
            raise ValueError("give exactly one of gamma0 or period together with p")
        if gamma0 is not None:
            return cls(gamma0, p * math.pi / gamma0)
        return cls(p * math.pi / period, period)


@dataclass(frozen=True)
class ModeGeometry:
    k: np.ndarray
    lambda_plus: np.ndarray
    lambda_minus: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray
    phi: np.ndarray
    mu1: np.ndarray
    mu2: np.ndarray

    @classmethod
    def from_angles(cls, k, phi, mu1, mu2, theta1=0.0) -> "ModeGeometry":
        """Synthetic geometry for tests (e.g. the decoupled phi = 0 mode)."""
        k, phi, mu1, mu2, theta1 = np.broadcast_arrays(*map(np.asarray, (k, phi, mu1, mu2, theta1)))
        nan = np.full(k.shape, np.nan)
        return cls(k, nan, nan, theta1, theta1 - phi, phi, mu1, mu2)


def dispersion(gamma, k):
    """Mode energy lambda(Gamma, k) = 2 sqrt(Gamma^2 + 1 + 2 Gamma cos k)."""
    gamma = np.asarray(gamma, dtype=float)
    k = np.asarray(k, dtype=float)
    # Gamma^2 + 1 + 2 Gamma cos k == (Gamma + cos k)^2 + sin^2 k; the hypot
    # form keeps relative accuracy near the Gamma = -1, k = 0 gap closing
    return 2.0 * np.hypot(gamma + np.cos(k), np.sin(k))


def bogoliubov_angle(gamma, k):
    """Mixing angle theta with tan(theta) = -sin k / (Gamma + cos k + r),
    r = lambda/2, principal branch.

    When Gamma + cos k < 0 the denominator cancels catastrophically; there
    the equivalent (Gamma + cos k - r) / sin k is used instead, which tends
    to -inf (theta -> -pi/2) as k -> 0 for Gamma < -1.
    """
    gamma = np.asarray(gamma, dtype=float)
    k = np.asarray(k, dtype=float)
    c = gamma + np.cos(k)
    s = np.sin(k)
    r = 0.5 * dispersion(gamma, k)
    with np.errstate(divide="ignore", invalid="ignore"):
        stable_pos = -s / (c + r)
        stable_neg = (c - r) / s
    ratio = np.where(c >= 0.0, stable_pos, stable_neg)
    return np.arctan(ratio)


def mode_geometry(params: DriveParams, k) -> ModeGeometry:
    k = np.asarray(k, dtype=float)
    g0, half = params.gamma0, 0.5 * params.period
    lp = dispersion(g0, k)
    lm = dispersion(-g0, k)
    t1 = bogoliubov_angle(g0, k)
    t2 = bogoliubov_angle(-g0, k)
    return ModeGeometry(
        k=k,
        lambda_plus=lp,
        lambda_minus=lm,
        theta1=t1,
        theta2=t2,
        phi=t1 - t2,
        mu1=half * lp,
        mu2=half * lm,
    )


def large_gamma_expansion(params: DriveParams, k):
    """Leading large-gamma0 forms of (phi, mu2, |U_12|).

    The phi returned here follows the opposite sign convention for sin k to
    :func:`bogoliubov_angle`: ``-mode_geometry(...).phi`` approaches it.
    All physical quantities are unchanged by that reflection.
    """
    k = np.asarray(k, dtype=float)
    g0, T = params.gamma0, params.period
    phi = -0.5 * np.pi + np.sin(k) / g0
    mu2 = g0 * T * (1.0 - np.cos(k) / g0)
    u12 = np.abs(np.sin(g0 * T)) * 2.0 * np.sin(k) / g0
    return phi, mu2, u12
