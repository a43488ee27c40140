"""Transverse Ising chain under a square-wave field, solved mode by mode.

The chain maps onto independent two-level problems labelled by momentum k.
This package evolves them exactly, gives the closed-form long-time response,
checks it against dense evolution of small chains and analyses the
resulting magnetization series.
"""

from .closed_form import (
    Asymptote,
    DegenerateCurvatureError,
    asymptote,
    mode_envelope,
    omega_q,
    q_factor,
    quasienergy,
    quasienergy_spectrum,
)
from .mode_algebra import DriveParams, ModeGeometry, bogoliubov_angle, dispersion, mode_geometry
from .propagator import Amplitudes, cheb_power, cycle_map, evolve, magnetization, time_series
from .quadrature import KGrid
from .series import TimeSeries

__version__ = "0.1.0"

__all__ = [
    "Amplitudes",
    "Asymptote",
    "DegenerateCurvatureError",
    "DriveParams",
    "KGrid",
    "ModeGeometry",
    "TimeSeries",
    "asymptote",
    "bogoliubov_angle",
    "cheb_power",
    "cycle_map",
    "dispersion",
    "evolve",
    "magnetization",
    "mode_envelope",
    "mode_geometry",
    "omega_q",
    "q_factor",
    "quasienergy",
    "quasienergy_spectrum",
    "time_series",
]
