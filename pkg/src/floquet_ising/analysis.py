"""Spectra, peaks, long-time averages, envelope decay and parameter scans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_form
from .mode_algebra import DriveParams
from .propagator import time_series
from .quadrature import as_grid
from .series import TimeSeries

MIN_SPECTRUM_SAMPLES = 64
MIN_ENVELOPE_SAMPLES = 500
MIN_EXTREMA = 10


@dataclass(frozen=True)
class Spectrum:
    frequencies: np.ndarray  # angular
    magnitudes: np.ndarray
    window: str
    n_samples: int = 0
    dt: float = 0.0

    @property
    def resolution(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])

    def energy(self) -> float:
        """Parseval sum of the one-sided spectrum: equals sum of squared
        tapered samples."""
        m2 = self.magnitudes**2
        weights = np.full(m2.size, 2.0)
        weights[0] = 1.0
        if self.n_samples % 2 == 0:
            weights[-1] = 1.0
        return float(np.sum(weights * m2) / self.n_samples)


def _taper(name: str, n: int) -> np.ndarray:
    if name == "hann":
        return np.hanning(n)
    if name in ("rect", "rectangular", "none"):
        return np.ones(n)
    raise ValueError(f"unknown window {name!r}")


def tapered(series: TimeSeries, window: str = "hann") -> np.ndarray:
    x = series.values - series.values.mean()
    return x * _taper(window, x.size)


def dft_spectrum(series: TimeSeries, window: str = "hann") -> Spectrum:
    """One-sided magnitude spectrum of the mean-subtracted, tapered series."""
    n = len(series)
    if n < MIN_SPECTRUM_SAMPLES:
        raise ValueError(f"need at least {MIN_SPECTRUM_SAMPLES} samples, got {n}")
    x = tapered(series, window)
    mags = np.abs(np.fft.rfft(x))
    freqs = 2.0 * np.pi * np.fft.rfftfreq(n, series.dt)
    return Spectrum(freqs, mags, window, n, series.dt)


def _parabolic(y, i):
    """Vertex offset and height of the parabola through y[i-1], y[i], y[i+1]."""
    a, b, c = y[i - 1], y[i], y[i + 1]
    denom = a - 2.0 * b + c
    if denom == 0.0:
        return 0.0, b
    off = 0.5 * (a - c) / denom
    return off, b - 0.25 * (a - c) * off


def peak_frequencies(spectrum: Spectrum, count: int = 2, *, fmin: float = 0.0, fmax: float = math.inf):
    """Strongest local maxima as (frequency, magnitude), parabolically refined.

    Refinement runs on log-magnitude, which is exact for a Gaussian-like
    main lobe and close for Hann. Ties go to the lower frequency.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    m = spectrum.magnitudes
    f = spectrum.frequencies
    inner = np.arange(1, m.size - 1)
    is_peak = (m[inner] > m[inner - 1]) & (m[inner] >= m[inner + 1]) & (m[inner] > 0)
    idx = inner[is_peak]
    idx = idx[(f[idx] >= fmin) & (f[idx] <= fmax)]
    order = np.lexsort((idx, -m[idx]))
    out = []
    df = f[1] - f[0]
    with np.errstate(divide="ignore"):
        logm = np.log(m)
    for i in idx[order][:count]:
        if np.all(np.isfinite(logm[i - 1 : i + 2])):
            off, lh = _parabolic(logm, i)
            height = math.exp(lh)
        else:
            off, height = _parabolic(m, i)
        out.append((float(f[i] + off * df), float(height)))
    return out


def slow_peak(spectrum: Spectrum, period: float) -> tuple[float, float]:
    """Strongest peak between the first bins and half the drive frequency."""
    peaks = peak_frequencies(spectrum, 1, fmin=2.0 * spectrum.resolution, fmax=math.pi / period)
    if not peaks:
        raise ValueError("no slow peak found")
    return peaks[0]


def long_time_average(series: TimeSeries, burn_in_fraction: float = 0.0) -> float:
    if not 0.0 <= burn_in_fraction < 1.0:
        raise ValueError("burn_in_fraction must lie in [0, 1)")
    start = int(math.floor(burn_in_fraction * len(series)))
    return float(np.mean(series.values[start:]))


@dataclass(frozen=True)
class EnvelopeFit:
    exponent: float
    amplitude: float
    n: np.ndarray = field(repr=False)
    extrema: np.ndarray = field(repr=False)


def envelope_exponent(series: TimeSeries, *, n_min: int = 200, n_max: int | None = None, center: float | None = None) -> EnvelopeFit:
    """Fit |extremum - center| ~ amplitude * n^exponent over the local
    extrema of a stroboscopic series (sample index = cycle number).

    ``center`` defaults to the mean over the fitted window.
    """
    if len(series) < MIN_ENVELOPE_SAMPLES:
        raise ValueError(f"need at least {MIN_ENVELOPE_SAMPLES} samples, got {len(series)}")
    n_all = np.rint(series.times / series.dt).astype(np.int64)
    keep = n_all >= max(n_min, 1)
    if n_max is not None:
        keep &= n_all <= n_max
    n, y = n_all[keep], series.values[keep]
    y = y - (np.mean(y) if center is None else center)
    mid = np.arange(1, y.size - 1)
    up = (y[mid] > y[mid - 1]) & (y[mid] >= y[mid + 1])
    down = (y[mid] < y[mid - 1]) & (y[mid] <= y[mid + 1])
    ext = mid[up | down]
    ext = ext[np.abs(y[ext]) > 0]
    if ext.size < MIN_EXTREMA:
        raise ValueError(f"only {ext.size} extrema found; no decaying oscillation to fit")
    slope, intercept = np.polyfit(np.log(n[ext]), np.log(np.abs(y[ext])), 1)
    return EnvelopeFit(float(slope), float(math.exp(intercept)), n[ext], y[ext])


METRICS = ("q", "omega_q", "t_q", "mz")


@dataclass(frozen=True)
class ScanResult:
    parameter: str
    grid: np.ndarray
    metric: str
    values: np.ndarray  # closed-form (fast path); NaN where the point failed
    simulated: np.ndarray | None = None  # slow path, when requested
    errors: dict = field(default_factory=dict)  # grid index -> message


def _params_for(over, x, gamma0, period):
    if over == "p":
        return DriveParams.from_p(x, gamma0=gamma0, period=period)
    if over == "period":
        return DriveParams(gamma0, x)
    if over == "gamma0":
        return DriveParams(x, period)
    raise ValueError(f"cannot scan over {over!r}")


def _fast(metric, params, quadrature, cycles):
    if metric == "q":
        return closed_form.q_factor(params, quadrature)
    if metric == "omega_q":
        return closed_form.omega_q(params)[1]
    if metric == "t_q":
        return 2.0 * math.pi / closed_form.omega_q(params)[1]
    if metric == "mz":
        # stroboscopic M_z after `cycles` periods
        grid = as_grid(quadrature)
        mk = closed_form.stroboscopic_mk(params, grid.k, cycles)
        return float(-1.0 + 2.0 * grid.mean(mk))
    raise ValueError(f"unknown metric {metric!r}")


def _slow(metric, params, quadrature, cycles, samples_per_cycle):
    if metric == "q":
        return long_time_average(time_series(params, cycles, 1, quadrature))
    if metric in ("omega_q", "t_q"):
        spec = dft_spectrum(time_series(params, cycles, samples_per_cycle, quadrature))
        w = slow_peak(spec, params.period)[0]
        return w if metric == "omega_q" else 2.0 * math.pi / w
    if metric == "mz":
        return float(time_series(params, cycles + 1, 1, quadrature).values[cycles])
    raise ValueError(f"unknown metric {metric!r}")


def scan(
    metric: str,
    grid,
    *,
    over: str = "p",
    gamma0: float | None = None,
    period: float | None = None,
    quadrature=None,
    simulate: bool = False,
    cycles: int = 1000,
    samples_per_cycle: int = 20,
) -> ScanResult:
    """Evaluate ``metric`` on each grid point; failures are recorded, not raised.

    ``over="p"`` needs exactly one of gamma0 / period held fixed;
    ``over="period"`` fixes gamma0 and ``over="gamma0"`` fixes period.
    ``cycles`` is the evaluation cycle for ``mz`` and the run length of the
    simulated estimators.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2:
        raise ValueError("scan grid needs at least two points")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")
    values = np.full(grid.size, np.nan)
    sim = np.full(grid.size, np.nan) if simulate else None
    errors = {}
    for i, x in enumerate(grid):
        try:
            params = _params_for(over, float(x), gamma0, period)
            values[i] = _fast(metric, params, quadrature, cycles)
            if simulate:
                sim[i] = _slow(metric, params, quadrature, cycles, samples_per_cycle)
        except (ValueError, ArithmeticError) as exc:
            errors[i] = str(exc)
    return ScanResult(over, grid, metric, values, sim, errors)
