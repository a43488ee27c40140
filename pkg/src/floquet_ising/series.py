"""Uniformly sampled real time series and its CSV round-trip."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TimeSeries:
    t0: float
    dt: float
    values: np.ndarray
    stroboscopic: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise ValueError(f"dt must be positive and finite, got {self.dt}")
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise ValueError("series contains non-finite values")

    def __len__(self):
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @classmethod
    def from_samples(cls, times, values, *, rtol: float = 1e-9, stroboscopic: bool = False) -> "TimeSeries":
        """Build from explicit sample times, which must be uniformly spaced."""
        times = np.asarray(times, dtype=float)
        if times.size < 2:
            raise ValueError("need at least two samples to infer the spacing")
        steps = np.diff(times)
        dt = (times[-1] - times[0]) / (times.size - 1)
        if np.max(np.abs(steps - dt)) > rtol * max(abs(dt), np.max(np.abs(times))):
            raise ValueError("samples are not uniformly spaced")
        return cls(float(times[0]), float(dt), values, stroboscopic=stroboscopic)

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_table(buf, ("t", "mz"), (self.times, self.values))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, source, **kwargs) -> "TimeSeries":
        """Parse a ``t,mz`` table from a path or an open text stream."""
        header, cols = read_table(source)
        if header[:2] != ["t", "mz"]:
            raise ValueError(f"expected header 't,mz', got {','.join(header)}")
        return cls.from_samples(cols[0], cols[1], **kwargs)


def format_float(x) -> str:
    return format(float(x), ".17g")


def write_table(stream, header, columns):
    """Write columns as CSV with round-trip-safe floats."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow([format_float(v) for v in row])


def read_table(source):
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        with open(source, newline="") as fh:
            rows = list(csv.reader(fh))
    if not rows:
        raise ValueError("empty table")
    header = [h.strip() for h in rows[0]]
    data = np.array([[float(v) for v in row] for row in rows[1:] if row], dtype=float)
    if data.size == 0:
        data = np.empty((0, len(header)))
    return header, [data[:, j] for j in range(len(header))]
