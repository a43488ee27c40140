"""Momentum grids for k-integrals over (0, pi)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MIN_NODES = 8


@dataclass(frozen=True)
class KGrid:
    """Nodes and weights for integrating a mode quantity over k in (0, pi).

    ``kind="midpoint"`` places ``nodes`` points at k = (2j+1) pi / (2 nodes),
    which is exactly the antiperiodic momentum set of a chain with
    ``2 * nodes`` sites. ``kind="gauss"`` uses Gauss-Legendre nodes mapped
    onto (0, pi).
    """

    nodes: int = 4096
    kind: str = "midpoint"
    k: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.nodes < MIN_NODES:
            raise ValueError(f"quadrature needs at least {MIN_NODES} nodes, got {self.nodes}")
        if self.kind == "midpoint":
            k = (2.0 * np.arange(self.nodes) + 1.0) * np.pi / (2.0 * self.nodes)
            w = np.full(self.nodes, np.pi / self.nodes)
        elif self.kind == "gauss":
            x, w = np.polynomial.legendre.leggauss(self.nodes)
            k = 0.5 * np.pi * (x + 1.0)
            w = 0.5 * np.pi * w
        else:
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "weights", w)

    @classmethod
    def chain(cls, n_sites: int) -> "KGrid":
        """The k-grid of a finite periodic chain, even-parity sector.

        Bypasses the node minimum so tiny oracle chains (N=2, 4) are allowed.
        """
        if n_sites < 2 or n_sites % 2:
            raise ValueError(f"n_sites must be even and >= 2, got {n_sites}")
        grid = object.__new__(cls)
        object.__setattr__(grid, "nodes", n_sites // 2)
        object.__setattr__(grid, "kind", "midpoint")
        object.__setattr__(grid, "k", (2.0 * np.arange(n_sites // 2) + 1.0) * np.pi / n_sites)
        object.__setattr__(grid, "weights", np.full(n_sites // 2, 2.0 * np.pi / n_sites))
        return grid

    def mean(self, values) -> np.ndarray:
        """(1/pi) * integral over (0, pi), reducing the last axis."""
        # np.sum is pairwise and thread-independent, unlike a BLAS dot
        return np.sum(np.asarray(values) * self.weights, axis=-1) / np.pi


def as_grid(quadrature) -> KGrid:
    """Accept a KGrid, a node count, or None (the default grid)."""
    if quadrature is None:
        return KGrid()
    if isinstance(quadrature, KGrid):
        return quadrature
    return KGrid(int(quadrature))
