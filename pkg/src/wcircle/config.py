"""Numerical knobs used throughout the package."""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class SpectralConfig:
    """Grid sizes, truncation degrees and floors for the spectral pipeline.

    grid_size: uniform grid used for pointwise work that leaves the
        trigonometric-polynomial class (division by the density, map
        inversion, positivity checks).  Power of two.
    refit_degree: truncation degree used when refitting such pointwise
        results back to a trigonometric polynomial.
    positivity_floor: hard lower bound a density must clear on the grid.
    meanfree_rtol: relative tolerance for "the constant coefficient is zero".
    """

    grid_size: int = 4096
    refit_degree: int = 64
    positivity_floor: float = 1e-9
    meanfree_rtol: float = 1e-12
    solvability_tol: float = 1e-10

    def __post_init__(self):
        if self.grid_size & (self.grid_size - 1):
            raise ValueError(f"grid_size must be a power of two, got {self.grid_size}")


def default_grid_size() -> int:
    """Default working grid size; the WSC_GRID env var overrides it."""
    return int(os.environ.get("WSC_GRID", "4096"))


DEFAULT = SpectralConfig(grid_size=default_grid_size())
