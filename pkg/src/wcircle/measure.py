"""Probability densities on the circle and their tangent vectors.

A density is a strictly positive trigonometric polynomial with constant
coefficient pinned to 1/(2*pi), so its integral over [0, 2*pi) is exactly 1.
Tangent vectors are carried by mean-free potentials; the signed-density
representative of the vector with potential psi is -(rho psi')', the sign
fixed by the continuity equation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, SpectralConfig
from .errors import NotDiffeo, NotPositive
from .trigpoly import QuadratureGrid, TrigPoly, derivative, fit, multiply

__all__ = [
    "Density",
    "TangentVector",
    "SampledDiffeo",
    "UNIFORM_LEVEL",
    "make_density",
    "uniform_density",
    "tangent_density",
    "rotate",
    "pushforward",
]

UNIFORM_LEVEL = 1.0 / (2.0 * np.pi)


@dataclass(frozen=True)
class Density:
    """A point of the smooth Wasserstein space: mu = rho dtheta, rho > 0."""

    rho: TrigPoly

    @property
    def degree(self) -> int:
        return self.rho.degree

    def eval(self, theta):
        return self.rho.eval(theta)

    def to_json_dict(self) -> dict:
        return self.rho.to_json_dict()


@dataclass(frozen=True)
class TangentVector:
    base: Density
    potential: TrigPoly  # mean-free

    def __post_init__(self):
        if not self.potential.is_meanfree(1e-9):
            raise ValueError("tangent potentials must be mean-free")


@dataclass(frozen=True)
class SampledDiffeo:
    """Orientation-preserving circle diffeomorphism sampled on a uniform grid.

    `values` are the lifted images T(theta_j) (monotone increasing as a lift,
    T(theta + 2*pi) = T(theta) + 2*pi), `derivs` the pointwise T' > 0.
    """

    grid: QuadratureGrid
    values: np.ndarray
    derivs: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        d = np.asarray(self.derivs, dtype=float).copy()
        if v.size != self.grid.size or d.size != self.grid.size:
            raise ValueError("sample arrays must match the grid size")
        v.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "derivs", d)

    @staticmethod
    def identity(grid: QuadratureGrid) -> "SampledDiffeo":
        return SampledDiffeo(grid, grid.nodes.copy(), np.ones(grid.size))

    @staticmethod
    def rotation(grid: QuadratureGrid, s: float) -> "SampledDiffeo":
        return SampledDiffeo(grid, grid.nodes + s, np.ones(grid.size))


def make_density(coeffs: TrigPoly, config: SpectralConfig = DEFAULT) -> Density:
    """Validate and normalize: a0 forced to 1/(2*pi), positivity on the grid."""
    a = coeffs.cos_coeffs.copy()
    a[0] = UNIFORM_LEVEL
    rho = TrigPoly(a, coeffs.sin_coeffs)
    grid = QuadratureGrid(config.grid_size)
    vals = rho.eval(grid.nodes)
    j = int(np.argmin(vals))
    if vals[j] < config.positivity_floor:
        raise NotPositive(
            f"density minimum {vals[j]:.3e} at theta = {grid.nodes[j]:.6f} "
            f"is below the floor {config.positivity_floor:g}",
            operation="make_density", minimum=vals[j], theta=grid.nodes[j])
    return Density(rho)


def uniform_density() -> Density:
    return Density(TrigPoly.constant(UNIFORM_LEVEL))


def tangent_density(v: TangentVector) -> TrigPoly:
    """Signed density -(rho psi')' of the tangent vector; always mean-free."""
    return -derivative(multiply(v.base.rho, derivative(v.potential)))


def rotate(mu: Density, s: float) -> Density:
    """Pushforward of mu by theta -> theta + s (coefficient mixing by angle n s)."""
    rho = mu.rho
    n = np.arange(1, rho.degree + 1)
    c, sn = np.cos(n * s), np.sin(n * s)
    a = rho.cos_coeffs[1:]
    b = rho.sin_coeffs
    out_a = np.concatenate(([rho.a0], a * c - b * sn))
    out_b = a * sn + b * c
    return Density(TrigPoly(out_a, out_b))


def _invert_monotone(T: SampledDiffeo, targets: np.ndarray) -> np.ndarray:
    """Solve T(x) = y for each target y by monotone interpolation plus Newton.

    The smooth displacement T(x) - x is refit spectrally so Newton can use
    exact evaluations; linear interpolation of the lift supplies the guess.
    """
    grid = T.grid
    two_pi = 2.0 * np.pi
    x_ext = np.concatenate([grid.nodes - two_pi, grid.nodes, grid.nodes + two_pi])
    v_ext = np.concatenate([T.values - two_pi, T.values, T.values + two_pi])
    x0 = np.interp(targets, v_ext, x_ext)

    deg = min(grid.size // 2 - 1, max(64, 8))
    disp = fit(T.values - grid.nodes, deg, grid)
    ddisp = fit(T.derivs - 1.0, deg, grid)
    x = x0
    for _ in range(50):
        r = x + disp.eval(x) - targets
        x = x - r / (1.0 + ddisp.eval(x))
        if np.max(np.abs(r)) < 1e-13:
            break
    return x


def pushforward(mu: Density, T: SampledDiffeo, out_degree: int | None = None,
                config: SpectralConfig = DEFAULT) -> Density:
    """Pushforward density under a sampled diffeomorphism.

    Uses rho_new(T(x)) T'(x) = rho(x): the map is inverted on the output grid
    and the quotient refit to `out_degree` (defaults to the refit degree cap).
    """
    if np.any(T.derivs <= 0.0):
        j = int(np.argmin(T.derivs))
        raise NotDiffeo(
            f"sampled derivative {T.derivs[j]:.3e} <= 0 at theta = {T.grid.nodes[j]:.6f}",
            operation="pushforward", theta=T.grid.nodes[j], deriv=T.derivs[j])
    grid = QuadratureGrid(config.grid_size)
    x = _invert_monotone(T, grid.nodes)
    deg = min(T.grid.size // 2 - 1, max(64, 8))
    dT = fit(T.derivs - 1.0, deg, T.grid)
    vals = mu.rho.eval(x) / (1.0 + dT.eval(x))
    N = config.refit_degree if out_degree is None else out_degree
    rho_new = fit(vals, min(N, grid.size // 2 - 1), grid)
    return make_density(rho_new, config)
