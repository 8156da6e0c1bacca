"""Differential operators weighted by a base density.

div_mu, the weighted Laplacian, its Green operator, and the L2(mu)-orthogonal
projection of 1-forms onto exact forms.  Divisions by the density leave the
polynomial class; they are done pointwise on the working grid and refit at the
configured truncation degree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, SpectralConfig
from .errors import NotSolvable
from .measure import Density
from .trigpoly import (QuadratureGrid, TrigPoly, antiderivative_meanfree,
                       derivative, fit, integrate, multiply)

__all__ = ["OneForm", "div_mu", "laplace_mu", "green", "project_exact",
           "cut_constant", "inv_density_integral"]


@dataclass(frozen=True)
class OneForm:
    """The 1-form h dtheta weighted by a base density for inner products."""

    coeff: TrigPoly
    base: Density

    def pair(self, other: "OneForm") -> float:
        """L2(mu) pairing <h1 dtheta, h2 dtheta> = int h1 h2 rho dtheta."""
        return integrate(multiply(multiply(self.coeff, other.coeff), self.base.rho))


def _refit_quotient(numer_vals, mu: Density, grid: QuadratureGrid,
                    degree: int) -> TrigPoly:
    return fit(numer_vals / mu.rho.eval(grid.nodes), degree, grid)


def div_mu(mu: Density, Z: TrigPoly, config: SpectralConfig = DEFAULT) -> TrigPoly:
    """(rho Z)' / rho; has zero mu-mean by construction."""
    num = derivative(multiply(mu.rho, Z))
    grid = QuadratureGrid(config.grid_size)
    deg = min(config.refit_degree, grid.size // 2 - 1)
    return _refit_quotient(num.eval(grid.nodes), mu, grid, deg)


def laplace_mu(mu: Density, psi: TrigPoly, config: SpectralConfig = DEFAULT) -> TrigPoly:
    """Weighted Laplacian (rho psi')' / rho."""
    return div_mu(mu, derivative(psi), config)


def inv_density_integral(mu: Density, config: SpectralConfig = DEFAULT) -> float:
    """int 1/rho dtheta on the working grid (exact to spectral accuracy)."""
    grid = QuadratureGrid(config.grid_size)
    return grid.quad(1.0 / mu.rho.eval(grid.nodes))


def green(mu: Density, f: TrigPoly, config: SpectralConfig = DEFAULT) -> TrigPoly:
    """Mean-free psi with laplace_mu(mu, psi) = -f.

    Requires int f rho dtheta = 0 (solvability).  Construction: integrate
    -(rho f) once, fix the flux constant so psi' has a periodic primitive,
    divide by rho, integrate again.
    """
    rho_f = multiply(mu.rho, f)
    defect = integrate(rho_f)
    if abs(defect) > config.solvability_tol * (1.0 + f.coeff_norm()):
        raise NotSolvable(f"int f dmu = {defect:.3e} is nonzero", operation="green",
                          defect=defect)
    F = antiderivative_meanfree((-1.0) * rho_f.meanfree())
    grid = QuadratureGrid(config.grid_size)
    inv_rho = 1.0 / mu.rho.eval(grid.nodes)
    C = -grid.quad(F.eval(grid.nodes) * inv_rho) / grid.quad(inv_rho)
    deg = min(config.refit_degree, grid.size // 2 - 1)
    dpsi = fit((F.eval(grid.nodes) + C) * inv_rho, deg, grid)
    return antiderivative_meanfree(dpsi.meanfree())


def project_exact(alpha: OneForm, config: SpectralConfig = DEFAULT):
    """Split alpha = flat(grad psi) + residual with residual orthogonal to
    every exact form in L2(mu).

    On the circle the residual is (C / rho) dtheta with the cut constant
    C = int h dtheta / int 1/rho dtheta; psi is the mean-free primitive of
    h - C/rho.
    """
    mu = alpha.base
    h = alpha.coeff
    grid = QuadratureGrid(config.grid_size)
    inv_rho = 1.0 / mu.rho.eval(grid.nodes)
    C = integrate(h) / grid.quad(inv_rho)
    deg = min(config.refit_degree, grid.size // 2 - 1)
    dpsi = fit(h.eval(grid.nodes) - C * inv_rho, deg, grid)
    psi = antiderivative_meanfree(dpsi.meanfree())
    residual = fit(C * inv_rho, deg, grid)
    return psi, OneForm(residual, mu)


def cut_constant(alpha: OneForm, config: SpectralConfig = DEFAULT) -> float:
    """The scalar C governing the non-exact residual of project_exact."""
    grid = QuadratureGrid(config.grid_size)
    inv_rho = 1.0 / alpha.base.rho.eval(grid.nodes)
    return integrate(alpha.coeff) / grid.quad(inv_rho)
