"""Geodesics and constant-velocity curves.

The velocity u = psi' of a geodesic obeys the inviscid Burgers equation
u_t + u u_x = 0, solved classically by characteristics x -> x + t f(x) up to
the first crossing time.  The density rides along via the characteristic
Jacobian; the potential is recovered as the mean-free primitive of u.
Post-shock evolution is refused.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, SpectralConfig
from .connection import bracket_potential
from .errors import ShockReached
from .measure import (Density, SampledDiffeo, make_density, pushforward)
from .metric import otto_norm
from .trigpoly import (QuadratureGrid, TrigPoly, antiderivative_meanfree,
                       derivative, fit, multiply)

__all__ = ["VelocityField", "GeodesicPath", "shock_time",
           "burgers_characteristics", "evolve_velocity", "geodesic_evolve",
           "exp_velocity", "exp_map", "constant_velocity_curve",
           "continuity_residual", "parallel_residual"]


@dataclass(frozen=True)
class VelocityField:
    """Initial Burgers datum u(0, x) = f(x)."""

    u0: TrigPoly


@dataclass(frozen=True)
class GeodesicPath:
    """Times with per-time (density, velocity-potential) states."""

    times: np.ndarray
    states: tuple  # of (Density, TrigPoly)
    shock_time_bound: float
    hj_residual: float = 0.0

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float).copy()
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if t[-1] >= self.shock_time_bound:
            raise ValueError("times must stay below the shock bound")
        t.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", tuple(self.states))


def _as_velocity(f) -> TrigPoly:
    return f.u0 if isinstance(f, VelocityField) else f


def shock_time(f, config: SpectralConfig = DEFAULT) -> float:
    """First characteristic-crossing time of u_t + u u_x = 0; +inf if none."""
    u0 = _as_velocity(f)
    grid = QuadratureGrid(config.grid_size)
    slope = float(np.max(derivative(u0).eval(grid.nodes)))
    return np.inf if slope <= 0.0 else 1.0 / slope


def _characteristic_inverse(f: TrigPoly, t: float, targets: np.ndarray) -> np.ndarray:
    """Solve x + t f(x) = y by Newton; requires 1 + t f' > 0 everywhere."""
    df = derivative(f)
    grid = QuadratureGrid(DEFAULT.grid_size)
    jac_min = float(np.min(1.0 + t * df.eval(grid.nodes)))
    if jac_min <= 0.0:
        raise ShockReached(f"characteristics cross at |t| = {abs(t):g} "
                           f"(Jacobian minimum {jac_min:.3e})",
                           operation="burgers_characteristics", t=t)
    x = targets - t * f.eval(targets)  # first Picard iterate
    for _ in range(60):
        r = x + t * f.eval(x) - targets
        x = x - r / (1.0 + t * df.eval(x))
        if np.max(np.abs(r)) < 1e-13:
            break
    return x


def burgers_characteristics(f, t: float, grid: QuadratureGrid | None = None,
                            config: SpectralConfig = DEFAULT) -> TrigPoly:
    """u(t, .) as a refit TrigPoly; satisfies u(t,x) = f(x - u t) on the grid."""
    u0 = _as_velocity(f)
    if grid is None:
        grid = QuadratureGrid(config.grid_size)
    if t >= 0 and not np.isfinite(t):
        raise ShockReached("t is not finite", operation="burgers_characteristics", t=t)
    if t >= shock_time(u0, config):
        raise ShockReached(f"t = {t:g} is at or past the shock time "
                           f"{shock_time(u0, config):g}",
                           operation="burgers_characteristics", t=t)
    x = _characteristic_inverse(u0, t, grid.nodes)
    deg = min(config.refit_degree, grid.size // 2 - 1)
    return fit(u0.eval(x), deg, grid)


def evolve_velocity(mu0: Density, u0: TrigPoly, t: float,
                    config: SpectralConfig = DEFAULT):
    """Transport (density, velocity) to time t along Burgers characteristics.

    Returns (Density, TrigPoly velocity).  The density comes from
    rho_t(x + t f(x)) (1 + t f'(x)) = rho_0(x).
    """
    grid = QuadratureGrid(config.grid_size)
    if t >= shock_time(u0, config):
        raise ShockReached(f"t = {t:g} is at or past the shock time",
                           operation="evolve_velocity", t=t)
    x = _characteristic_inverse(u0, t, grid.nodes)
    df = derivative(u0)
    deg = min(config.refit_degree, grid.size // 2 - 1)
    u_t = fit(u0.eval(x), deg, grid)
    rho_vals = mu0.rho.eval(x) / (1.0 + t * df.eval(x))
    rho_t = make_density(fit(rho_vals, deg, grid), config)
    return rho_t, u_t


def geodesic_evolve(mu0: Density, psi0: TrigPoly, t_end: float, steps: int,
                    config: SpectralConfig = DEFAULT) -> GeodesicPath:
    """Initial-value geodesic from (mu0, psi0) on an equispaced time grid.

    The Hamilton-Jacobi residual sup |psi_dot + (psi')^2 / 2| is monitored at
    every stored time with a small central difference in t.
    """
    f = derivative(psi0)
    t_shock = shock_time(f, config)
    if t_end >= t_shock:
        raise ShockReached(f"t_end = {t_end:g} is at or past the shock time "
                           f"{t_shock:g}", operation="geodesic_evolve",
                           t_end=t_end, shock_time=t_shock)
    times = np.linspace(0.0, t_end, steps + 1)
    grid = QuadratureGrid(config.grid_size)
    delta = 1e-4
    states = []
    hj_max = 0.0
    for t in times:
        rho_t, u_t = evolve_velocity(mu0, f, t, config)
        psi_t = antiderivative_meanfree(u_t.meanfree())
        states.append((rho_t, psi_t))
        psi_p = antiderivative_meanfree(
            burgers_characteristics(f, t + delta, grid, config).meanfree())
        psi_m = antiderivative_meanfree(
            burgers_characteristics(f, t - delta, grid, config).meanfree())
        psi_dot = (psi_p - psi_m) * (0.5 / delta)
        # Potentials are mean-free representatives of classes mod constants,
        # so the residual is measured mod constants as well.
        res = psi_dot.eval(grid.nodes) + 0.5 * u_t.eval(grid.nodes) ** 2
        res -= np.mean(res)
        hj_max = max(hj_max, float(np.max(np.abs(res))))
    return GeodesicPath(times, states, t_shock, hj_residual=hj_max)


def exp_velocity(mu: Density, v: TrigPoly, t: float = 1.0,
                 config: SpectralConfig = DEFAULT, tol: float = 1e-10) -> Density:
    """Pushforward of mu by the time-t flow of the vector field v.

    Classical four-stage one-step integration of particle positions together
    with the flow Jacobian; the step count doubles until positions are
    converged below `tol`.
    """
    grid = QuadratureGrid(config.grid_size)
    dv = derivative(v)

    def integrate_flow(K):
        h = t / K if K else 0.0
        x = grid.nodes.copy()
        J = np.ones_like(x)
        for _ in range(K):
            k1 = v.eval(x);                 l1 = dv.eval(x) * J
            k2 = v.eval(x + 0.5 * h * k1);  l2 = dv.eval(x + 0.5 * h * k1) * (J + 0.5 * h * l1)
            k3 = v.eval(x + 0.5 * h * k2);  l3 = dv.eval(x + 0.5 * h * k2) * (J + 0.5 * h * l2)
            k4 = v.eval(x + h * k3);        l4 = dv.eval(x + h * k3) * (J + h * l3)
            x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            J = J + (h / 6.0) * (l1 + 2 * l2 + 2 * l3 + l4)
        return x, J

    if t == 0.0:
        return mu
    K = max(8, int(np.ceil(abs(t) * 8)))
    x, J = integrate_flow(K)
    for _ in range(12):
        x2, J2 = integrate_flow(2 * K)
        if np.max(np.abs(x2 - x)) <= tol:
            x, J = x2, J2
            break
        K *= 2
        x, J = x2, J2
    return pushforward(mu, SampledDiffeo(grid, x, J), config=config)


def exp_map(mu: Density, psi: TrigPoly, config: SpectralConfig = DEFAULT) -> Density:
    """Exponential-type map: pushforward by the time-1 flow of grad psi."""
    return exp_velocity(mu, derivative(psi), 1.0, config)


def constant_velocity_curve(mu: Density, psi: TrigPoly, t: float,
                            config: SpectralConfig = DEFAULT) -> Density:
    """The curve with constant velocity potential psi evaluated at time t."""
    return exp_velocity(mu, derivative(psi), t, config)


def continuity_residual(mu: Density, psi: TrigPoly, t: float, dt: float = 1e-3,
                        config: SpectralConfig = DEFAULT) -> float:
    """sup |rho_dot + (rho psi')'| at time t along the constant-velocity curve."""
    grid = QuadratureGrid(config.grid_size)
    v = derivative(psi)
    rho_p = exp_velocity(mu, v, t + dt, config).rho
    rho_m = exp_velocity(mu, v, t - dt, config).rho
    rho_t = exp_velocity(mu, v, t, config).rho
    rho_dot = (rho_p - rho_m) * (0.5 / dt)
    flux = derivative(multiply(rho_t, v))
    return float(np.max(np.abs(rho_dot.eval(grid.nodes) + flux.eval(grid.nodes))))


def parallel_residual(path: GeodesicPath, etas, config: SpectralConfig = DEFAULT) -> float:
    """Residual of the parallel-transport equation for the field V_eta along the path.

    Measured in the Otto norm at interior times: eta_dot by central
    differences, plus the covariant correction
    (<grad eta, grad psi> + bracket) / 2.  The one-half factors make the
    equation consistent with the Levi-Civita connection and the geodesic
    equation (a geodesic's own potential is then parallel up to the
    Hamilton-Jacobi residual).
    """
    times = path.times
    if len(etas) != len(times):
        raise ValueError("need one eta per stored time")
    worst = 0.0
    for i in range(1, len(times) - 1):
        dt = times[i + 1] - times[i - 1]
        eta_dot = (etas[i + 1] - etas[i - 1]) * (1.0 / dt)
        mu_i, psi_i = path.states[i]
        carre = multiply(derivative(etas[i]), derivative(psi_i))
        theta = bracket_potential(mu_i, psi_i, etas[i], config)
        term = eta_dot + 0.5 * carre.meanfree() + 0.5 * theta
        worst = max(worst, otto_norm(mu_i, term.meanfree()))
    return worst
