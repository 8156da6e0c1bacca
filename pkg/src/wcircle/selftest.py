"""Seeded invariant suite covering every module.

Each check returns a dict with the measured value and its tolerance; the
runner collects them into a JSON-ready report.  All randomness flows from the
single seed, so two runs with the same seed produce identical reports.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT, SpectralConfig
from .connection import (bracket_potential, bracket_potential_hessian_route,
                         christoffel_oracle, christoffel_paper,
                         connection_inner, covariant_derivative, koszul_inner)
from .curvature import flatness_report, t_cut_constant, t_tensor
from .geodesic import (burgers_characteristics, exp_velocity, geodesic_evolve,
                       shock_time)
from .measure import (Density, make_density, rotate, uniform_density)
from .metric import (basis_list, gram, integration_by_parts_inner, otto_inner,
                     otto_norm, paper_metric_coefficient)
from .transport import discretize, displacement_check, w2_bruteforce, w2_cyclic
from .trigpoly import (QuadratureGrid, TrigPoly, antiderivative_meanfree,
                       derivative, integrate, multiply)

__all__ = ["run_selftest"]

TWO_PI = 2.0 * np.pi


def _check(name, measured, tolerance, **detail):
    return {"name": name, "measured": float(measured),
            "tolerance": float(tolerance),
            "passed": bool(measured <= tolerance), **detail}


def _random_density(rng, degree=4, amp=0.02, config=DEFAULT) -> Density:
    decay = 1.0 / np.arange(1, degree + 1)
    a = np.concatenate([[1.0 / TWO_PI], amp * decay * rng.standard_normal(degree)])
    b = amp * decay * rng.standard_normal(degree)
    return make_density(TrigPoly(a, b), config)


def _random_potential(rng, degree=6) -> TrigPoly:
    decay = 1.0 / np.arange(1, degree + 1) ** 2
    a = np.concatenate([[0.0], decay * rng.standard_normal(degree)])
    return TrigPoly(a, decay * rng.standard_normal(degree))


def check_metric_uniform(N=16):
    G = gram(uniform_density(), N)
    labels = G.labels()
    closed = np.array([[paper_metric_coefficient(li, lj) for lj in labels]
                       for li in labels])
    return _check("metric_gram_uniform_matches_closed_form",
                  np.max(np.abs(G.entries - closed)), 1e-12)


def check_metric_integration_by_parts(N=8):
    mu = make_density(TrigPoly.basis("cos", 2, 0.05))
    labels = basis_list(N)
    worst = 0.0
    for li in labels:
        for lj in labels:
            q = otto_inner(mu, li.potential(), lj.potential())
            p = integration_by_parts_inner(mu, li.potential(), lj.potential())
            worst = max(worst, abs(q - p))
    return _check("metric_quadrature_matches_integration_by_parts", worst, 1e-10)


def check_christoffel_closed_form_entry():
    mu = make_density(TrigPoly.basis("cos", 1, 0.1))
    table = christoffel_paper(mu, 2)
    labels = basis_list(2)
    c1 = labels[0]
    return _check("christoffel_closed_form_c1c1c1_entry",
                  abs(table.entry(c1, c1, c1) - (-0.05 * np.pi)), 1e-12)


def check_christoffel_oracle_reconstruction(N=8):
    mu = make_density(TrigPoly.basis("cos", 1, 0.1))
    table = christoffel_oracle(mu, N)
    G = gram(mu, N).entries
    labels = basis_list(N)
    pots = [l.potential() for l in labels]
    rhs = np.array([[[connection_inner(mu, pots[i], pots[j], pots[k])
                      for j in range(2 * N)] for i in range(2 * N)]
                    for k in range(2 * N)])
    recon = np.einsum("kl,lij->kij", G, table.values)
    return _check("christoffel_oracle_reconstructs_quadrature",
                  np.max(np.abs(recon - rhs)), 1e-8,
                  tail_estimate=float(table.tail_estimate))


def check_christoffel_uniform_vanishing(N=4):
    # The closed-form table is zero at uniform by inspection; the oracle
    # table is not (the connection of the Otto metric does not vanish at
    # uniform), so this check measures the larger of the two.
    mu = uniform_density()
    paper = christoffel_paper(mu, N)
    oracle = christoffel_oracle(mu, N)
    worst = max(float(np.max(np.abs(paper.values))),
                float(np.max(np.abs(oracle.values))))
    return _check("christoffel_tables_vanish_at_uniform", worst, 1e-10)


def check_torsion_free(rng, n_densities=5, n_pairs=10, config=DEFAULT):
    worst = 0.0
    for _ in range(n_densities):
        mu = _random_density(rng, config=config)
        for _ in range(n_pairs):
            p1 = _random_potential(rng)
            p2 = _random_potential(rng)
            torsion = (covariant_derivative(mu, p1, p2, config)
                       - covariant_derivative(mu, p2, p1, config)
                       - bracket_potential(mu, p1, p2, config))
            worst = max(worst, otto_norm(mu, torsion.meanfree()))
    return _check("connection_torsion_free", worst, 1e-7)


def check_koszul_consistency(rng, n_densities=3, n_triples=4, config=DEFAULT):
    worst = 0.0
    for _ in range(n_densities):
        mu = _random_density(rng, config=config)
        for _ in range(n_triples):
            p1, p2, p3 = (_random_potential(rng) for _ in range(3))
            worst = max(worst, abs(koszul_inner(mu, p1, p2, p3, config)
                                   - connection_inner(mu, p1, p2, p3)))
    return _check("connection_matches_koszul_formula", worst, 1e-8)


def check_bracket_dual_formula(rng, n_cases=10, config=DEFAULT):
    worst = 0.0
    worst_antisym = 0.0
    for _ in range(n_cases):
        mu = _random_density(rng, config=config)
        p1 = _random_potential(rng)
        p2 = _random_potential(rng)
        th = bracket_potential(mu, p1, p2, config)
        alt = bracket_potential_hessian_route(mu, p1, p2, config)
        worst = max(worst, (th - alt).coeff_norm())
        swapped = bracket_potential(mu, p2, p1, config)
        worst_antisym = max(worst_antisym, (th + swapped).coeff_norm())
    out = _check("bracket_dual_formula_agreement", worst, 1e-9)
    out["antisymmetry_defect"] = float(worst_antisym)
    out["passed"] = out["passed"] and worst_antisym == 0.0
    return out


def _standard_path(config=DEFAULT):
    psi0 = TrigPoly.basis("sin", 1, 0.1)
    return geodesic_evolve(uniform_density(), psi0, 0.5, 10, config), psi0


def check_geodesic_suite(config=DEFAULT):
    path, psi0 = _standard_path(config)
    f = derivative(psi0)
    grid = QuadratureGrid(config.grid_size)
    burgers = 0.0
    mass = 0.0
    speeds = []
    for t, (rho_t, psi_t) in zip(path.times, path.states):
        u = derivative(psi_t)
        uv = u.eval(grid.nodes)
        burgers = max(burgers, float(np.max(np.abs(uv - f.eval(grid.nodes - t * uv)))))
        mass = max(mass, abs(integrate(rho_t.rho) - 1.0))
        speeds.append(otto_norm(rho_t, psi_t))
    speeds = np.array(speeds)
    speed_var = float(np.max(np.abs(speeds - speeds[0])) / speeds[0])
    return [
        _check("geodesic_hamilton_jacobi_residual", path.hj_residual, 1e-6),
        _check("geodesic_burgers_implicit_relation", burgers, 1e-8),
        _check("geodesic_mass_conservation", mass, 1e-10),
        _check("geodesic_otto_speed_constancy", speed_var, 5e-3),
        check_rotation_path(config),
    ]


def check_rotation_path(config=DEFAULT):
    # a constant velocity field rotates any density rigidly
    mu = make_density(TrigPoly(np.array([1.0 / TWO_PI, 0.03, 0.01]),
                               np.array([0.02, -0.01])), config)
    s = 0.37
    pushed = exp_velocity(mu, TrigPoly.constant(s), 1.0, config)
    exact = rotate(mu, s)
    grid = QuadratureGrid(config.grid_size)
    err = float(np.max(np.abs(pushed.rho.eval(grid.nodes) - exact.rho.eval(grid.nodes))))
    return _check("geodesic_rotation_path_exact", err, 1e-10)


def check_distance_linearity(n=512, config=DEFAULT):
    path, _ = _standard_path(config)
    rep = displacement_check(path, n)
    return _check("transport_distance_linear_in_time",
                  rep["max_rel_deviation"], 1e-2, slope=rep["slope"])


def check_transport_oracle(rng, n_pairs=20, atoms=8):
    worst = 0.0
    for _ in range(n_pairs):
        a = np.sort(rng.uniform(0.0, TWO_PI, atoms))
        b = np.sort(rng.uniform(0.0, TWO_PI, atoms))
        from .transport import DiscreteMeasure
        alpha = DiscreteMeasure(a, np.full(atoms, 1.0 / atoms))
        beta = DiscreteMeasure(b, np.full(atoms, 1.0 / atoms))
        worst = max(worst, abs(w2_cyclic(alpha, beta) - w2_bruteforce(alpha, beta)))
    return _check("transport_cyclic_scan_equals_bruteforce", worst, 1e-9)


def check_expmap_montecarlo(rng, n_particles=100_000, bins=64, config=DEFAULT):
    """Pushforward density vs a stratified Monte-Carlo particle histogram."""
    mu = uniform_density()
    psi = TrigPoly.basis("sin", 1, 0.05)
    v = derivative(psi)
    dv = derivative(v)
    nu = exp_velocity(mu, v, 1.0, config)

    # stratified inverse-CDF draw from the uniform initial density
    u = (np.arange(n_particles) + rng.uniform(size=n_particles)) / n_particles
    x = TWO_PI * u
    steps = 64
    h = 1.0 / steps
    for _ in range(steps):
        k1 = v.eval(x)
        k2 = v.eval(x + 0.5 * h * k1)
        k3 = v.eval(x + 0.5 * h * k2)
        k4 = v.eval(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    x %= TWO_PI

    counts, edges = np.histogram(x, bins=bins, range=(0.0, TWO_PI))
    hist_density = counts / (n_particles * (TWO_PI / bins))
    # bin-averaged pushforward density on a fine subgrid per bin
    fine = 16
    tt = (edges[:-1, None]
          + (np.arange(fine)[None, :] + 0.5) * (TWO_PI / bins / fine))
    bin_avg = nu.rho.eval(tt.ravel()).reshape(bins, fine).mean(axis=1)
    return _check("expmap_matches_montecarlo_histogram",
                  np.max(np.abs(hist_density - bin_avg)), 1e-3)


def check_expmap_semigroup(config=DEFAULT):
    mu = make_density(TrigPoly.basis("cos", 1, 0.05), config)
    v = derivative(TrigPoly.basis("sin", 1, 0.05))
    grid = QuadratureGrid(config.grid_size)
    one_shot = exp_velocity(mu, v, 1.0, config)
    two_step = exp_velocity(exp_velocity(mu, v, 0.4, config), v, 0.6, config)
    err = float(np.max(np.abs(one_shot.rho.eval(grid.nodes)
                              - two_step.rho.eval(grid.nodes))))
    return _check("expmap_flow_semigroup", err, 1e-8)


def check_t_tensor(N=8, config=DEFAULT):
    mu = make_density(TrigPoly.basis("cos", 1, 0.1), config)
    labels = basis_list(N)
    antisym = 0.0
    offdiag = 0.0
    for i, li in enumerate(labels):
        for lj in labels[i:]:
            c_ij = t_cut_constant(mu, li.potential(), lj.potential(), config)
            c_ji = t_cut_constant(mu, lj.potential(), li.potential(), config)
            antisym = max(antisym, abs(c_ij + c_ji))
            # the cut integral int psi'' phi' dtheta vanishes unless the pair
            # is a same-index cos/sin couple
            if not (li.index == lj.index and li.kind != lj.kind):
                offdiag = max(offdiag, abs(c_ij), abs(c_ji))
    out = _check("t_tensor_antisymmetry", antisym, 1e-12)
    out2 = _check("t_tensor_vanishes_off_diagonal_pairs", offdiag, 1e-12)
    return [out, out2]


def check_curvature_dual_path(seed, N=4, samples=50, config=DEFAULT):
    out = []
    for name, mu in [("uniform", uniform_density()),
                     ("cos1_0.1", make_density(TrigPoly.basis("cos", 1, 0.1), config))]:
        rep = flatness_report(mu, N, n_oracle_samples=samples, seed=seed,
                              config=config)
        tol = max(1e-3, 0.01 * rep.max_abs_formula)
        out.append(_check(f"curvature_formula_matches_fd_oracle_{name}",
                          rep.max_abs_disagreement, tol,
                          max_abs_formula=float(rep.max_abs_formula)))
    return out


def run_selftest(seed: int = 0, config: SpectralConfig = DEFAULT,
                 quick: bool = False) -> dict:
    """Full invariant suite; `quick` shrinks orders and sample counts without
    changing which properties are exercised."""
    rng = np.random.default_rng(seed)
    checks = [
        check_metric_uniform(N=8 if quick else 16),
        check_metric_integration_by_parts(N=4 if quick else 8),
        check_christoffel_closed_form_entry(),
        check_christoffel_oracle_reconstruction(N=4 if quick else 8),
        check_christoffel_uniform_vanishing(),
        check_torsion_free(rng, n_densities=2 if quick else 5,
                           n_pairs=2 if quick else 10, config=config),
        check_koszul_consistency(rng, n_densities=1 if quick else 3,
                                 n_triples=2 if quick else 4, config=config),
        check_bracket_dual_formula(rng, n_cases=2 if quick else 10,
                                   config=config),
        *check_geodesic_suite(config),
        check_distance_linearity(n=128 if quick else 512, config=config),
        check_transport_oracle(rng, n_pairs=3 if quick else 20),
        check_expmap_montecarlo(rng, n_particles=20_000 if quick else 100_000,
                                config=config),
        check_expmap_semigroup(config),
        *check_t_tensor(N=4 if quick else 8, config=config),
        *check_curvature_dual_path(seed, samples=10 if quick else 50,
                                   config=config),
    ]
    return {"seed": seed,
            "passed": sum(1 for c in checks if c["passed"]),
            "failed": sum(1 for c in checks if not c["passed"]),
            "checks": checks}
