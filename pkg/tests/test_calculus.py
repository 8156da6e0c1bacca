import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcircle.calculus import (OneForm, cut_constant, div_mu, green,
                              inv_density_integral, laplace_mu, project_exact)
from wcircle.errors import NotSolvable
from wcircle.measure import make_density, uniform_density
from wcircle.trigpoly import (QuadratureGrid, TrigPoly, derivative, integrate,
                              multiply)

GRID = QuadratureGrid(4096)


def bump_density(eps=0.05, m=1):
    return make_density(TrigPoly.basis("cos", m, eps))


def test_div_mu_has_zero_weighted_mean():
    mu = bump_density()
    Z = TrigPoly(np.array([0.3, 1.0, -0.5]), np.array([0.2, 0.4]))
    f = div_mu(mu, Z)
    assert abs(integrate(multiply(f, mu.rho))) < 1e-14


def test_green_inverts_weighted_laplacian():
    mu = bump_density(0.04, 2)
    # an admissible right-hand side: any div_mu image
    f = div_mu(mu, TrigPoly.basis("sin", 1, 1.0))
    psi = green(mu, f)
    res = laplace_mu(mu, psi) + f
    assert np.max(np.abs(res.eval(GRID.nodes))) < 1e-10
    assert psi.is_meanfree()


def test_green_rejects_nonsolvable_data():
    mu = bump_density()
    with pytest.raises(NotSolvable):
        green(mu, TrigPoly.basis("cos", 1, 1.0) + TrigPoly.constant(0.5))


def test_projection_residual_orthogonal_to_exact_forms():
    mu = bump_density(0.06, 1)
    h = TrigPoly(np.array([0.2, 0.7, -0.3]), np.array([0.1, 0.5]))
    alpha = OneForm(h, mu)
    psi, residual = project_exact(alpha)
    for kind, n in [("cos", 1), ("sin", 1), ("cos", 3), ("sin", 2)]:
        exact = OneForm(derivative(TrigPoly.basis(kind, n)), mu)
        assert abs(residual.pair(exact)) < 1e-12
    # reconstruction: h = psi' + C / rho pointwise
    C = cut_constant(alpha)
    recon = derivative(psi).eval(GRID.nodes) + C / mu.rho.eval(GRID.nodes)
    assert np.max(np.abs(recon - h.eval(GRID.nodes))) < 1e-10


@given(st.floats(-0.04, 0.04))
@settings(max_examples=15)
def test_cut_constant_scales_with_mean(eps):
    mu = bump_density(0.05, 2)
    h = TrigPoly.constant(eps) + TrigPoly.basis("sin", 1, 0.3)
    C = cut_constant(OneForm(h, mu))
    expected = 2 * np.pi * eps / inv_density_integral(mu)
    assert C == pytest.approx(expected, abs=1e-14)


def test_pairing_symmetric():
    mu = bump_density()
    f1 = OneForm(TrigPoly.basis("cos", 2), mu)
    f2 = OneForm(TrigPoly.basis("sin", 1), mu)
    assert f1.pair(f2) == pytest.approx(f2.pair(f1), abs=1e-15)


def test_inv_density_integral_uniform():
    assert inv_density_integral(uniform_density()) == pytest.approx(4 * np.pi ** 2,
                                                                    rel=1e-13)
