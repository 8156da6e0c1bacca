import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcircle.errors import NotDiffeo, NotPositive
from wcircle.measure import (SampledDiffeo, TangentVector, UNIFORM_LEVEL,
                             make_density, pushforward, rotate,
                             tangent_density, uniform_density)
from wcircle.trigpoly import QuadratureGrid, TrigPoly, derivative, integrate, multiply


def test_make_density_pins_constant_coefficient():
    mu = make_density(TrigPoly(np.array([0.7, 0.01]), np.array([0.02])))
    assert mu.rho.a0 == UNIFORM_LEVEL
    assert integrate(mu.rho) == pytest.approx(1.0, abs=1e-15)


def test_make_density_rejects_sign_changes():
    with pytest.raises(NotPositive) as exc:
        make_density(TrigPoly.basis("cos", 1, 0.2))
    assert "theta" in exc.value.context


@given(st.floats(-10, 10))
@settings(max_examples=25)
def test_rotate_matches_pointwise(s):
    mu = make_density(TrigPoly(np.array([0.0, 0.03, -0.01]), np.array([0.02, 0.01])))
    nu = rotate(mu, s)
    theta = np.linspace(0, 2 * np.pi, 13)
    assert np.allclose(nu.rho.eval(theta), mu.rho.eval(theta - s), atol=1e-12)


def test_tangent_density_continuity_sign():
    mu = uniform_density()
    psi = TrigPoly.basis("sin", 1, 1.0)
    delta = tangent_density(TangentVector(mu, psi))
    # -(rho psi')' at uniform is rho * sin
    expected = multiply(mu.rho, TrigPoly.basis("sin", 1, 1.0))
    assert np.allclose(delta.cos_coeffs, expected.cos_coeffs, atol=1e-15)
    assert np.allclose(delta.sin_coeffs, expected.sin_coeffs, atol=1e-15)
    assert delta.is_meanfree()


def test_pushforward_by_rotation_matches_rotate():
    mu = make_density(TrigPoly(np.array([0.0, 0.04]), np.array([-0.02])))
    grid = QuadratureGrid(4096)
    s = 1.1
    nu = pushforward(mu, SampledDiffeo.rotation(grid, s))
    exact = rotate(mu, s)
    assert np.max(np.abs(nu.rho.eval(grid.nodes) - exact.rho.eval(grid.nodes))) < 1e-12


def test_pushforward_rejects_non_monotone_maps():
    grid = QuadratureGrid(64)
    values = grid.nodes + 2.0 * np.sin(grid.nodes)
    derivs = 1.0 + 2.0 * np.cos(grid.nodes)
    with pytest.raises(NotDiffeo):
        pushforward(uniform_density(), SampledDiffeo(grid, values, derivs))


def test_tangent_potentials_must_be_meanfree():
    with pytest.raises(ValueError):
        TangentVector(uniform_density(), TrigPoly.constant(1.0))
