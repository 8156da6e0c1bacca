import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcircle.errors import GridTooCoarse, NonZeroMean
from wcircle.trigpoly import (QuadratureGrid, TrigPoly, antiderivative_meanfree,
                              derivative, fit, grid_for_degree, integrate,
                              multiply)


def coeff_arrays(max_degree=8):
    return st.integers(1, max_degree).flatmap(
        lambda N: st.tuples(
            st.lists(st.floats(-5, 5), min_size=N + 1, max_size=N + 1),
            st.lists(st.floats(-5, 5), min_size=N, max_size=N)))


@given(coeff_arrays())
def test_fit_roundtrip(arrs):
    a, b = arrs
    f = TrigPoly(np.array(a), np.array(b))
    grid = grid_for_degree(f.degree)
    g = fit(f.eval(grid.nodes), f.degree, grid)
    assert np.allclose(g.cos_coeffs, f.cos_coeffs, atol=1e-12)
    assert np.allclose(g.sin_coeffs, f.sin_coeffs, atol=1e-12)


@given(coeff_arrays())
def test_derivative_antiderivative_inverse(arrs):
    a, b = arrs
    f = TrigPoly(np.array(a), np.array(b)).meanfree()
    g = antiderivative_meanfree(derivative(f))
    assert np.allclose(g.cos_coeffs, f.cos_coeffs, atol=1e-12)
    assert np.allclose(g.sin_coeffs, f.sin_coeffs, atol=1e-12)


@given(coeff_arrays(4), coeff_arrays(4))
@settings(max_examples=30)
def test_multiply_matches_pointwise(ar1, ar2):
    f = TrigPoly(np.array(ar1[0]), np.array(ar1[1]))
    g = TrigPoly(np.array(ar2[0]), np.array(ar2[1]))
    h = multiply(f, g)
    assert h.degree == f.degree + g.degree
    theta = np.linspace(0, 2 * np.pi, 17)
    assert np.allclose(h.eval(theta), f.eval(theta) * g.eval(theta),
                       atol=1e-10, rtol=1e-10)


def test_integrate_is_2pi_a0():
    f = TrigPoly(np.array([0.3, 1.0, -2.0]), np.array([0.5, 0.25]))
    assert integrate(f) == pytest.approx(0.6 * np.pi, abs=1e-15)


def test_quadrature_exactness():
    grid = QuadratureGrid(64)
    f = TrigPoly.basis("cos", 5, 2.0) + TrigPoly.constant(0.25)
    assert grid.quad(f.eval(grid.nodes)) == pytest.approx(integrate(f), abs=1e-13)


def test_antiderivative_rejects_nonzero_mean():
    with pytest.raises(NonZeroMean):
        antiderivative_meanfree(TrigPoly.constant(1.0))


def test_fit_rejects_coarse_grid():
    grid = QuadratureGrid(8)
    with pytest.raises(GridTooCoarse):
        fit(np.zeros(8), 10, grid)


def test_pad_truncate_add():
    f = TrigPoly(np.array([1.0, 2.0]), np.array([3.0]))
    g = f.pad_to(4)
    assert g.degree == 4 and g.eval(0.7) == pytest.approx(f.eval(0.7))
    assert g.truncate(1).cos_coeffs.tolist() == [1.0, 2.0]
    s = f + g
    assert s.eval(0.3) == pytest.approx(2 * f.eval(0.3))


def test_json_roundtrip():
    f = TrigPoly(np.array([0.1, -0.2, 0.3]), np.array([0.4, 0.0]))
    g = TrigPoly.from_json_dict(f.to_json_dict())
    assert np.array_equal(g.cos_coeffs, f.cos_coeffs)
    assert np.array_equal(g.sin_coeffs, f.sin_coeffs)


def test_coefficients_immutable():
    f = TrigPoly(np.array([1.0, 2.0]), np.array([3.0]))
    with pytest.raises(ValueError):
        f.cos_coeffs[0] = 5.0
