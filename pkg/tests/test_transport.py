import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcircle.errors import TooLarge, UnequalMasses
from wcircle.measure import make_density, uniform_density
from wcircle.transport import (DiscreteMeasure, circle_distance, discretize,
                               w2_bruteforce, w2_circle, w2_cyclic)
from wcircle.trigpoly import TrigPoly

TWO_PI = 2.0 * np.pi


@given(st.floats(0, TWO_PI - 1e-9), st.floats(0, TWO_PI - 1e-9))
def test_circle_distance_symmetric_and_bounded(x, y):
    d = circle_distance(x, y)
    assert d == circle_distance(y, x)
    assert 0.0 <= d <= np.pi + 1e-12


def test_discretize_uniform_quantiles_exact():
    atoms = discretize(uniform_density(), 8)
    expected = TWO_PI * (np.arange(8) + 0.5) / 8
    assert np.max(np.abs(atoms.positions - expected)) < 1e-12
    assert np.allclose(atoms.masses, 1 / 8)


def test_discretize_concentrates_where_density_is_high():
    mu = make_density(TrigPoly.basis("cos", 1, 0.1))
    atoms = discretize(mu, 64)
    near_peak = np.sum(circle_distance(atoms.positions, 0.0) < np.pi / 2)
    assert near_peak > 32  # more than half the atoms in the high-density half


def equal_mass(rng, n):
    return DiscreteMeasure(np.sort(rng.uniform(0, TWO_PI, n)), np.full(n, 1.0 / n))


def test_cyclic_scan_equals_bruteforce():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a, b = equal_mass(rng, 7), equal_mass(rng, 7)
        assert w2_cyclic(a, b) == pytest.approx(w2_bruteforce(a, b), abs=1e-12)


def test_unequal_masses_rejected():
    a = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
    b = DiscreteMeasure(np.array([0.0, 1.0, 2.0]), np.array([1 / 3] * 3))
    c = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.3, 0.7]))
    with pytest.raises(UnequalMasses):
        w2_cyclic(a, b)
    with pytest.raises(UnequalMasses):
        w2_bruteforce(a, c)


def test_bruteforce_size_cap():
    rng = np.random.default_rng(6)
    with pytest.raises(TooLarge):
        w2_bruteforce(equal_mass(rng, 11), equal_mass(rng, 11))


def test_w2_zero_on_identical_densities():
    mu = make_density(TrigPoly.basis("cos", 1, 0.05))
    assert w2_circle(mu, mu, 128) < 1e-12


def test_w2_symmetric():
    mu = uniform_density()
    nu = make_density(TrigPoly.basis("cos", 1, 0.05))
    assert w2_circle(mu, nu, 128) == pytest.approx(w2_circle(nu, mu, 128), abs=1e-6)


def test_w2_matches_linearized_prediction():
    # to first order in eps, the distance from uniform to 1/(2 pi) + eps cos
    # is the Otto norm of the displacement potential: sqrt(2) pi eps
    eps = 0.05
    mu = uniform_density()
    nu = make_density(TrigPoly.basis("cos", 1, eps))
    d = w2_circle(mu, nu, 512)
    assert d == pytest.approx(np.sqrt(2.0) * np.pi * eps, abs=2e-3)


def test_discrete_measure_validation():
    with pytest.raises(ValueError):
        DiscreteMeasure(np.array([0.0, 7.0]), np.array([0.5, 0.5]))
    with pytest.raises(ValueError):
        DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.6]))
