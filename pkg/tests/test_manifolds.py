import numpy as np
import pytest

from dexpseries.manifolds import (
    FlatSpace,
    flat,
    from_config,
    hyperbolic,
    polynomial_connection,
    sphere,
)


def seeded_points(model, count, rng, radius=0.35):
    pts = rng.uniform(-radius, radius, size=(count, model.dimension))
    return [p for p in pts if model.in_domain(p)]


ZOO = [
    flat(3),
    sphere(2, 1.0),
    sphere(3, 2.0),
    hyperbolic(2),
    hyperbolic(3),
    polynomial_connection(3, 3, 0.5, 42),
    polynomial_connection(2, 2, 0.3, 7),
]


@pytest.mark.parametrize("model", ZOO, ids=lambda m: f"{m.name}{m.dimension}")
def test_torsion_free_symmetry_exact(model):
    rng = np.random.default_rng(1)
    for p in seeded_points(model, 6, rng):
        gamma = model.christoffel(p)
        assert np.array_equal(gamma, gamma.swapaxes(1, 2))


@pytest.mark.parametrize("model", ZOO, ids=lambda m: f"{m.name}{m.dimension}")
def test_jet_value_and_derivative_slots_match_direct_formula(model):
    rng = np.random.default_rng(2)
    for p in seeded_points(model, 3, rng):
        jet = model.christoffel_jet(p, 3)
        assert np.allclose(jet.value, model.christoffel(p), atol=1e-14)
        # the jet, evaluated at a small offset, reproduces Gamma there up to
        # the quartic truncation remainder
        xi = rng.uniform(-0.02, 0.02, size=model.dimension)
        direct = model.christoffel(p + xi)
        assert np.allclose(jet.eval(xi), direct, atol=2e-6)
        # torsion symmetry holds coefficientwise
        assert np.allclose(jet.data, jet.data.swapaxes(2, 3), atol=0)


@pytest.mark.parametrize("model", ZOO, ids=lambda m: f"{m.name}{m.dimension}")
def test_order_zero_jet_matches_value(model):
    p = np.full(model.dimension, 0.07)
    jet = model.christoffel_jet(p, 0)
    assert jet.degree == 0
    assert np.allclose(jet.value, model.christoffel(p), atol=1e-15)


def test_jet_eval_high_order_conformal():
    model = sphere(2, 1.0)
    p = np.array([0.2, -0.1])
    jet = model.christoffel_jet(p, 8)
    xi = np.array([0.08, 0.05])
    assert np.allclose(jet.eval(xi), model.christoffel(p + xi), atol=1e-10)


def test_flat_is_trivial():
    model = flat(4)
    assert np.array_equal(model.christoffel(np.ones(4)), np.zeros((4, 4, 4)))
    jet = model.christoffel_jet(np.zeros(4), 5)
    assert not np.any(jet.data)


def test_sphere_conformal_factor_and_metric():
    model = sphere(2, 1.0)
    assert model.conformal_factor(np.zeros(2)) == pytest.approx(2.0)
    g = model.metric(np.array([0.3, 0.4]))
    lam = 2.0 / (1.0 + 0.25)
    assert np.allclose(g, lam * lam * np.eye(2))


def test_hyperbolic_domain():
    model = hyperbolic(2)
    assert model.in_domain(np.array([0.9, 0.0]))
    assert not model.in_domain(np.array([0.8, 0.7]))
    assert model.conformal_factor(np.zeros(2)) == pytest.approx(2.0)


def test_polynomial_seed_reproducibility():
    a = polynomial_connection(3, 3, 0.5, 42)
    b = polynomial_connection(3, 3, 0.5, 42)
    c = polynomial_connection(3, 3, 0.5, 43)
    assert np.array_equal(a.coefficients, b.coefficients)
    assert not np.array_equal(a.coefficients, c.coefficients)


def test_polynomial_scale_bounds_coefficients():
    model = polynomial_connection(3, 3, 0.5, 11)
    assert np.max(np.abs(model.coefficients)) <= 0.5


def test_polynomial_jet_is_exact_recentering():
    model = polynomial_connection(3, 3, 0.5, 42)
    rng = np.random.default_rng(4)
    p = rng.uniform(-0.3, 0.3, size=3)
    jet = model.christoffel_jet(p, model.max_poly_degree)
    for _ in range(4):
        xi = rng.uniform(-0.4, 0.4, size=3)
        assert np.allclose(jet.eval(xi), model.christoffel(p + xi), atol=1e-12)


def test_polynomial_jet_truncation_padding():
    model = polynomial_connection(2, 2, 0.4, 5)
    p = np.array([0.1, -0.2])
    low = model.christoffel_jet(p, 1)
    high = model.christoffel_jet(p, 6)
    assert np.allclose(high.data[: low.data.shape[0]], low.data)
    # beyond the polynomial degree everything is zero
    from dexpseries.polyjet import monomial_count

    assert not np.any(high.data[monomial_count(2, 2):])


def test_from_config():
    m = from_config({"kind": "sphere", "dimension": 2, "radius": 2.0})
    assert isinstance(m, type(sphere(2))) and m.radius == 2.0
    m = from_config({"kind": "polynomial", "dimension": 3, "degree": 2, "scale": 0.1, "seed": 9})
    assert m.seed == 9 and m.max_poly_degree == 2
    assert isinstance(from_config({"kind": "flat", "dimension": 2}), FlatSpace)
    with pytest.raises(ValueError):
        from_config({"kind": "torus", "dimension": 2})
    with pytest.raises(ValueError):
        from_config({"dimension": 2})
    with pytest.raises(ValueError):
        from_config({"kind": "flat", "dimension": 2, "radius": 1.0})
