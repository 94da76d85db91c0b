import numpy as np
import pytest

from dexpseries.polyjet import (
    PolyTensor,
    contract,
    monomial_count,
    monomial_exponents,
    product_table,
    reciprocal,
)


def poly_from_dict(dim, degree, coeffs):
    """Build a scalar PolyTensor from {exponent_tuple: value}."""
    exps = monomial_exponents(dim, degree)
    lookup = {tuple(e): i for i, e in enumerate(exps)}
    out = PolyTensor.zeros(dim, degree, ())
    for e, c in coeffs.items():
        out.data[lookup[e]] = c
    return out


def brute_eval(coeffs, xi):
    return sum(c * np.prod(np.asarray(xi, float) ** np.array(e)) for e, c in coeffs.items())


def test_monomial_counts_and_prefix_property():
    assert monomial_count(3, 0) == 1
    assert monomial_count(3, 2) == 10
    assert monomial_count(2, 3) == 10
    full = monomial_exponents(3, 5)
    for k in range(6):
        prefix = monomial_exponents(3, k)
        assert np.array_equal(full[: monomial_count(3, k)], prefix)


def test_exponent_degrees_sorted():
    exps = monomial_exponents(4, 6)
    totals = exps.sum(axis=1)
    assert np.all(np.diff(totals) >= 0)
    assert totals.max() == 6


def test_eval_matches_brute_force():
    rng = np.random.default_rng(0)
    coeffs = {tuple(e): rng.normal() for e in monomial_exponents(3, 4)}
    p = poly_from_dict(3, 4, coeffs)
    for _ in range(5):
        xi = rng.normal(size=3) * 0.3
        assert p.eval(xi) == pytest.approx(brute_eval(coeffs, xi), rel=1e-12)


def test_diff_matches_brute_force():
    rng = np.random.default_rng(1)
    coeffs = {tuple(e): rng.normal() for e in monomial_exponents(2, 5)}
    p = poly_from_dict(2, 5, coeffs)
    dp = p.diff(0)
    assert dp.degree == 4
    # compare against a central difference of eval at a generic offset
    xi = np.array([0.12, -0.3])
    h = 1e-6
    fd = (p.eval(xi + [h, 0]) - p.eval(xi - [h, 0])) / (2 * h)
    # drop the degree-5 part of p before comparing: its derivative lives in dp
    # exactly, so evaluate dp directly instead
    assert dp.eval(xi) == pytest.approx(fd, rel=1e-6)


def test_diff_of_constant_is_zero():
    p = PolyTensor.constant(3, 0, np.array([1.0, 2.0, 3.0]))
    dp = p.diff(1)
    assert dp.degree == 0
    assert np.array_equal(dp.data, np.zeros_like(dp.data))


def test_contract_scalar_product_matches_polynomial_multiplication():
    rng = np.random.default_rng(2)
    ca = {tuple(e): rng.normal() for e in monomial_exponents(2, 3)}
    cb = {tuple(e): rng.normal() for e in monomial_exponents(2, 3)}
    a = poly_from_dict(2, 3, ca)
    b = poly_from_dict(2, 3, cb)
    prod = contract(",->", a, b, degree=3)
    # brute-force convolution truncated at degree 3
    expected = {}
    for ea, va in ca.items():
        for eb, vb in cb.items():
            e = (ea[0] + eb[0], ea[1] + eb[1])
            if sum(e) <= 3:
                expected[e] = expected.get(e, 0.0) + va * vb
    want = poly_from_dict(2, 3, expected)
    assert np.allclose(prod.data, want.data, atol=1e-13)


def test_contract_tensor_slots():
    rng = np.random.default_rng(3)
    A = PolyTensor(2, 1, rng.normal(size=(3, 2, 2)))
    B = PolyTensor(2, 1, rng.normal(size=(3, 2, 2)))
    C = contract("ij,jk->ik", A, B, degree=1)
    xi = np.array([0.05, -0.02])
    # evaluation differs from the product of evaluations only by the dropped
    # degree-2 cross terms, which are O(|xi|^2)
    direct = A.eval(xi) @ B.eval(xi)
    remainder = np.linalg.norm(A.data[1:]) * np.linalg.norm(B.data[1:]) * np.sum(np.abs(xi)) ** 2
    assert np.linalg.norm(C.eval(xi) - direct) <= remainder
    # exact at the base point
    assert np.allclose(C.value, A.value @ B.value, atol=1e-14)
    # exact first derivatives (product rule)
    for var in range(2):
        want = A.diff(var).value @ B.value + A.value @ B.diff(var).value
        assert np.allclose(C.diff(var).value, want, atol=1e-13)


def test_contract_rejects_uncovered_degree():
    a = PolyTensor.zeros(2, 2, ())
    b = PolyTensor.zeros(2, 1, ())
    with pytest.raises(ValueError):
        contract(",->", a, b, degree=2)


def test_truncate_and_extend():
    rng = np.random.default_rng(4)
    p = PolyTensor(2, 3, rng.normal(size=(10, 2)))
    q = p.truncate(1)
    assert q.degree == 1 and q.data.shape == (3, 2)
    r = q.extend(3)
    assert r.degree == 3
    assert np.array_equal(r.data[:3], q.data)
    assert np.all(r.data[3:] == 0)
    with pytest.raises(ValueError):
        p.truncate(5)
    with pytest.raises(ValueError):
        p.extend(2)


def test_reciprocal():
    rng = np.random.default_rng(5)
    coeffs = {tuple(e): rng.normal() * 0.2 for e in monomial_exponents(2, 2)}
    coeffs[(0, 0)] = 2.0
    u = poly_from_dict(2, 2, coeffs)
    w = reciprocal(u, 6)
    xi = np.array([0.08, -0.05])
    assert w.eval(xi) == pytest.approx(1.0 / brute_eval(coeffs, xi), rel=1e-8)
    prod = contract(",->", u.extend(6), w, degree=6)
    one = PolyTensor.constant(2, 6, np.array(1.0))
    assert np.allclose(prod.data, one.data, atol=1e-12)


def test_product_table_symmetry():
    t = product_table(2, 2, 2, 4)
    exps = monomial_exponents(2, 2)
    lookup = {tuple(e): i for i, e in enumerate(monomial_exponents(2, 4))}
    for i, a in enumerate(exps):
        for j, b in enumerate(exps):
            assert t[i, j] == lookup[tuple(a + b)]


def test_arithmetic_and_alignment():
    a = PolyTensor.constant(2, 2, np.eye(2))
    b = PolyTensor.constant(2, 1, np.eye(2))
    c = a + b
    assert c.degree == 1
    assert np.allclose(c.value, 2 * np.eye(2))
    assert np.allclose((2.0 * a).value, 2 * np.eye(2))
    assert np.allclose((-a).value, -np.eye(2))
    with pytest.raises(ValueError):
        a + PolyTensor.constant(3, 2, np.eye(2))
