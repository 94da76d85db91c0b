"""Concrete chart models: flat space, round sphere, hyperbolic space, and
seeded random polynomial connections.

Every model supplies exact Christoffel jets (closed form or polynomial shift),
so no finite differencing enters the curvature pipeline.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import ManifoldModel
from .polyjet import PolyTensor, contract, monomial_exponents, monomial_indices, reciprocal


class FlatSpace(ManifoldModel):
    """R^d with the trivial connection; everything downstream is exactly zero."""

    name = "flat"

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension

    def christoffel_jet(self, x, order: int) -> PolyTensor:
        d = self.dimension
        return PolyTensor.zeros(d, order, (d, d, d))

    def christoffel(self, x) -> np.ndarray:
        d = self.dimension
        return np.zeros((d, d, d))

    def metric(self, x) -> np.ndarray:
        return np.eye(self.dimension)


class _ConformalModel(ManifoldModel):
    """Conformally flat metric g = (a/u)^2 * I with u(x) = c0 + sigma |x|^2.

    Christoffels follow the conformal rule with phi = log a - log u:
        Gamma^k_ij = dphi_i d_jk + dphi_j d_ik - dphi_k d_ij,
        dphi_i = -2 sigma x_i / u.
    Jets come from expanding 1/u as a truncated geometric series about the
    base point, which is exact to the truncation order.
    """

    def __init__(self, dimension: int, c0: float, sigma: float, factor_num: float):
        if dimension < 2:
            raise ValueError("dimension must be at least 2")
        self.dimension = dimension
        self._c0 = float(c0)
        self._sigma = float(sigma)
        self._a = float(factor_num)

    def _u(self, x) -> float:
        return self._c0 + self._sigma * float(np.dot(x, x))

    def conformal_factor(self, x) -> float:
        """lambda(x) with g = lambda^2 * I."""
        return self._a / self._u(np.asarray(x, dtype=float))

    def metric(self, x) -> np.ndarray:
        lam = self.conformal_factor(x)
        return lam * lam * np.eye(self.dimension)

    @staticmethod
    def _symbol_pattern(x: np.ndarray) -> np.ndarray:
        """A[k,i,j] = x_i d_jk + x_j d_ik - x_k d_ij."""
        d = len(x)
        eye = np.eye(d)
        return (np.einsum("i,jk->kij", x, eye)
                + np.einsum("j,ik->kij", x, eye)
                - np.einsum("k,ij->kij", x, eye))

    def christoffel(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        w = -2.0 * self._sigma / self._u(x)
        return w * self._symbol_pattern(x)

    def christoffel_jet(self, x, order: int) -> PolyTensor:
        x = np.asarray(x, dtype=float)
        d = self.dimension
        lookup = monomial_indices(d, order) if order >= 1 else None

        u = PolyTensor.zeros(d, min(order, 2), ())
        u.data[0] = self._u(x)
        if order >= 1:
            sub = monomial_indices(d, u.degree)
            for m in range(d):
                e = tuple(1 if k == m else 0 for k in range(d))
                u.data[sub[e]] = 2.0 * self._sigma * x[m]
            if order >= 2:
                for m in range(d):
                    e = tuple(2 if k == m else 0 for k in range(d))
                    u.data[sub[e]] = self._sigma
        w = reciprocal(u, order) * (-2.0 * self._sigma)

        pattern = PolyTensor.zeros(d, order, (d, d, d))
        pattern.data[0] = self._symbol_pattern(x)
        if order >= 1:
            for m in range(d):
                e = tuple(1 if k == m else 0 for k in range(d))
                unit = np.zeros(d)
                unit[m] = 1.0
                pattern.data[lookup[e]] = self._symbol_pattern(unit)
        return contract(",kij->kij", w.extend(order), pattern, order)


class Sphere(_ConformalModel):
    """Round d-sphere of the given radius in a stereographic chart.

    Chart domain is all of R^d (one point of the sphere is missed); sectional
    curvature is 1/radius^2 and the connection is locally symmetric.
    """

    name = "sphere"

    def __init__(self, dimension: int, radius: float = 1.0):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.radius = float(radius)
        r2 = radius * radius
        super().__init__(dimension, c0=r2, sigma=+1.0, factor_num=2.0 * r2)


class HyperbolicSpace(_ConformalModel):
    """Hyperbolic d-space of curvature -1 in the Poincare ball chart."""

    name = "hyperbolic"

    def __init__(self, dimension: int):
        super().__init__(dimension, c0=1.0, sigma=-1.0, factor_num=2.0)

    def in_domain(self, x) -> bool:
        return float(np.dot(x, x)) < 1.0


class PolynomialConnection(ManifoldModel):
    """A generic non-metric torsion-free connection with polynomial Christoffels.

    Coefficients are drawn uniformly from [-scale, scale] per monomial and
    symmetrized in the lower index pair; generation is deterministic in the
    seed.  Jets are exact polynomial recenterings.
    """

    name = "polynomial"

    def __init__(self, dimension: int, max_poly_degree: int = 3, scale: float = 0.5, seed: int = 0):
        if dimension < 2:
            raise ValueError("dimension must be at least 2")
        if max_poly_degree < 0:
            raise ValueError("max_poly_degree must be nonnegative")
        self.dimension = dimension
        self.max_poly_degree = int(max_poly_degree)
        self.scale = float(scale)
        self.seed = int(seed)

        d = dimension
        exps = monomial_exponents(d, self.max_poly_degree)
        rng = np.random.default_rng(self.seed)
        raw = rng.uniform(-self.scale, self.scale, size=(len(exps), d, d, d))
        self.coefficients = 0.5 * (raw + raw.swapaxes(2, 3))
        self._exps = exps

        # shift tables: binomials and exponent differences for recentering,
        # target monomials are the same set (a shifted degree-D polynomial has
        # degree D)
        ea = exps[:, None, :]
        eb = exps[None, :, :]
        diff = ea - eb
        valid = np.all(diff >= 0, axis=2)
        self._shift_exps = np.clip(diff, 0, None)
        comb = np.vectorize(math.comb)
        binom = np.prod(comb(ea, np.minimum(eb, ea)), axis=2)
        self._shift_binom = np.where(valid, binom, 0.0)

    def in_domain(self, x) -> bool:
        return float(np.dot(x, x)) < 1.0

    def christoffel(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        weights = np.prod(x[None, :] ** self._exps, axis=1)
        return np.einsum("s,skij->kij", weights, self.coefficients)

    def christoffel_jet(self, x, order: int) -> PolyTensor:
        x = np.asarray(x, dtype=float)
        d = self.dimension
        powers = np.prod(x[None, None, :] ** self._shift_exps, axis=2)
        weights = self._shift_binom * powers
        shifted = np.einsum("st,skij->tkij", weights, self.coefficients)
        out = PolyTensor.zeros(d, order, (d, d, d))
        rows = min(out.data.shape[0], shifted.shape[0])
        out.data[:rows] = shifted[:rows]
        return out


def flat(dimension: int) -> FlatSpace:
    return FlatSpace(dimension)


def sphere(dimension: int, radius: float = 1.0) -> Sphere:
    return Sphere(dimension, radius)


def hyperbolic(dimension: int) -> HyperbolicSpace:
    return HyperbolicSpace(dimension)


def polynomial_connection(dimension: int, max_poly_degree: int = 3,
                          scale: float = 0.5, seed: int = 0) -> PolynomialConnection:
    return PolynomialConnection(dimension, max_poly_degree, scale, seed)


def from_config(config: dict) -> ManifoldModel:
    """Build a model from a CLI-style description dict."""
    cfg = dict(config)
    kind = cfg.pop("kind", None)
    if kind is None:
        raise ValueError("manifold config needs a 'kind' field")
    d = int(cfg.pop("dimension"))
    if kind == "flat":
        model = flat(d)
    elif kind == "sphere":
        model = sphere(d, float(cfg.pop("radius", 1.0)))
    elif kind == "hyperbolic":
        model = hyperbolic(d)
    elif kind == "polynomial":
        model = polynomial_connection(
            d,
            int(cfg.pop("degree", 3)),
            float(cfg.pop("scale", 0.5)),
            int(cfg.pop("seed", 0)),
        )
    else:
        raise ValueError(f"unknown manifold kind {kind!r}")
    if cfg:
        raise ValueError(f"unused manifold config fields: {sorted(cfg)}")
    return model
