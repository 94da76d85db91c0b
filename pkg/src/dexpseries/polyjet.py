"""Truncated multivariate Taylor polynomials with tensor-valued coefficients.

A PolyTensor represents a tensor field near a base point, expanded in the chart
offset xi and truncated at a total degree:

    T(xi) = sum_m  data[m] * xi**exponents[m],          |exponents[m]| <= degree

where data has shape (n_monomials, *tensor_shape).  Monomials are ordered by
total degree and then lexicographically, so the monomials of degree <= k are
always a prefix of the monomials of degree <= k+1; truncation is a row slice.

Coefficients are Taylor coefficients (partial derivative / multi-index
factorial), so the degree-0 row is the field's value at the base point and the
degree-1 rows are its first partial derivatives.

Products are computed by convolving monomial indices; the tensor slots of the
two factors combine through a caller-supplied einsum subscript.
"""

from __future__ import annotations

import math
import string
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def monomial_count(dim: int, degree: int) -> int:
    if degree < 0:
        return 0
    return math.comb(degree + dim, dim)


def _exponents_of_degree(total: int, dim: int):
    if dim == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponents_of_degree(total - first, dim - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_exponents(dim: int, degree: int) -> np.ndarray:
    """(M, dim) integer array of exponent tuples, graded then lexicographic."""
    rows = []
    for total in range(degree + 1):
        rows.extend(_exponents_of_degree(total, dim))
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), dim)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=None)
def monomial_indices(dim: int, degree: int) -> dict:
    return {tuple(e): i for i, e in enumerate(monomial_exponents(dim, degree))}


@lru_cache(maxsize=None)
def product_table(dim: int, deg_a: int, deg_b: int, deg_out: int) -> np.ndarray:
    """(Ma, Mb) table: index of monomial e_a + e_b among degree <= deg_out, or -1."""
    ea = monomial_exponents(dim, deg_a)
    eb = monomial_exponents(dim, deg_b)
    lookup = monomial_indices(dim, deg_out)
    table = np.full((len(ea), len(eb)), -1, dtype=np.int64)
    for i, a in enumerate(ea):
        for j, b in enumerate(eb):
            table[i, j] = lookup.get(tuple(a + b), -1)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _diff_table(dim: int, degree: int, var: int):
    """(src, dst, factor) index arrays implementing d/dxi_var on coefficient rows."""
    exps = monomial_exponents(dim, degree)
    lookup = monomial_indices(dim, degree - 1) if degree >= 1 else {}
    src, dst, fac = [], [], []
    for i, e in enumerate(exps):
        if e[var] == 0:
            continue
        target = list(e)
        target[var] -= 1
        src.append(i)
        dst.append(lookup[tuple(target)])
        fac.append(e[var])
    return (
        np.array(src, dtype=np.int64),
        np.array(dst, dtype=np.int64),
        np.array(fac, dtype=float),
    )


class PolyTensor:
    """Tensor-valued truncated Taylor polynomial; see module docstring."""

    __slots__ = ("dim", "degree", "data")

    def __init__(self, dim: int, degree: int, data: np.ndarray):
        data = np.asarray(data, dtype=float)
        if data.shape[0] != monomial_count(dim, degree):
            raise ValueError(
                f"expected {monomial_count(dim, degree)} coefficient rows for "
                f"dim={dim}, degree={degree}; got {data.shape[0]}"
            )
        self.dim = dim
        self.degree = degree
        self.data = data

    @classmethod
    def zeros(cls, dim: int, degree: int, shape: tuple[int, ...]) -> "PolyTensor":
        return cls(dim, degree, np.zeros((monomial_count(dim, degree),) + tuple(shape)))

    @classmethod
    def constant(cls, dim: int, degree: int, values) -> "PolyTensor":
        values = np.asarray(values, dtype=float)
        out = cls.zeros(dim, degree, values.shape)
        out.data[0] = values
        return out

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape[1:]

    @property
    def value(self) -> np.ndarray:
        """Tensor value at the base point (offset zero)."""
        return self.data[0].copy()

    def truncate(self, degree: int) -> "PolyTensor":
        if degree > self.degree:
            raise ValueError(f"cannot truncate degree {self.degree} up to {degree}")
        if degree == self.degree:
            return self
        return PolyTensor(self.dim, degree, self.data[: monomial_count(self.dim, degree)])

    def extend(self, degree: int) -> "PolyTensor":
        """Pad with zero coefficients up to a larger truncation degree."""
        if degree < self.degree:
            raise ValueError(f"cannot extend degree {self.degree} down to {degree}")
        if degree == self.degree:
            return self
        data = np.zeros((monomial_count(self.dim, degree),) + self.shape)
        data[: self.data.shape[0]] = self.data
        return PolyTensor(self.dim, degree, data)

    def diff(self, var: int) -> "PolyTensor":
        """Partial derivative in chart variable `var`; truncation degree drops by one."""
        if not 0 <= var < self.dim:
            raise ValueError(f"variable index {var} out of range for dim {self.dim}")
        if self.degree == 0:
            return PolyTensor.zeros(self.dim, 0, self.shape)
        src, dst, fac = _diff_table(self.dim, self.degree, var)
        out = PolyTensor.zeros(self.dim, self.degree - 1, self.shape)
        fac = fac.reshape((-1,) + (1,) * len(self.shape))
        out.data[dst] = fac * self.data[src]
        return out

    def eval(self, xi) -> np.ndarray:
        """Evaluate the truncated polynomial at chart offset xi from the base point."""
        xi = np.asarray(xi, dtype=float)
        exps = monomial_exponents(self.dim, self.degree)
        weights = np.prod(xi[None, :] ** exps, axis=1)
        return np.tensordot(weights, self.data, axes=(0, 0))

    def __add__(self, other: "PolyTensor") -> "PolyTensor":
        a, b = _align(self, other)
        return PolyTensor(a.dim, a.degree, a.data + b.data)

    def __sub__(self, other: "PolyTensor") -> "PolyTensor":
        a, b = _align(self, other)
        return PolyTensor(a.dim, a.degree, a.data - b.data)

    def __neg__(self) -> "PolyTensor":
        return PolyTensor(self.dim, self.degree, -self.data)

    def __mul__(self, scalar: float) -> "PolyTensor":
        return PolyTensor(self.dim, self.degree, self.data * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"PolyTensor(dim={self.dim}, degree={self.degree}, shape={self.shape})"


def _align(a: PolyTensor, b: PolyTensor) -> tuple[PolyTensor, PolyTensor]:
    if a.dim != b.dim:
        raise ValueError("polynomial dimensions differ")
    if a.shape != b.shape:
        raise ValueError(f"tensor shapes differ: {a.shape} vs {b.shape}")
    deg = min(a.degree, b.degree)
    return a.truncate(deg), b.truncate(deg)


def contract(subscripts: str, a: PolyTensor, b: PolyTensor, degree: int | None = None) -> PolyTensor:
    """Polynomial product with an einsum contraction over the tensor slots.

    `subscripts` refers to the tensor axes only, e.g. "lim,mjk->lijk"; the
    monomial axis is convolved.  The result is truncated at `degree`, which may
    not exceed min(a.degree, b.degree) (beyond that the product coefficients
    would depend on discarded terms).
    """
    if a.dim != b.dim:
        raise ValueError("polynomial dimensions differ")
    safe = min(a.degree, b.degree)
    if degree is None:
        degree = safe
    if degree > safe:
        raise ValueError(f"product degree {degree} exceeds reliable degree {safe}")
    a = a.truncate(min(a.degree, degree))
    b = b.truncate(min(b.degree, degree))

    lhs, out_sub = subscripts.split("->")
    a_sub, b_sub = lhs.split(",")
    used = set(subscripts) - {",", "-", ">"}
    mono = next(c for c in string.ascii_letters if c not in used)
    stage_sub = f"{a_sub},{mono}{b_sub}->{mono}{out_sub}"

    out_shape = _einsum_output_shape(subscripts, a.shape, b.shape)
    out = PolyTensor.zeros(a.dim, degree, out_shape)
    table = product_table(a.dim, a.degree, b.degree, degree)
    mb = b.data.shape[0]
    for i in range(a.data.shape[0]):
        coeff = a.data[i]
        if not np.any(coeff):
            continue
        idx = table[i, :mb]
        valid = idx >= 0
        if not valid.any():
            continue
        contrib = np.einsum(stage_sub, coeff, b.data[valid])
        out.data[idx[valid]] += contrib
    return out


def _einsum_output_shape(subscripts, a_shape, b_shape):
    lhs, out_sub = subscripts.split("->")
    a_sub, b_sub = lhs.split(",")
    sizes = {}
    for letter, size in zip(a_sub, a_shape):
        sizes[letter] = size
    for letter, size in zip(b_sub, b_shape):
        sizes[letter] = size
    return tuple(sizes[c] for c in out_sub)


def reciprocal(u: PolyTensor, degree: int) -> PolyTensor:
    """1/u as a truncated polynomial; u must be scalar with nonzero constant term.

    Geometric-series expansion: with u = u0 (1 + s) and s carrying no constant
    term, 1/u = (1/u0) sum_k (-s)^k, truncated at `degree`.
    """
    if u.shape != ():
        raise ValueError("reciprocal is defined for scalar polynomials only")
    u0 = float(u.data[0])
    if u0 == 0.0:
        raise ZeroDivisionError("constant term vanishes")
    u = u.extend(degree) if u.degree < degree else u.truncate(degree)
    s = PolyTensor(u.dim, degree, -u.data / u0)
    s.data[0] = 0.0
    out = PolyTensor.constant(u.dim, degree, np.array(1.0))
    power = PolyTensor.constant(u.dim, degree, np.array(1.0))
    for _ in range(degree):
        power = contract(",->", power, s, degree)
        out = out + power
    return PolyTensor(u.dim, degree, out.data / u0)
