"""Small dense multilinear algebra at a single tangent space.

Tensors live over one d-dimensional real vector space (the tangent space at a
chart point).  Components are stored dense, contravariant slots first, then
covariant slots in declared order.  Tangent vectors are plain 1-d numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _as_components(values, ndim_expected: int) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != ndim_expected:
        raise ValueError(f"expected a rank-{ndim_expected} component array, got rank {arr.ndim}")
    if arr.ndim > 0:
        d = arr.shape[0]
        if any(s != d for s in arr.shape):
            raise ValueError(f"all slots must share one dimension, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("tensor components must be finite")
    return arr


@dataclass(eq=False)
class DenseTensor:
    """Mixed-variance tensor: `contravariant` upper slots then `covariant` lower slots."""

    contravariant: int
    covariant: int
    components: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.contravariant < 0 or self.covariant < 0:
            raise ValueError("arities must be nonnegative")
        self.components = _as_components(self.components, self.contravariant + self.covariant)

    @property
    def dimension(self) -> int:
        return self.components.shape[0] if self.components.ndim else 1

    def to_json(self) -> dict:
        return {
            "contravariant": self.contravariant,
            "covariant": self.covariant,
            "dimension": self.dimension,
            "components": self.components.ravel().tolist(),
        }

    @classmethod
    def from_json(cls, blob: dict) -> "DenseTensor":
        p, q, d = blob["contravariant"], blob["covariant"], blob["dimension"]
        comps = np.asarray(blob["components"], dtype=float).reshape((d,) * (p + q))
        return cls(p, q, comps)


def contract_leading(tensor: DenseTensor, v: np.ndarray, n: int) -> DenseTensor:
    """Contract the vector v into the first covariant slot, n times.

    Equals the full contraction of the n-fold tensor power of v with the leading
    n covariant slots.
    """
    if n < 0:
        raise ValueError("contraction count must be nonnegative")
    if n > tensor.covariant:
        raise ValueError(f"cannot contract {n} covariant slots, tensor has {tensor.covariant}")
    v = np.asarray(v, dtype=float)
    if v.shape != (tensor.dimension,):
        raise ValueError(f"vector shape {v.shape} does not match dimension {tensor.dimension}")
    comps = tensor.components
    for _ in range(n):
        comps = np.tensordot(comps, v, axes=([tensor.contravariant], [0]))
    return DenseTensor(tensor.contravariant, tensor.covariant - n, comps)


@dataclass(eq=False)
class LinearOperator:
    """A d x d real matrix acting on the tangent space."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.matrix = _as_components(self.matrix, 2)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, d: int) -> "LinearOperator":
        return cls(np.eye(d))

    @classmethod
    def zero(cls, d: int) -> "LinearOperator":
        return cls(np.zeros((d, d)))

    def apply(self, w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        if w.shape != (self.dimension,):
            raise ValueError(f"vector shape {w.shape} does not match dimension {self.dimension}")
        return self.matrix @ w

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return compose(self, other)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        if self.dimension != other.dimension:
            raise ValueError("operator dimensions differ")
        return LinearOperator(self.matrix + other.matrix)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        if self.dimension != other.dimension:
            raise ValueError("operator dimensions differ")
        return LinearOperator(self.matrix - other.matrix)

    def __mul__(self, scalar: float) -> "LinearOperator":
        return LinearOperator(self.matrix * float(scalar))

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "matrix": self.matrix.tolist()}

    @classmethod
    def from_json(cls, blob: dict) -> "LinearOperator":
        return cls(np.asarray(blob["matrix"], dtype=float))


def compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """Matrix product a * b (apply b first)."""
    if a.dimension != b.dimension:
        raise ValueError(f"operator dimensions differ: {a.dimension} vs {b.dimension}")
    return LinearOperator(a.matrix @ b.matrix)


def apply(a: LinearOperator, w: np.ndarray) -> np.ndarray:
    """Matrix-vector product a @ w."""
    return a.apply(w)


def frobenius_norm(a: LinearOperator) -> float:
    return float(np.linalg.norm(a.matrix))


def operator_distance(a: LinearOperator, b: LinearOperator) -> float:
    """Frobenius norm of a - b."""
    if a.dimension != b.dimension:
        raise ValueError("operator dimensions differ")
    return float(np.linalg.norm(a.matrix - b.matrix))
