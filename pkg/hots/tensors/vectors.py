"""Probability vectors on the simplex"""

from typing import Optional, Union

import numpy as np

from ..core.errors import InvalidInputError

VectorLike = Union["StochasticVector", np.ndarray, list, tuple]


class StochasticVector:
    """Immutable element of the simplex {x >= 0 : sum(x) = 1}"""

    __slots__ = ("_values",)

    def __init__(self, values, tol: float = 1e-12):
        arr = np.array(values, dtype=float).ravel()
        if arr.size == 0:
            raise InvalidInputError("stochastic vector must have positive length")
        if arr.min() < -tol:
            raise InvalidInputError(f"negative entry {arr.min():.3e} in stochastic vector")
        total = arr.sum()
        if abs(total - 1.0) > tol:
            raise InvalidInputError(f"stochastic vector sums to {total!r}, not 1")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def n(self) -> int:
        return self._values.size

    def __len__(self) -> int:
        return self._values.size

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._values
        return self._values.astype(dtype)

    def __repr__(self) -> str:
        return f"StochasticVector({np.array2string(self._values, precision=6)})"

    @classmethod
    def uniform(cls, n: int) -> "StochasticVector":
        if n < 1:
            raise InvalidInputError(f"dimension must be positive, got {n}")
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def one_hot(cls, n: int, index: int) -> "StochasticVector":
        if not 0 <= index < n:
            raise InvalidInputError(f"index {index} out of range for n={n}")
        values = np.zeros(n)
        values[index] = 1.0
        return cls(values)

    @classmethod
    def random(cls, n: int, seed=None) -> "StochasticVector":
        """Uniform draw from the simplex (flat Dirichlet)"""
        rng = np.random.default_rng(seed)
        return cls(normalize(rng.dirichlet(np.ones(n))))

    @classmethod
    def normalized(cls, weights) -> "StochasticVector":
        w = np.asarray(weights, dtype=float)
        if w.min() < 0 or w.sum() <= 0:
            raise InvalidInputError("weights must be nonnegative with positive sum")
        return cls(normalize(w))


def normalize(values: np.ndarray) -> np.ndarray:
    """Rescale to unit sum; exact sums keep iterates on the simplex"""
    return values / values.sum()


def as_array(x: Optional[VectorLike], n: int, name: str = "x") -> np.ndarray:
    """Float array of length n; None means the uniform vector"""
    if x is None:
        return np.full(n, 1.0 / n)
    arr = np.asarray(x, dtype=float).ravel()
    if arr.size != n:
        raise InvalidInputError(f"dimension mismatch: {name} has length {arr.size}, expected {n}")
    return arr


def in_simplex(x: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(x.min() >= -tol and abs(x.sum() - 1.0) <= tol)
