"""Dense cubical order-3 tensors

Entries are indexed ``entries[i, j, k]``; a tensor is stochastic when every
first-mode column ``entries[:, j, k]`` is a probability vector. Bracketed
matrix lists ``[M1 M2 ... Mn]`` are frontal slices: ``entries[:, :, k] = M_k``.
"""

from typing import Optional, Sequence

import numpy as np

from ..core.errors import InvalidInputError

VALIDATION_TOL = 1e-12


class DenseTensor3:
    """Immutable n x n x n tensor

    Args:
        entries: array of shape (n, n, n)
        stochastic_checked: True validates and raises on failure, False skips the
            check, None (default) records whether the entries are stochastic
        tol: tolerance for the stochasticity check
    """

    __slots__ = ("_entries", "_stochastic")

    def __init__(self, entries, stochastic_checked: Optional[bool] = None, tol: float = VALIDATION_TOL):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 3 or not (arr.shape[0] == arr.shape[1] == arr.shape[2]):
            raise InvalidInputError(f"expected a cubical order-3 array, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise InvalidInputError("tensor dimension must be positive")
        arr.setflags(write=False)
        self._entries = arr

        if stochastic_checked is False:
            self._stochastic = False
            return
        ok = _is_stochastic(arr, tol)
        if stochastic_checked and not ok:
            from .checks import validate_stochastic

            report = validate_stochastic(self, tol)
            raise InvalidInputError(
                f"tensor is not stochastic: worst column deviation {report.worst_deviation:.3e}, "
                f"min entry {report.min_entry:.3e}"
            )
        self._stochastic = ok

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def stochastic_checked(self) -> bool:
        return self._stochastic

    def to_dense(self) -> "DenseTensor3":
        return self

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries
        return self._entries.astype(dtype)

    def __repr__(self) -> str:
        flag = "stochastic" if self._stochastic else "unchecked"
        return f"DenseTensor3(n={self.n}, {flag})"

    # products

    def apply(self, x, y) -> np.ndarray:
        """Pxy with (Pxy)_i = sum_jk P_ijk x_j y_k"""
        return (self._entries @ np.asarray(y, dtype=float)) @ np.asarray(x, dtype=float)

    def collapse(self, x) -> np.ndarray:
        """Matrix Px with (Px)_ij = sum_k P_ikj x_k, so that (Px) y = Pxy"""
        x = np.asarray(x, dtype=float)
        if x.size != self.n:
            raise InvalidInputError(f"dimension mismatch: x has length {x.size}, expected {self.n}")
        return np.einsum("ikj,k->ij", self._entries, x)

    def column(self, j: int, k: int) -> np.ndarray:
        return self._entries[:, j, k]

    # structure

    def s_transpose(self) -> "DenseTensor3":
        """(P^S)_ijk = P_ikj"""
        out = DenseTensor3.__new__(DenseTensor3)
        arr = np.ascontiguousarray(self._entries.transpose(0, 2, 1))
        arr.setflags(write=False)
        out._entries = arr
        out._stochastic = self._stochastic
        return out

    def symmetrize(self) -> "DenseTensor3":
        """Q = (P + P^S) / 2"""
        arr = 0.5 * (self._entries + self._entries.transpose(0, 2, 1))
        return DenseTensor3(arr, stochastic_checked=None if self._stochastic else False)

    def is_s_symmetric(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self._entries - self._entries.transpose(0, 2, 1))) <= tol)

    # arithmetic produces unchecked tensors (differences are not stochastic)

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, DenseTensor3):
            if other.n != self.n:
                raise InvalidInputError(f"dimension mismatch: {self.n} vs {other.n}")
            return other._entries
        if hasattr(other, "to_dense"):
            return self._coerce(other.to_dense())
        return NotImplemented

    def __add__(self, other):
        arr = self._coerce(other)
        if arr is NotImplemented:
            return NotImplemented
        return DenseTensor3(self._entries + arr, stochastic_checked=False)

    def __sub__(self, other):
        arr = self._coerce(other)
        if arr is NotImplemented:
            return NotImplemented
        return DenseTensor3(self._entries - arr, stochastic_checked=False)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return DenseTensor3(float(scalar) * self._entries, stochastic_checked=False)

    __rmul__ = __mul__

    def __neg__(self):
        return DenseTensor3(-self._entries, stochastic_checked=False)

    # constructors

    @classmethod
    def from_slices(cls, slices: Sequence, scale: float = 1.0) -> "DenseTensor3":
        """Stack frontal slices: entries[:, :, k] = scale * slices[k]"""
        arr = np.stack([np.asarray(s, dtype=float) for s in slices], axis=2) * scale
        return cls(arr)

    @classmethod
    def uniform(cls, n: int) -> "DenseTensor3":
        return cls(np.full((n, n, n), 1.0 / n))

    @classmethod
    def rank_one(cls, v) -> "DenseTensor3":
        """P_ijk = v_i"""
        v = np.asarray(v, dtype=float)
        n = v.size
        return cls(np.broadcast_to(v[:, None, None], (n, n, n)))

    @classmethod
    def lifted(cls, matrix, slot: str = "left") -> "DenseTensor3":
        """P_ijk = A_ij (slot "left") or P_ijk = A_ik (slot "right")"""
        a = np.asarray(matrix.toarray() if hasattr(matrix, "toarray") else matrix, dtype=float)
        n = a.shape[0]
        if slot == "left":
            arr = np.broadcast_to(a[:, :, None], (n, n, n))
        elif slot == "right":
            arr = np.broadcast_to(a[:, None, :], (n, n, n))
        else:
            raise InvalidInputError(f"slot must be 'left' or 'right', got {slot!r}")
        return cls(arr)


def _is_stochastic(arr: np.ndarray, tol: float) -> bool:
    return bool(arr.min() >= -tol and np.max(np.abs(arr.sum(axis=0) - 1.0)) <= tol)


def tensor_one_norm(P) -> float:
    """||P||_1 = max_jk sum_i |P_ijk|"""
    arr = np.asarray(P.to_dense() if hasattr(P, "to_dense") else P, dtype=float)
    return float(np.abs(arr).sum(axis=0).max())


def random_stochastic(n: int, seed=None) -> DenseTensor3:
    """I.i.d. uniform(0,1) entries, each first-mode column normalized

    ``seed`` may be an int, a SeedSequence or a numpy Generator.
    """
    if n < 2:
        raise InvalidInputError(f"random tensors need n >= 2, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    arr = rng.random((n, n, n))
    arr /= arr.sum(axis=0, keepdims=True)
    return DenseTensor3(arr)


def convex_combination(weight: float, P: DenseTensor3, Q: DenseTensor3) -> DenseTensor3:
    """weight * P + (1 - weight) * Q, stochastic when both are"""
    if not 0.0 <= weight <= 1.0:
        raise InvalidInputError(f"weight must lie in [0, 1], got {weight}")
    arr = weight * P.entries + (1.0 - weight) * Q.entries
    both = P.stochastic_checked and Q.stochastic_checked
    return DenseTensor3(arr, stochastic_checked=None if both else False)
