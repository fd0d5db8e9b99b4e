"""Coordinate-format stochastic tensors with an implicit dangling column

Stored entries are grouped by the (j, k) pair they belong to and kept as a
CSC matrix with one column per stored pair, ordered column-major over the
pair (key k * n + j). Pairs without stored entries are never materialized:
their column is the ``dangling_default`` vector.
"""

import logging
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..core.errors import InvalidInputError
from .vectors import StochasticVector

logger = logging.getLogger(__name__)


class SparseTensor3:
    """Stochastic sparse tensor

    Args:
        n: dimension
        i, j, k: 0-based coordinates of the stored entries
        values: positive entry values
        dangling_default: column used for every (j, k) without stored entries;
            uniform when omitted
        tol: tolerance on the stored column sums
    """

    def __init__(
        self,
        n: int,
        i,
        j,
        k,
        values,
        dangling_default: Optional[StochasticVector] = None,
        tol: float = 1e-12,
    ):
        if n < 1:
            raise InvalidInputError("tensor dimension must be positive")
        i = np.asarray(i, dtype=np.int64).ravel()
        j = np.asarray(j, dtype=np.int64).ravel()
        k = np.asarray(k, dtype=np.int64).ravel()
        values = np.asarray(values, dtype=float).ravel()
        if not (i.size == j.size == k.size == values.size):
            raise InvalidInputError("coordinate arrays must have equal length")
        if i.size and (min(i.min(), j.min(), k.min()) < 0 or max(i.max(), j.max(), k.max()) >= n):
            raise InvalidInputError(f"coordinate out of range for n={n}")
        if values.size and values.min() <= 0:
            raise InvalidInputError("stored values must be positive")

        if dangling_default is None:
            dangling_default = StochasticVector.uniform(n)
        elif not isinstance(dangling_default, StochasticVector):
            dangling_default = StochasticVector(dangling_default)
        if dangling_default.n != n:
            raise InvalidInputError(f"dangling default has length {dangling_default.n}, expected {n}")

        key = k * n + j
        order = np.lexsort((i, key))
        i, key, values = i[order], key[order], values[order]
        if i.size > 1:
            same = (np.diff(key) == 0) & (np.diff(i) == 0)
            if same.any():
                pos = int(np.argmax(same))
                raise InvalidInputError(
                    f"duplicate entry ({i[pos] + 1}, {key[pos] % n + 1}, {key[pos] // n + 1})"
                )

        pair_keys, pair_index = np.unique(key, return_inverse=True)
        sums = np.bincount(pair_index, weights=values, minlength=pair_keys.size)
        if sums.size:
            worst = int(np.argmax(np.abs(sums - 1.0)))
            if abs(sums[worst] - 1.0) > tol:
                jj, kk = pair_keys[worst] % n, pair_keys[worst] // n
                raise InvalidInputError(
                    f"stored column ({jj + 1}, {kk + 1}) sums to {sums[worst]!r}, not 1"
                )

        self._n = n
        self.pair_j = pair_keys % n
        self.pair_k = pair_keys // n
        self.columns = sp.csc_matrix((values, (i, pair_index)), shape=(n, pair_keys.size))
        self.dangling_default = dangling_default
        logger.debug(f"SparseTensor3 n={n} nnz={values.size} stored_pairs={pair_keys.size}")

    @property
    def n(self) -> int:
        return self._n

    @property
    def nnz(self) -> int:
        return self.columns.nnz

    @property
    def stored_pairs(self) -> int:
        return self.columns.shape[1]

    @property
    def stochastic_checked(self) -> bool:
        return True

    def __repr__(self) -> str:
        return f"SparseTensor3(n={self.n}, nnz={self.nnz}, stored_pairs={self.stored_pairs})"

    def apply(self, x, y) -> np.ndarray:
        """Pxy, streaming stored columns once and adding the dangling mass"""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        w = x[self.pair_j] * y[self.pair_k]
        out = self.columns @ w
        dangling_mass = x.sum() * y.sum() - w.sum()
        if dangling_mass != 0.0:
            out = out + dangling_mass * self.dangling_default.values
        return out

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Stored (i, j, k, value), sorted by (k, j, i)"""
        cols = self.columns
        pair = np.repeat(np.arange(cols.shape[1]), np.diff(cols.indptr))
        return cols.indices.astype(np.int64), self.pair_j[pair], self.pair_k[pair], cols.data.copy()

    def column(self, j: int, k: int) -> np.ndarray:
        pos = np.searchsorted(self.pair_j + self._n * self.pair_k, k * self._n + j)
        if pos < self.stored_pairs and self.pair_j[pos] == j and self.pair_k[pos] == k:
            return self.columns[:, pos].toarray().ravel()
        return self.dangling_default.values.copy()

    def is_dangling(self) -> np.ndarray:
        """Boolean n x n mask over (j, k) of pairs without stored entries"""
        mask = np.ones((self._n, self._n), dtype=bool)
        mask[self.pair_j, self.pair_k] = False
        return mask

    def s_transpose(self) -> "SparseTensor3":
        i, j, k, v = self.coordinates()
        return SparseTensor3(self._n, i, k, j, v, self.dangling_default)

    def to_dense(self):
        """Materialize, dangling columns included (O(n^3) memory)"""
        from .dense import DenseTensor3

        n = self._n
        arr = np.zeros((n, n, n))
        mask = self.is_dangling()
        arr[:, mask] = self.dangling_default.values[:, None]
        i, j, k, v = self.coordinates()
        arr[i, j, k] = v
        return DenseTensor3(arr)
