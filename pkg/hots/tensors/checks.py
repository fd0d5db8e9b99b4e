"""Validation and the bilinear product for every tensor representation"""

from typing import Optional

import numpy as np

from ..core.errors import InvalidInputError, check_invariant
from ..core.models import ValidationReport
from .dense import DenseTensor3
from .sparse import SparseTensor3
from .vectors import StochasticVector, as_array, in_simplex

CLOSURE_TOL = 1e-10
DENSE_LIMIT = 64


def validate_stochastic(T, tol: float = 1e-12) -> ValidationReport:
    """Check nonnegativity and unit first-mode sums, reporting the worst column"""
    if tol <= 0:
        raise InvalidInputError(f"tolerance must be positive, got {tol}")
    if isinstance(T, SparseTensor3):
        sums = np.asarray(T.columns.sum(axis=0)).ravel()
        dev = np.abs(sums - 1.0)
        worst_dev = float(dev.max()) if dev.size else 0.0
        pos = int(np.argmax(dev)) if dev.size else None
        worst = (int(T.pair_j[pos]), int(T.pair_k[pos])) if pos is not None and worst_dev > 0 else None
        min_entry = float(T.columns.data.min()) if T.nnz else 0.0
        # dangling columns hold the default, which is a probability vector
        min_entry = min(min_entry, float(T.dangling_default.values.min())) if T.stored_pairs < T.n ** 2 else min_entry
    else:
        arr = np.asarray(T.entries if isinstance(T, DenseTensor3) else T, dtype=float)
        if arr.ndim != 3 or arr.shape[0] == 0:
            raise InvalidInputError(f"expected a nonempty order-3 array, got shape {arr.shape}")
        dev = np.abs(arr.sum(axis=0) - 1.0)
        j, k = np.unravel_index(int(np.argmax(dev)), dev.shape)
        worst_dev = float(dev[j, k])
        worst = (int(j), int(k)) if worst_dev > 0 else None
        min_entry = float(arr.min())
    ok = min_entry >= -tol and worst_dev <= tol
    return ValidationReport(ok, worst_dev, worst, min_entry)


def apply_bilinear(P, x, y, closure_tol: float = CLOSURE_TOL) -> np.ndarray:
    """Pxy for a dense tensor, sparse tensor or operator

    When P is known stochastic and x, y lie on the simplex, the result is
    checked to lie on the simplex as well.
    """
    n = P.n
    xa = as_array(x, n, "x")
    ya = as_array(y, n, "y")
    out = P.apply(xa, ya)
    if getattr(P, "stochastic_checked", False) and in_simplex(xa) and in_simplex(ya):
        check_invariant(
            out.min() >= -closure_tol and abs(out.sum() - 1.0) <= closure_tol,
            f"Pxy left the simplex: sum={out.sum()!r}, min={out.min()!r}",
        )
    return out


def collapse(P: DenseTensor3, x) -> np.ndarray:
    """The matrix Px with (Px) y = Pxy"""
    return P.collapse(as_array(x, P.n, "x"))


def s_transpose(P: DenseTensor3) -> DenseTensor3:
    return P.s_transpose()


def symmetrize(P: DenseTensor3) -> DenseTensor3:
    return P.symmetrize()


def as_dense(T, limit: Optional[int] = DENSE_LIMIT) -> DenseTensor3:
    """Dense view of any representation, refusing sizes above limit"""
    if isinstance(T, DenseTensor3):
        return T
    if isinstance(T, np.ndarray):
        return DenseTensor3(T)
    if limit is not None and T.n > limit:
        raise InvalidInputError(
            f"dense coefficient scans are limited to n <= {limit} for {type(T).__name__}, got n={T.n}"
        )
    return T.to_dense()


def as_stochastic_vector(x, n: int) -> StochasticVector:
    if isinstance(x, StochasticVector):
        if x.n != n:
            raise InvalidInputError(f"dimension mismatch: vector has length {x.n}, expected {n}")
        return x
    return StochasticVector(as_array(x, n))
