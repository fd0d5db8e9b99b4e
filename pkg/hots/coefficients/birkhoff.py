"""Birkhoff contraction ratios in the Hilbert projective metric

Entry ratios follow the conventions 0/0 = 1 and a/0 = inf for a > 0, so a
tensor with a zero entry that is not rank one has Delta = inf, kappa = 1 and
T_H = 2.
"""

import math
from typing import Tuple

import numpy as np

from ..core.errors import InvalidInputError
from ..core.models import CoefficientReport
from ..tensors.checks import as_dense


def _ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    out = np.where(den > 0, out, np.where(num > 0, np.inf, 1.0))
    return out


def birkhoff_delta(P) -> Tuple[float, Tuple[int, int, int, int, int, int]]:
    """Delta(P) = max P_i1j1k1 P_i2j2k2 / (P_i1j2k1 P_i2j1k2) and its (i1, j1, k1, i2, j2, k2)

    For fixed (j1, j2) the ratio splits into max_{i,k} P_ij1k / P_ij2k times
    the same with j1 and j2 swapped, so the six-index scan costs O(n^4).
    """
    arr = P if isinstance(P, np.ndarray) else as_dense(P).entries
    if arr.min() < 0:
        raise InvalidInputError("Birkhoff coefficients need a nonnegative tensor")
    n = arr.shape[0]
    best = np.empty((n, n))
    arg = np.empty((n, n), dtype=np.int64)
    for j1 in range(n):
        # r[i, j2, k] = P[i, j1, k] / P[i, j2, k]
        r = _ratio(arr[:, j1:j1 + 1, :], arr).transpose(1, 0, 2).reshape(n, n * n)
        arg[j1] = np.argmax(r, axis=1)
        best[j1] = r[np.arange(n), arg[j1]]
    with np.errstate(invalid="ignore"):
        prod = best * best.T
    prod = np.where(np.isnan(prod), np.inf, prod)
    j1, j2 = np.unravel_index(int(np.argmax(prod)), prod.shape)
    i1, k1 = divmod(int(arg[j1, j2]), n)
    i2, k2 = divmod(int(arg[j2, j1]), n)
    return float(prod[j1, j2]), (i1, int(j1), k1, i2, int(j2), k2)


def _kappa_from_delta(delta: float) -> float:
    if math.isinf(delta):
        return 1.0
    return math.tanh(0.25 * math.log(delta))


def kappa(P) -> float:
    """kappa(P) = tanh(log(Delta(P)) / 4)"""
    return kappa_report(P).value


def kappa_report(P) -> CoefficientReport:
    delta, witness = birkhoff_delta(P)
    return CoefficientReport("kappa", _kappa_from_delta(delta), witness, "O(n^4)")


def tauH(P) -> float:
    """T_H(P) = 2 kappa(P + P^S)"""
    return tauH_report(P).value


def tauH_report(P) -> CoefficientReport:
    arr = P if isinstance(P, np.ndarray) else as_dense(P).entries
    delta, witness = birkhoff_delta(arr + arr.transpose(0, 2, 1))
    return CoefficientReport("TH", 2.0 * _kappa_from_delta(delta), witness, "O(n^4)")


def hilbert_distance(x, y) -> float:
    """d_H(x, y) = log(max_i x_i / y_i * max_i y_i / x_i) for positive x, y"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise InvalidInputError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if x.min() <= 0 or y.min() <= 0:
        raise InvalidInputError("Hilbert distance is defined for strictly positive vectors")
    return float(math.log(np.max(x / y) * np.max(y / x)))
