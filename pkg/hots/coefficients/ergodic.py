"""One-norm higher-order ergodicity coefficients T_L, T_R and T

T_L bounds how much Pxy moves when y changes, T_R when x changes, and T is
the Lipschitz constant of x -> Pxx on the simplex.
"""

import logging
from typing import Tuple

import numpy as np
from scipy.spatial.distance import cdist

from ..core.errors import InvalidInputError, check_invariant
from ..core.models import CoefficientReport, LipschitzReport
from ..tensors.checks import as_dense
from ..tensors.dense import DenseTensor3, tensor_one_norm

logger = logging.getLogger(__name__)

AGREEMENT_TOL = 1e-13
SYMMETRIZED_TOL = 1e-14


def _entries(P) -> np.ndarray:
    if isinstance(P, np.ndarray):
        return P
    return as_dense(P).entries


def _left_scan(arr: np.ndarray) -> Tuple[float, Tuple[int, int, int]]:
    """max_{j,k1,k2} sum_i |arr_ijk1 - arr_ijk2| with its first (j, k1, k2)"""
    n = arr.shape[0]
    dist = np.empty((n, n, n))
    for j in range(n):
        block = arr[:, j, :]
        dist[j] = cdist(block.T, block.T, "cityblock")
    flat = int(np.argmax(dist))
    j, k1, k2 = np.unravel_index(flat, dist.shape)
    return float(dist[j, k1, k2]), (int(j), int(k1), int(k2))


def _left_overlap(arr: np.ndarray) -> float:
    """1 - min_{j,k1,k2} sum_i min(arr_ijk1, arr_ijk2)"""
    n = arr.shape[0]
    best = np.inf
    for j in range(n):
        block = arr[:, j, :]
        best = min(best, float(np.minimum(block[:, :, None], block[:, None, :]).sum(axis=0).min()))
    return 1.0 - best


def tauL(P, formula: str = "difference") -> CoefficientReport:
    """T_L(P) = 1/2 max_{j,k1,k2} sum_i |P_ijk1 - P_ijk2|; witness (j, k1, k2)

    ``formula="overlap"`` uses 1 - min sum_i min{P_ijk1, P_ijk2}, valid for
    stochastic P only, and reports no witness.
    """
    arr = _entries(P)
    if formula == "overlap":
        return CoefficientReport("TL", _left_overlap(arr), None, "O(n^4)")
    if formula != "difference":
        raise InvalidInputError(f"unknown formula {formula!r}")
    value, witness = _left_scan(arr)
    return CoefficientReport("TL", 0.5 * value, witness, "O(n^4)")


def tauR(P) -> CoefficientReport:
    """T_R(P) = 1/2 max_{j1,j2,k} sum_i |P_ij1k - P_ij2k| = T_L(P^S); witness (j1, j2, k)"""
    arr = _entries(P)
    value, (k, j1, j2) = _left_scan(arr.transpose(0, 2, 1))
    return CoefficientReport("TR", 0.5 * value, (j1, j2, k), "O(n^4)")


def tau(P, check: bool = True) -> CoefficientReport:
    """T(P) = 1/2 max_{j,k1,k2} sum_i |P_ijk1 - P_ijk2 + P_ik1j - P_ik2j|

    Equals 2 T_L(Q) for Q = (P + P^S) / 2. With ``check`` that identity is
    asserted, and so is the bound T <= T_L + T_R <= 2 for stochastic input.
    """
    arr = _entries(P)
    value, witness = _left_scan(arr + arr.transpose(0, 2, 1))
    report = CoefficientReport("T", 0.5 * value, witness, "O(n^4)")
    if check:
        twice_sym = 2.0 * tauL(0.5 * (arr + arr.transpose(0, 2, 1))).value
        check_invariant(
            abs(report.value - twice_sym) <= SYMMETRIZED_TOL,
            f"T={report.value!r} differs from 2 TL((P + P^S) / 2) = {twice_sym!r}",
        )

    stochastic = getattr(P, "stochastic_checked", False)
    if check and stochastic:
        tl, tr = tauL(arr).value, tauR(arr).value
        check_invariant(
            report.value <= tl + tr + AGREEMENT_TOL and tl + tr <= 2.0 + AGREEMENT_TOL,
            f"T={report.value!r} violates T <= TL + TR = {tl + tr!r} <= 2",
        )
    return report


def tau_lipschitz_check(P, Q) -> LipschitzReport:
    """|C(P) - C(Q)| <= C(P - Q) <= c ||P - Q||_1 for C in T_L, T_R, T (c = 2 for T)"""
    a, b = _entries(P), _entries(Q)
    if a.shape != b.shape:
        raise InvalidInputError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    diff = a - b
    norm = tensor_one_norm(diff)
    rows = {}
    for name, fn, factor in (("TL", tauL, 1.0), ("TR", tauR, 1.0), ("T", tau, 2.0)):
        gap = abs(fn(a).value - fn(b).value)
        of_diff = fn(diff).value
        bound = factor * norm
        check_invariant(
            gap <= of_diff + AGREEMENT_TOL and of_diff <= bound + AGREEMENT_TOL,
            f"{name}: Lipschitz chain {gap!r} <= {of_diff!r} <= {bound!r} failed",
        )
        rows[name] = (gap, of_diff, bound)
    return LipschitzReport(rows)


def is_rank_one(P: DenseTensor3, tol: float = 1e-14) -> bool:
    """All first-mode columns coincide"""
    arr = _entries(P)
    n = arr.shape[0]
    cols = arr.reshape(n, n * n)
    return bool(np.max(np.abs(cols - cols[:, :1])) <= tol)
