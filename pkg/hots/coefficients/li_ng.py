"""Subset-based uniqueness coefficients delta, gamma and the sigma-shifted theta"""

import logging
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from ..core.errors import InvalidInputError, check_invariant
from ..core.models import CoefficientReport
from ..tensors.checks import as_dense, validate_stochastic
from ..tensors.dense import DenseTensor3

logger = logging.getLogger(__name__)

SUBSET_LIMIT = 20
LOW_BITS = 10
RESYNC_EVERY = 64
AGREEMENT_TOL = 1e-13


def _stochastic_entries(P) -> np.ndarray:
    T = P if isinstance(P, DenseTensor3) else as_dense(P)
    if not T.stochastic_checked:
        report = validate_stochastic(T)
        if not report.is_stochastic:
            raise InvalidInputError(
                f"coefficient requires a stochastic tensor (worst column deviation {report.worst_deviation:.3e})"
            )
    return T.entries


def delta_closed_form_report(P) -> CoefficientReport:
    """delta = 1 - 1/2 max ||P e_j1 e_k1 - P e_j2 e_k2||_1; witness (j1, k1, j2, k2)"""
    arr = _stochastic_entries(P)
    n = arr.shape[0]
    cols = arr.reshape(n, n * n).T  # row j * n + k is the column (j, k)
    best, witness = -1.0, (0, 0, 0, 0)
    for start in range(0, n * n, 512):
        dist = cdist(cols[start:start + 512], cols, "cityblock")
        a, b = np.unravel_index(int(np.argmax(dist)), dist.shape)
        if dist[a, b] > best:
            best = float(dist[a, b])
            witness = (*divmod(int(start + a), n), *divmod(int(b), n))
    return CoefficientReport("delta", 1.0 - 0.5 * best, witness, "O(n^5)")


def delta_closed_form(P) -> float:
    return delta_closed_form_report(P).value


def _subset_blocks(arr: np.ndarray) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield (member_mask, inside, masks) blocks covering all 2^n subsets

    ``inside[s, j * n + k]`` is sum_{i in I_s} P_ijk; ``masks[s]`` is the
    subset as a bitmask. The low bits are enumerated by one matrix product,
    the high bits in Gray-code order with incremental column sums.
    """
    n = arr.shape[0]
    cols = arr.reshape(n, n * n)
    low = min(n, LOW_BITS)
    high = n - low

    low_ids = np.arange(1 << low)
    low_members = ((low_ids[:, None] >> np.arange(low)) & 1).astype(bool)
    low_inside = low_members.astype(float) @ cols[:low]

    high_members = np.zeros(high, dtype=bool)
    high_inside = np.zeros(n * n)
    gray = 0
    for step in range(1 << high):
        if step:
            bit = (step & -step).bit_length() - 1
            gray ^= 1 << bit
            high_members[bit] = not high_members[bit]
            if step % RESYNC_EVERY == 0:
                high_inside = high_members.astype(float) @ cols[low:]
            elif high_members[bit]:
                high_inside = high_inside + cols[low + bit]
            else:
                high_inside = high_inside - cols[low + bit]
        members = np.concatenate(
            [low_members, np.broadcast_to(high_members, (low_ids.size, high))], axis=1
        )
        yield members, low_inside + high_inside, low_ids + (gray << low)


def _best_subset(values: np.ndarray, masks: np.ndarray, best: float, best_mask: int) -> Tuple[float, int]:
    """Fold a block into the running minimum; ties go to the smaller bitmask"""
    block_min = float(values.min())
    if block_min > best:
        return best, best_mask
    candidate = int(masks[values == block_min].min())
    if block_min < best or candidate < best_mask:
        return block_min, candidate
    return best, best_mask


def _mask_to_subset(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def _check_subset_size(n: int, limit: int) -> None:
    if n > limit:
        raise InvalidInputError(f"subset enumeration needs n <= {limit} (2^n subsets), got n={n}")


def delta_bruteforce_report(P, limit: int = SUBSET_LIMIT) -> CoefficientReport:
    """delta = min over all I (empty and full included) of min_jk out-mass + min_jk in-mass; witness I"""
    arr = _stochastic_entries(P)
    n = arr.shape[0]
    _check_subset_size(n, limit)
    totals = arr.sum(axis=0).reshape(n * n)
    best, best_mask = np.inf, -1
    for _, inside, masks in _subset_blocks(arr):
        values = (totals - inside).min(axis=1) + inside.min(axis=1)
        best, best_mask = _best_subset(values, masks, best, best_mask)
    return CoefficientReport("delta", best, _mask_to_subset(best_mask, n), "O(2^n n^2)")


def delta_bruteforce(P, limit: int = SUBSET_LIMIT) -> float:
    return delta_bruteforce_report(P, limit).value


def gamma_report(P, limit: int = SUBSET_LIMIT, check: bool = True) -> CoefficientReport:
    """gamma over proper nonempty subsets I; witness I

    With ``check`` asserts gamma >= 2 delta, and 2 - gamma <= T when P is
    S-symmetric.
    """
    arr = _stochastic_entries(P)
    n = arr.shape[0]
    if n < 2:
        raise InvalidInputError("gamma needs n >= 2 (no proper nonempty subsets otherwise)")
    _check_subset_size(n, limit)
    totals = arr.sum(axis=0)
    best, best_mask = np.inf, -1
    for members, inside, masks in _subset_blocks(arr):
        inside = inside.reshape(-1, n, n)
        outside = totals[None] - inside
        in_j = members[:, :, None]
        in_k = members[:, None, :]
        # over k: min_{j in I} out[j, k] + min_{j not in I} in[j, k]
        by_k = (np.where(in_j, outside, np.inf).min(axis=1) + np.where(in_j, np.inf, inside).min(axis=1)).min(axis=1)
        # over j: min_{k in I} out[j, k] + min_{k not in I} in[j, k]
        by_j = (np.where(in_k, outside, np.inf).min(axis=2) + np.where(in_k, np.inf, inside).min(axis=2)).min(axis=1)
        best, best_mask = _best_subset(by_k + by_j, masks, best, best_mask)

    report = CoefficientReport("gamma", best, _mask_to_subset(best_mask, n), "O(2^n n^2)")
    if check:
        delta = delta_closed_form(arr if isinstance(P, np.ndarray) else P)
        check_invariant(best >= 2.0 * delta - AGREEMENT_TOL, f"gamma={best!r} < 2 delta={2 * delta!r}")
        if np.array_equal(arr, arr.transpose(0, 2, 1)):
            from .ergodic import tau

            t = tau(arr, check=False).value
            check_invariant(2.0 - best <= t + AGREEMENT_TOL, f"S-symmetric tensor with 2 - gamma > T={t!r}")
    return report


def gamma(P, limit: int = SUBSET_LIMIT) -> float:
    return gamma_report(P, limit).value


def sigma_vectors(P) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(entrywise max over (j, k), entrywise min, their average)"""
    arr = P if isinstance(P, np.ndarray) else as_dense(P).entries
    n = arr.shape[0]
    cols = arr.reshape(n, n * n)
    hi, lo = cols.max(axis=1), cols.min(axis=1)
    return hi, lo, 0.5 * (hi + lo)


def theta_report(P, sigma, check: bool = True) -> CoefficientReport:
    """theta(P, sigma) = max_{j,k1,k2} sum_i |P_ijk1 - sigma_i| + |P_ik2j - sigma_i|; witness (j, k1, k2)

    With a[j, k] = sum_i |P_ijk - sigma_i| the maximum is
    max_j (max_k1 a[j, k1] + max_k2 a[k2, j]).
    """
    arr = P if isinstance(P, np.ndarray) else as_dense(P).entries
    n = arr.shape[0]
    sigma = np.asarray(sigma, dtype=float).ravel()
    if sigma.size != n:
        raise InvalidInputError(f"sigma has length {sigma.size}, expected {n}")
    a = np.abs(arr - sigma[:, None, None]).sum(axis=0)
    k1 = a.argmax(axis=1)
    k2 = a.argmax(axis=0)
    per_j = a[np.arange(n), k1] + a[k2, np.arange(n)]
    j = int(np.argmax(per_j))
    report = CoefficientReport("theta", float(per_j[j]), (j, int(k1[j]), int(k2[j])), "O(n^3)")
    if check:
        from .ergodic import tau

        t = tau(arr, check=False).value
        check_invariant(report.value >= t - AGREEMENT_TOL, f"theta={report.value!r} < T={t!r}")
    return report


def theta(P, sigma: Optional[np.ndarray] = None) -> float:
    """theta with sigma defaulting to the average choice"""
    if sigma is None:
        sigma = sigma_vectors(P)[2]
    return theta_report(P, sigma).value
