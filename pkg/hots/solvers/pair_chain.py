"""Stationary law of the second-order chain on the pair space"""

import logging
from typing import Optional

import numpy as np

from ..core.errors import InvalidInputError, check_invariant
from ..core.models import PairChainResult
from ..tensors.checks import as_dense
from .iteration import DEFAULT_MAXIT

logger = logging.getLogger(__name__)

PAIR_LIMIT = 100


def pair_chain_stationary(P, tol: float = 1e-12, maxit: int = DEFAULT_MAXIT, x=None) -> PairChainResult:
    """Power iteration Y_ij <- sum_k P_ijk Y_jk from the uniform n x n matrix

    Y_ij is the stationary probability of the current state i with previous
    state j. The rowsum Y1 is returned for comparison with a Z-eigenvector
    ``x``; the two generally differ.
    """
    if P.n > PAIR_LIMIT:
        raise InvalidInputError(f"pair chain needs n <= {PAIR_LIMIT} (n^2 states), got n={P.n}")
    arr = as_dense(P, PAIR_LIMIT).entries
    n = arr.shape[0]
    Y = np.full((n, n), 1.0 / (n * n))
    converged = False
    its = 0
    for its in range(1, maxit + 1):
        Y_new = np.einsum("ijk,jk->ij", arr, Y)
        Y_new /= Y_new.sum()
        res = float(np.abs(Y_new - Y).sum())
        Y = Y_new
        if res < tol:
            converged = True
            break
    if not converged:
        logger.warning(f"pair chain: maxit={maxit} reached")

    equation_residual = float(np.abs(np.einsum("ijk,jk->ij", arr, Y) - Y).sum())
    rowsum = Y.sum(axis=1)
    balance_gap = float(np.abs(rowsum - Y.sum(axis=0)).sum())
    check_invariant(Y.min() >= 0.0 and abs(Y.sum() - 1.0) <= 1e-10, "pair distribution is not a probability matrix")
    if converged:
        check_invariant(
            balance_gap <= tol + 1e-12,
            f"stationary pair law is unbalanced: ||Y1 - Y^T 1||_1 = {balance_gap!r}",
        )
    gap: Optional[float] = None
    if x is not None:
        gap = float(np.abs(rowsum - np.asarray(x, dtype=float)).sum())
    return PairChainResult(Y, rowsum, its, converged, equation_residual, balance_gap, gap)
