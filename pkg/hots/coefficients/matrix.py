"""Dobrushin coefficient of a matrix"""

import numpy as np
from scipy.spatial.distance import cdist

from ..core.errors import InvalidInputError


def tau1_matrix(M, formula: str = "difference") -> float:
    """Ergodicity coefficient tau_1 of a square matrix

    Parameters
    ----------
    M : array_like
        Square matrix; columns are the transition laws.
    formula : {"difference", "overlap"}
        ``difference`` evaluates 1/2 max_jk sum_i |M_ij - M_ik| and works for any
        real matrix; ``overlap`` evaluates 1 - min_jk sum_i min(M_ij, M_ik),
        which agrees with it for column-stochastic M.

    Returns
    -------
    float
        Zero exactly when all columns coincide.
    """
    M = np.asarray(M.toarray() if hasattr(M, "toarray") else M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {M.shape}")
    if formula == "difference":
        return 0.5 * float(cdist(M.T, M.T, "cityblock").max())
    if formula == "overlap":
        overlap = np.minimum(M[:, :, None], M[:, None, :]).sum(axis=0)
        return 1.0 - float(overlap.min())
    raise InvalidInputError(f"unknown formula {formula!r}")
