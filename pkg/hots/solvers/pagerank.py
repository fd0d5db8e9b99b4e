"""Multilinear PageRank: alpha Pxx + (1 - alpha) v = x"""

import logging
from typing import Optional

import numpy as np

from ..coefficients.ergodic import tau
from ..core.errors import InvalidInputError, check_invariant
from ..core.models import SolveReport
from ..tensors.vectors import StochasticVector, as_array
from .iteration import (
    DEFAULT_MAXIT,
    DEFAULT_TOL,
    dense_or_none,
    log_outcome,
    require_stochastic,
    run_fixed_point,
    start_vector,
)

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-12


def mlpr_fixed_point(
    P,
    alpha: float,
    v=None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
    x0=None,
    rate_bound: Optional[float] = None,
    keep_iterates: bool = False,
) -> SolveReport:
    """Fixed-point iteration x_{t+1} = alpha P x_t x_t + (1 - alpha) v

    The certificate is alpha T(P) when T is computable, or ``rate_bound``
    when the caller knows a contraction bound (the graph blend passes
    alpha (1 + beta)). Every converged solution obeys ||x - v||_1 <= 2 alpha.
    """
    if not 0.0 <= alpha <= 1.0:
        raise InvalidInputError(f"alpha must lie in [0, 1], got {alpha}")
    require_stochastic(P)
    n = P.n
    v = StochasticVector(as_array(v, n, "v")).values
    x = start_vector(x0, n)
    teleport = (1.0 - alpha) * v

    final, its, history, converged, iterates = run_fixed_point(
        lambda z: alpha * P.apply(z, z) + teleport, x, tol, maxit, keep_iterates
    )
    report = SolveReport(final, its, history, converged, tol, iterates=iterates)

    distance = float(np.abs(final - v).sum())
    report.diagnostics["x_minus_v"] = distance
    if converged:
        check_invariant(
            distance <= 2.0 * alpha + BOUND_SLACK,
            f"||x - v||_1 = {distance!r} exceeds 2 alpha = {2 * alpha!r}",
        )

    rate = rate_bound
    name = "caller-supplied contraction bound < 1"
    if rate is None:
        dense = dense_or_none(P)
        if dense is not None:
            t = tau(dense, check=False).value
            report.diagnostics["T"] = t
            rate = alpha * t
            name = "alpha T(P) < 1"
    if rate is not None:
        report.diagnostics["rate"] = rate
        if rate < 1.0:
            report.certified_rate = rate
            report.certificate_name = name
            report.unique = True
    log_outcome("mlpr", converged, its, report.last_residual)
    return report
