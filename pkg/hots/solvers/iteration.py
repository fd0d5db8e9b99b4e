"""Shared fixed-point loop and certificate lookup for the solvers"""

import logging
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..core.errors import InvalidInputError, check_invariant
from ..tensors.checks import as_dense, validate_stochastic
from ..tensors.dense import DenseTensor3
from ..tensors.vectors import as_array, normalize

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_MAXIT = 100000
DENSE_LIMIT = 64
SIMPLEX_TOL = 1e-10


def require_stochastic(P) -> None:
    if isinstance(P, DenseTensor3) and not P.stochastic_checked:
        report = validate_stochastic(P)
        raise InvalidInputError(
            f"solvers need a stochastic tensor (worst column deviation {report.worst_deviation:.3e}, "
            f"min entry {report.min_entry:.3e})"
        )
    if not hasattr(P, "apply"):
        raise InvalidInputError(f"unsupported tensor type {type(P).__name__}")


def start_vector(x0, n: int, name: str = "x0") -> np.ndarray:
    x = as_array(x0, n, name).copy()
    check_invariant(
        x.min() >= -SIMPLEX_TOL and abs(x.sum() - 1.0) <= SIMPLEX_TOL,
        f"{name} is not a probability vector",
    )
    return x


def check_simplex(x: np.ndarray, t: int) -> None:
    check_invariant(
        x.min() >= -SIMPLEX_TOL and abs(x.sum() - 1.0) <= SIMPLEX_TOL,
        f"iterate {t} left the simplex (sum={x.sum()!r}, min={x.min()!r})",
    )


def dense_or_none(P, limit: int = DENSE_LIMIT) -> Optional[DenseTensor3]:
    """Dense form for certificate computation, None above the size guard"""
    if P.n > limit:
        logger.debug(f"n={P.n} exceeds dense limit {limit}; certificate skipped")
        return None
    return as_dense(P, limit)


def run_fixed_point(
    step: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    tol: float,
    maxit: int,
    keep_iterates: bool = False,
    stop_below: Optional[float] = None,
) -> Tuple[np.ndarray, int, List[float], bool, Optional[List[np.ndarray]]]:
    """Iterate x <- step(x) until ||x_{t+1} - x_t||_1 < stop_below (default tol)"""
    if tol <= 0 or maxit < 1:
        raise InvalidInputError(f"need tol > 0 and maxit >= 1, got tol={tol}, maxit={maxit}")
    threshold = tol if stop_below is None else stop_below
    x = x0
    history: List[float] = []
    iterates = [x0.copy()] if keep_iterates else None
    converged = False
    for t in range(1, maxit + 1):
        x_new = normalize(step(x))
        check_simplex(x_new, t)
        res = float(np.abs(x_new - x).sum())
        history.append(res)
        x = x_new
        if keep_iterates:
            iterates.append(x.copy())
        if res < threshold:
            converged = True
            break
    return x, len(history), history, converged, iterates


def log_outcome(name: str, converged: bool, iterations: int, residual: float) -> None:
    if converged:
        logger.debug(f"{name}: converged in {iterations} iterations (residual {residual:.3e})")
    else:
        logger.warning(f"{name}: maxit={iterations} reached, residual {residual:.3e}")
