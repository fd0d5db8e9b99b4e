"""Power methods for the Z-eigenvector problem Pxx = x"""

import logging

import numpy as np
from scipy.optimize import minimize_scalar

from ..coefficients.ergodic import tau, tauL, tauR
from ..core.errors import InvalidInputError, check_invariant
from ..core.models import ShiftOptimum, SolveReport
from ..tensors.operator import make_identity, shifted_operator
from ..tensors.vectors import normalize
from .iteration import (
    DEFAULT_MAXIT,
    DEFAULT_TOL,
    check_simplex,
    dense_or_none,
    log_outcome,
    require_stochastic,
    run_fixed_point,
    start_vector,
)

logger = logging.getLogger(__name__)


def hopm(
    P,
    x0=None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
    keep_iterates: bool = False,
) -> SolveReport:
    """Higher-order power method x_{t+1} = P x_t x_t

    T(P) < 1 certifies a unique fixed point and linear convergence at rate T(P).
    """
    require_stochastic(P)
    x = start_vector(x0, P.n)
    final, its, history, converged, iterates = run_fixed_point(
        lambda v: P.apply(v, v), x, tol, maxit, keep_iterates
    )
    report = SolveReport(final, its, history, converged, tol, iterates=iterates)
    dense = dense_or_none(P)
    if dense is not None:
        t = tau(dense, check=False).value
        report.diagnostics["T"] = t
        if t < 1.0:
            report.certified_rate = t
            report.certificate_name = "T(P) < 1"
            report.unique = True
    log_outcome("hopm", converged, its, report.last_residual)
    return report


def alternate_pm(
    P,
    x0=None,
    x_minus1=None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
    keep_iterates: bool = False,
) -> SolveReport:
    """Alternate power method x_{t+1} = P x_t x_{t-1}

    With s = T_L + T_R < 1 the error decays like s^ceil((t+1)/2).
    """
    require_stochastic(P)
    x = start_vector(x0, P.n)
    prev = start_vector(x0 if x_minus1 is None else x_minus1, P.n, "x_minus1")
    history = []
    iterates = [x.copy()] if keep_iterates else None
    converged = False
    if tol <= 0 or maxit < 1:
        raise InvalidInputError(f"need tol > 0 and maxit >= 1, got tol={tol}, maxit={maxit}")
    for t in range(1, maxit + 1):
        x_new = normalize(P.apply(x, prev))
        check_simplex(x_new, t)
        res = float(np.abs(x_new - x).sum())
        history.append(res)
        prev, x = x, x_new
        if keep_iterates:
            iterates.append(x.copy())
        if res < tol:
            converged = True
            break

    report = SolveReport(x, len(history), history, converged, tol, iterates=iterates)
    dense = dense_or_none(P)
    if dense is not None:
        s = tauL(dense).value + tauR(dense).value
        report.diagnostics["TL+TR"] = s
        if s < 1.0:
            report.certified_rate = s
            report.certificate_name = "TL(P) + TR(P) < 1"
            report.unique = True
    log_outcome("alternate_pm", converged, report.iterations, report.last_residual)
    return report


def shifted_pm(
    P,
    sigma: float,
    left_weight: float = 0.5,
    x0=None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
    keep_iterates: bool = False,
) -> SolveReport:
    """Shifted (lazy) power method x_{t+1} = sigma P x_t x_t + (1 - sigma) x_t

    Steps shrink by sigma, so the loop stops once a step drops below
    sigma * tol; the stored tolerance is that effective value. The returned
    x satisfies ||Pxx - x||_1 < 10 tol on convergence.
    """
    if not 0.0 < sigma <= 1.0:
        raise InvalidInputError(f"sigma must lie in (0, 1], got {sigma}")
    require_stochastic(P)
    op = shifted_operator(P, sigma, left_weight)
    x = start_vector(x0, P.n)
    effective = sigma * tol
    final, its, history, converged, iterates = run_fixed_point(
        lambda v: op.apply(v, v), x, tol, maxit, keep_iterates, stop_below=effective
    )
    report = SolveReport(final, its, history, converged, effective, iterates=iterates)
    if converged:
        fixed_residual = float(np.abs(P.apply(final, final) - final).sum())
        report.diagnostics["fixed_point_residual"] = fixed_residual
        check_invariant(
            fixed_residual < 10.0 * tol,
            f"shifted iteration stopped at x with ||Pxx - x||_1 = {fixed_residual:.3e} >= 10 tol",
        )
    dense = dense_or_none(op)
    if dense is not None:
        t_sigma = tau(dense, check=False).value
        report.diagnostics["T(P_sigma)"] = t_sigma
        report.diagnostics["sigma"] = sigma
        if t_sigma < 1.0:
            report.certified_rate = t_sigma
            report.certificate_name = "T(P_sigma) < 1"
            report.unique = True
    log_outcome("shifted_pm", converged, its, report.last_residual)
    return report


def shift_curve(P, left_weight: float = 0.5):
    """sigma -> T(P_sigma), evaluated on dense entries"""
    dense = dense_or_none(P)
    if dense is None:
        raise InvalidInputError(f"shift curve needs n <= 64, got n={P.n}")
    p = dense.entries
    e = make_identity(P.n, left_weight).to_dense().entries

    def value(sigma: float) -> float:
        return tau(sigma * p + (1.0 - sigma) * e, check=False).value

    return value


def optimal_shift(
    P,
    left_weight: float = 0.5,
    grid_points: int = 101,
    refine_tol: float = 1e-4,
) -> ShiftOptimum:
    """Minimize the convex piecewise-linear curve sigma -> T(P_sigma) on [0, 1]

    A grid scan brackets the minimum, bounded Brent search narrows the
    bracket to width refine_tol, and the best evaluated point is returned.
    """
    if grid_points < 3:
        raise InvalidInputError(f"grid_points must be >= 3, got {grid_points}")
    value = shift_curve(P, left_weight)
    grid = np.linspace(0.0, 1.0, grid_points)
    evaluations = [(float(s), value(float(s))) for s in grid]
    if P.n >= 2:
        check_invariant(abs(evaluations[0][1] - 1.0) <= 1e-12, f"T(P_0) = {evaluations[0][1]!r}, expected 1")

    def recorded(sigma: float) -> float:
        t = value(float(sigma))
        evaluations.append((float(sigma), t))
        return t

    values = np.array([v for _, v in evaluations])
    b = int(np.argmin(values))
    lo, hi = grid[max(b - 1, 0)], grid[min(b + 1, grid_points - 1)]
    minimize_scalar(recorded, bounds=(lo, hi), method="bounded", options={"xatol": refine_tol})

    # first minimum in grid order wins ties
    best_sigma, best_value = min(evaluations, key=lambda sv: sv[1])
    logger.debug(f"optimal_shift: sigma*={best_sigma:.6f} T(P_sigma*)={best_value:.6f}")
    return ShiftOptimum(float(best_sigma), float(best_value), evaluations)
