"""Sensitivity of the Z-eigenvector to perturbations of the tensor"""

import logging

import numpy as np

from ..coefficients.ergodic import tau
from ..coefficients.li_ng import delta_closed_form
from ..core.errors import InvalidInputError, check_invariant
from ..core.models import PerturbationReport
from ..tensors.checks import as_dense
from ..tensors.dense import tensor_one_norm
from .iteration import DEFAULT_MAXIT
from .power import hopm

logger = logging.getLogger(__name__)

SLACK = 1e-12


def perturbation_bound(
    P,
    P_prime,
    x=None,
    x_prime=None,
    tol: float = 1e-12,
    maxit: int = DEFAULT_MAXIT,
) -> PerturbationReport:
    """Compare ||x - x'||_1 against ||P - P'||_1 / (1 - T(P)) and ||P - P'||_1 / (2 delta(P) - 1)

    Missing fixed points are solved with hopm. Unavailable bounds are None.
    The first bound is checked a posteriori: with residuals r = ||Pxx - x||_1
    and r' = ||P'x'x' - x'||_1, ||x - x'||_1 <= (||P - P'||_1 + r + r') / (1 - T(P)).
    """
    dense, dense_prime = as_dense(P), as_dense(P_prime)
    if dense.n != dense_prime.n:
        raise InvalidInputError(f"dimension mismatch: {dense.n} vs {dense_prime.n}")
    if x is None:
        x = hopm(dense, tol=tol, maxit=maxit).final
    if x_prime is None:
        x_prime = hopm(dense_prime, tol=tol, maxit=maxit).final
    x = np.asarray(x, dtype=float)
    x_prime = np.asarray(x_prime, dtype=float)

    norm = tensor_one_norm(dense - dense_prime)
    t = tau(dense).value
    delta = delta_closed_form(dense) if dense.stochastic_checked else None
    actual = float(np.abs(x - x_prime).sum())

    bound_T = norm / (1.0 - t) if t < 1.0 else None
    bound_delta = norm / (2.0 * delta - 1.0) if delta is not None and delta > 0.5 else None

    if bound_T is not None:
        r = float(np.abs(dense.apply(x, x) - x).sum())
        r_prime = float(np.abs(dense_prime.apply(x_prime, x_prime) - x_prime).sum())
        check_invariant(
            actual <= (norm + r + r_prime) / (1.0 - t) + SLACK,
            f"||x - x'||_1 = {actual!r} exceeds the contraction bound {bound_T!r}",
        )
    if bound_T is not None and bound_delta is not None:
        check_invariant(bound_T <= bound_delta + SLACK, f"bound_T={bound_T!r} > bound_delta={bound_delta!r}")
    return PerturbationReport(actual, norm, t, delta, bound_T, bound_delta)
