"""One-stop summary of every uniqueness certificate for a dense tensor"""

import logging

from ..coefficients.birkhoff import tauH
from ..coefficients.ergodic import tau, tauL, tauR
from ..coefficients.li_ng import delta_closed_form
from ..core.errors import InvalidInputError
from ..core.models import CertificateEntry, CertificateSummary
from ..tensors.checks import as_dense
from .power import optimal_shift

logger = logging.getLogger(__name__)


def convergence_certificate(
    P,
    left_weight: float = 0.5,
    grid_points: int = 101,
    refine_tol: float = 1e-4,
    dense_limit: int = 64,
) -> CertificateSummary:
    """Evaluate T, T_L + T_R, T_H, 2 - 2 delta and min_sigma T(P_sigma)

    Each value certifies its statement when it is below 1.
    """
    if P.n > dense_limit:
        raise InvalidInputError(f"certificates need n <= {dense_limit}, got n={P.n}")
    dense = as_dense(P, dense_limit)
    if not dense.stochastic_checked:
        raise InvalidInputError("certificates need a stochastic tensor")

    t = tau(dense).value
    s = tauL(dense).value + tauR(dense).value
    th = tauH(dense)
    li_ng = 2.0 - 2.0 * delta_closed_form(dense)
    shift = optimal_shift(dense, left_weight, grid_points, refine_tol)

    entries = [
        CertificateEntry("T", t, 1.0, t < 1.0,
                         "unique Z-eigenvector; the higher-order power method converges"),
        CertificateEntry("TL+TR", s, 1.0, s < 1.0,
                         "the alternate power method and vertex-reinforced walks converge"),
        CertificateEntry("TH", th, 1.0, th < 1.0,
                         "unique Z-eigenvector; power method contracts in the Hilbert metric"),
        CertificateEntry("2-2delta", li_ng, 1.0, li_ng < 1.0,
                         "unique Z-eigenvector (delta > 1/2)"),
        CertificateEntry("min_sigma T(P_sigma)", shift.value, 1.0, shift.value < 1.0,
                         "the shifted power method converges at sigma*", witness=shift.sigma),
    ]
    summary = CertificateSummary(dense.n, entries)
    logger.debug(f"certificate: {[(e.name, round(e.value, 6)) for e in entries]}")
    return summary
