from .matrix import tau1_matrix
from .ergodic import tauL, tauR, tau, tau_lipschitz_check, is_rank_one
from .birkhoff import birkhoff_delta, kappa, kappa_report, tauH, tauH_report, hilbert_distance
from .li_ng import (
    delta_closed_form,
    delta_closed_form_report,
    delta_bruteforce,
    delta_bruteforce_report,
    gamma,
    gamma_report,
    theta,
    theta_report,
    sigma_vectors,
)
from .registry import COEFFICIENTS, compute, compute_many, resolve_sigma

__all__ = [
    "tau1_matrix",
    "tauL",
    "tauR",
    "tau",
    "tau_lipschitz_check",
    "is_rank_one",
    "birkhoff_delta",
    "kappa",
    "kappa_report",
    "tauH",
    "tauH_report",
    "hilbert_distance",
    "delta_closed_form",
    "delta_closed_form_report",
    "delta_bruteforce",
    "delta_bruteforce_report",
    "gamma",
    "gamma_report",
    "theta",
    "theta_report",
    "sigma_vectors",
    "COEFFICIENTS",
    "compute",
    "compute_many",
    "resolve_sigma",
]
