"""Name-based dispatch used by the CLI and the experiments"""

from typing import Callable, Dict, List, Sequence

import numpy as np

from ..core.errors import InvalidInputError, InvariantViolation
from ..core.models import CoefficientReport
from .birkhoff import kappa_report, tauH_report
from .ergodic import tau, tauL, tauR
from .li_ng import SUBSET_LIMIT, delta_bruteforce_report, delta_closed_form_report, gamma_report, sigma_vectors, theta_report

COEFFICIENTS: Dict[str, Callable] = {
    "TL": tauL,
    "TR": tauR,
    "T": tau,
    "TH": tauH_report,
    "kappa": kappa_report,
    "delta": delta_closed_form_report,
    "delta-bf": delta_bruteforce_report,
    "gamma": gamma_report,
}

SIGMA_CHOICES = {"max": 0, "min": 1, "avg": 2}


def resolve_sigma(P, sigma) -> np.ndarray:
    """A sigma vector from a choice name (max, min, avg) or explicit values"""
    if isinstance(sigma, str):
        if sigma not in SIGMA_CHOICES:
            raise InvalidInputError(f"unknown sigma choice {sigma!r}; use max, min, avg or a vector")
        return sigma_vectors(P)[SIGMA_CHOICES[sigma]]
    return np.asarray(sigma, dtype=float)


def compute(name: str, P, sigma=None, subset_limit: int = SUBSET_LIMIT) -> CoefficientReport:
    if name == "theta":
        return theta_report(P, resolve_sigma(P, "avg" if sigma is None else sigma))
    if name == "tau1":
        raise InvalidInputError("tau1 is a matrix coefficient; pass a matrix")
    try:
        fn = COEFFICIENTS[name]
    except KeyError:
        raise InvalidInputError(f"unknown coefficient {name!r}") from None
    report = fn(P, limit=subset_limit) if name in ("delta-bf", "gamma") else fn(P)
    if report.name == "delta" and name == "delta-bf":
        report.runtime_note = "O(2^n n^2) subset enumeration"
    if getattr(P, "stochastic_checked", False) and not report.in_range():
        raise InvariantViolation(f"{report.name}={report.value!r} outside its documented range")
    return report


def compute_many(names: Sequence[str], P, sigma=None, subset_limit: int = SUBSET_LIMIT) -> List[CoefficientReport]:
    return [compute(name, P, sigma, subset_limit) for name in names]
