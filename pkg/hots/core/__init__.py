from .config import load_config, Config
from .errors import HotsError, InvalidInputError, InvariantViolation, check_invariant
from .models import (
    ValidationReport,
    CoefficientReport,
    SolveReport,
    SpaceyWalkResult,
    PairChainResult,
    PerturbationReport,
    CertificateSummary,
    TriangleTensorStats,
)

__all__ = [
    "load_config",
    "Config",
    "HotsError",
    "InvalidInputError",
    "InvariantViolation",
    "check_invariant",
    "ValidationReport",
    "CoefficientReport",
    "SolveReport",
    "SpaceyWalkResult",
    "PairChainResult",
    "PerturbationReport",
    "CertificateSummary",
    "TriangleTensorStats",
]
