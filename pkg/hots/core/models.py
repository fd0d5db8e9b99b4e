"""Data model definitions

Witness index tuples are stored 0-based and emitted 1-based by ``to_dict``.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np


def _one_based(witness: Optional[Tuple[int, ...]]) -> Optional[List[int]]:
    if witness is None:
        return None
    return [int(i) + 1 for i in witness]


def _json_float(value: Optional[float]) -> Any:
    """JSON has no infinity; emit it as a string"""
    if value is None:
        return None
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


@dataclass
class ValidationReport:
    """Outcome of a stochasticity check"""

    is_stochastic: bool
    worst_deviation: float
    worst_column: Optional[Tuple[int, int]]
    min_entry: float

    def __bool__(self) -> bool:
        return self.is_stochastic

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_stochastic": self.is_stochastic,
            "worst_deviation": self.worst_deviation,
            "worst_column": _one_based(self.worst_column),
            "min_entry": self.min_entry,
        }


# Documented value range per coefficient
COEFFICIENT_RANGES: Dict[str, Tuple[float, float]] = {
    "tau1": (0.0, 1.0),
    "TL": (0.0, 1.0),
    "TR": (0.0, 1.0),
    "T": (0.0, 2.0),
    "TH": (0.0, 2.0),
    "kappa": (0.0, 1.0),
    "delta": (0.0, 1.0),
    "gamma": (0.0, 2.0),
    "theta": (0.0, math.inf),
}


@dataclass
class CoefficientReport:
    """Value of one ergodicity coefficient with the index tuple attaining it"""

    name: str
    value: float
    argmax_witness: Optional[Tuple[int, ...]] = None
    runtime_note: str = ""

    def __float__(self) -> float:
        return float(self.value)

    def in_range(self, slack: float = 1e-12) -> bool:
        low, high = COEFFICIENT_RANGES.get(self.name, (-math.inf, math.inf))
        return low - slack <= self.value <= high + slack

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "value": _json_float(self.value),
            "argmax_witness": _one_based(self.argmax_witness),
            "runtime_note": self.runtime_note,
        }


@dataclass
class LipschitzReport:
    """Per coefficient: (|C(P) - C(Q)|, C(P - Q), ||P - Q||_1)"""

    rows: Dict[str, Tuple[float, float, float]]

    def to_dict(self) -> Dict[str, Any]:
        return {
            name: {"abs_difference": a, "coefficient_of_difference": b, "norm_difference": c}
            for name, (a, b, c) in self.rows.items()
        }


@dataclass
class SolveReport:
    """Result of a fixed-point solve"""

    final: np.ndarray
    iterations: int
    residual_history: List[float]
    converged: bool
    tolerance: float
    certified_rate: Optional[float] = None
    certificate_name: Optional[str] = None
    unique: bool = False
    diagnostics: Dict[str, float] = field(default_factory=dict)
    final_y: Optional[np.ndarray] = None
    iterates: Optional[List[np.ndarray]] = None

    @property
    def last_residual(self) -> float:
        return self.residual_history[-1] if self.residual_history else math.inf

    def residual_ratios(self, floor: float = 1e-13) -> np.ndarray:
        """Successive residual ratios, skipping steps already at roundoff"""
        r = np.asarray(self.residual_history, dtype=float)
        if r.size < 2:
            return np.empty(0)
        keep = r[:-1] > floor
        return r[1:][keep] / r[:-1][keep]

    def rate_consistent(self, rate: float, slack: float = 0.05, tail: int = 5) -> bool:
        """Tail residual ratios stay below rate + slack"""
        ratios = self.residual_ratios()
        if ratios.size == 0:
            return True
        return bool(np.all(ratios[-tail:] <= rate + slack))

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "final": [float(v) for v in self.final],
            "iterations": self.iterations,
            "converged": self.converged,
            "tolerance": self.tolerance,
            "certified_rate": self.certified_rate,
            "certificate_name": self.certificate_name,
            "unique": self.unique,
            "diagnostics": {k: _json_float(v) for k, v in self.diagnostics.items()},
            "residual_history": [float(r) for r in self.residual_history],
        }
        if self.final_y is not None:
            data["final_y"] = [float(v) for v in self.final_y]
        return data


@dataclass
class SpaceyWalkResult:
    """Sampled spacey random walk"""

    occupation: np.ndarray
    counts: np.ndarray
    steps: int
    final_state: int
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "occupation": [float(v) for v in self.occupation],
            "counts": [int(c) for c in self.counts],
            "steps": self.steps,
            "final_state": self.final_state + 1,
            "seed": self.seed,
        }


@dataclass
class PairChainResult:
    """Stationary distribution of the second-order chain on pairs"""

    Y: np.ndarray
    rowsum: np.ndarray
    iterations: int
    converged: bool
    equation_residual: float
    balance_gap: float
    zeigen_gap: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "Y": self.Y.tolist(),
            "rowsum": self.rowsum.tolist(),
            "iterations": self.iterations,
            "converged": self.converged,
            "equation_residual": self.equation_residual,
            "balance_gap": self.balance_gap,
            "zeigen_gap": self.zeigen_gap,
        }


@dataclass
class PerturbationReport:
    """Fixed-point sensitivity to a tensor perturbation"""

    actual: float
    norm_difference: float
    tau: float
    delta: Optional[float]
    bound_T: Optional[float]
    bound_delta: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "actual": self.actual,
            "norm_difference": self.norm_difference,
            "tau": self.tau,
            "delta": self.delta,
            "bound_T": _json_float(self.bound_T),
            "bound_delta": _json_float(self.bound_delta),
        }


@dataclass
class CertificateEntry:
    name: str
    value: float
    threshold: float
    certifies: bool
    statement: str
    witness: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "value": _json_float(self.value),
            "threshold": self.threshold,
            "certifies": self.certifies,
            "statement": self.statement,
        }
        if self.witness is not None:
            data["sigma"] = self.witness
        return data


@dataclass
class CertificateSummary:
    """All uniqueness/convergence certificates of one tensor"""

    n: int
    entries: List[CertificateEntry]

    @property
    def certified(self) -> bool:
        return any(e.certifies for e in self.entries)

    def get(self, name: str) -> CertificateEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "certified": self.certified,
            "entries": [e.to_dict() for e in self.entries],
        }


@dataclass
class ShiftOptimum:
    """Minimizer of sigma -> T(P_sigma)"""

    sigma: float
    value: float
    evaluations: List[Tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sigma": self.sigma,
            "value": self.value,
            "evaluations": len(self.evaluations),
        }


@dataclass
class TriangleTensorStats:
    """Size summary of a triangle transition tensor"""

    n: int
    triangle_count: int
    nonzeros: int
    stored_pairs: int
    dangling_fraction: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "triangle_count": self.triangle_count,
            "nonzeros": self.nonzeros,
            "stored_pairs": self.stored_pairs,
            "dangling_fraction": self.dangling_fraction,
        }


@dataclass
class TrianglePageRankResult:
    """Triangle multilinear PageRank compared to classical PageRank"""

    report: SolveReport
    z: np.ndarray
    pagerank_iterations: int
    alpha: float
    beta: float
    x_minus_v: float
    x_minus_z: float
    norm_difference: float
    bound: float
    certificate: float

    @property
    def x(self) -> np.ndarray:
        return self.report.final

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {"node": i + 1, "x": float(xi), "z": float(zi), "x_minus_z": float(xi - zi)}
            for i, (xi, zi) in enumerate(zip(self.x, self.z))
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "iterations": self.report.iterations,
            "converged": self.report.converged,
            "pagerank_iterations": self.pagerank_iterations,
            "certificate": self.certificate,
            "x_minus_v": self.x_minus_v,
            "x_minus_z": self.x_minus_z,
            "norm_difference": self.norm_difference,
            "bound": _json_float(self.bound),
            "nodes": self.rows(),
        }
