"""Data behind the coefficient comparison and PageRank figures

Every builder returns an ExperimentResult whose rows satisfy the hard
inequalities of its experiment; observed-only relations are counted in the
summary instead of raising.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..coefficients.birkhoff import tauH
from ..coefficients.ergodic import tau
from ..coefficients.li_ng import delta_closed_form, sigma_vectors, theta
from ..core.errors import HotsError, InvalidInputError, check_invariant
from ..graph.loader import Graph
from ..graph.pagerank import TrianglePageRank
from ..solvers.iteration import DEFAULT_MAXIT, DEFAULT_TOL
from ..solvers.power import shift_curve
from ..tensors.checks import as_dense
from ..tensors.dense import DenseTensor3, random_stochastic
from .parallel import run_tasks, spawn_seeds

logger = logging.getLogger(__name__)

SLACK = 1e-12


@dataclass
class ExperimentResult:
    """Rows of one experiment plus summary statistics"""

    name: str
    columns: List[str]
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"experiment": self.name, "summary": self.summary, "rows": self.rows}


def grid(step: float, stop: float = 1.0, include_stop: bool = True) -> np.ndarray:
    """0, step, 2 step, ... up to stop, free of accumulated rounding"""
    count = int(round(stop / step))
    values = np.arange(count + (1 if include_stop else 0)) * step
    return np.round(values, 12)


def fig1_scatter(
    samples: int = 10000,
    n_min: int = 2,
    n_max: int = 10,
    seed: Optional[int] = 0,
    threads: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """T, T_H and 2 - 2 delta on random stochastic tensors with n uniform in [n_min, n_max]"""
    if samples < 1 or not 2 <= n_min <= n_max:
        raise InvalidInputError(f"need samples >= 1 and 2 <= n_min <= n_max, got {samples}, {n_min}, {n_max}")

    def sample(seq: np.random.SeedSequence) -> Dict[str, Any]:
        rng = np.random.default_rng(seq)
        n = int(rng.integers(n_min, n_max + 1))
        P = random_stochastic(n, rng)
        t = tau(P).value
        li_ng = 2.0 - 2.0 * delta_closed_form(P)
        check_invariant(t <= li_ng + SLACK, f"T={t!r} exceeds 2 - 2 delta={li_ng!r} (n={n})")
        return {"n": n, "T": t, "TH": tauH(P), "two_minus_2delta": li_ng}

    rows = run_tasks(sample, spawn_seeds(seed, samples), threads, "fig1", progress)
    violations = sum(1 for r in rows if r["T"] > r["TH"] + SLACK)
    if violations:
        logger.warning(f"fig1: T <= TH observed to fail on {violations} of {samples} tensors")
    return ExperimentResult(
        "fig1_scatter",
        ["n", "T", "TH", "two_minus_2delta"],
        rows,
        {"samples": samples, "T_le_TH_violations": violations},
    )


def fig2_mlpr_sweep(P, alphas: Sequence[float], threads: Optional[int] = None, progress: bool = True) -> ExperimentResult:
    """Uniqueness certificates of P_alpha = alpha P + (1 - alpha) V along alpha"""
    dense = as_dense(P)
    if not dense.stochastic_checked:
        raise InvalidInputError("fig2 needs a stochastic tensor")
    n = dense.n
    t = tau(dense).value
    thetas = [theta(dense, s) for s in sigma_vectors(dense)]
    uniform = np.full((n, n, n), 1.0 / n)

    def row(alpha: float) -> Dict[str, Any]:
        if not 0.0 <= alpha <= 1.0:
            raise InvalidInputError(f"alpha must lie in [0, 1], got {alpha}")
        p_alpha = DenseTensor3(alpha * dense.entries + (1.0 - alpha) * uniform)
        out = {
            "alpha": alpha,
            "two_alpha": 2.0 * alpha,
            "TH_Palpha": tauH(p_alpha),
            "two_minus_2delta_Palpha": 2.0 - 2.0 * delta_closed_form(p_alpha),
            "alpha_T": alpha * t,
        }
        for k, th in enumerate(thetas, start=1):
            out[f"alpha_theta_{k}"] = alpha * th
            check_invariant(alpha * t <= alpha * th + SLACK, f"alpha T > alpha theta(P, sigma_{k}) at alpha={alpha}")
        return out

    rows = run_tasks(row, [float(a) for a in alphas], threads, "fig2", progress)
    summary = {"T": t, "theta": thetas}
    for name in ("two_alpha", "TH_Palpha", "two_minus_2delta_Palpha", "alpha_T", "alpha_theta_1", "alpha_theta_2", "alpha_theta_3"):
        certified = [r["alpha"] for r in rows if r[name] < 1.0]
        summary[f"{name}_certified_up_to"] = max(certified) if certified else None
    return ExperimentResult(
        "fig2_mlpr_sweep",
        ["alpha", "two_alpha", "TH_Palpha", "two_minus_2delta_Palpha", "alpha_T",
         "alpha_theta_1", "alpha_theta_2", "alpha_theta_3"],
        rows,
        summary,
    )


def fig3_triangle_grid(
    graph: Graph,
    alphas: Sequence[float],
    betas: Sequence[float],
    v=None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
    threads: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """||x - v||_1, ||x - z||_1 and iteration counts over an (alpha, beta) grid"""
    solver = TrianglePageRank(graph)
    cells = [(float(a), float(b)) for a in alphas for b in betas]

    def cell(ab: Tuple[float, float]) -> Dict[str, Any]:
        alpha, beta = ab
        row = {"alpha": alpha, "beta": beta, "certificate": alpha * (1.0 + beta)}
        try:
            result = solver.solve(alpha, beta, v, tol, maxit)
        except HotsError as e:
            logger.warning(f"fig3: cell alpha={alpha} beta={beta} failed: {e}")
            row.update(x_minus_v=float("nan"), x_minus_z=float("nan"), iterations=0, converged=False, error=str(e))
            return row
        row.update(
            x_minus_v=result.x_minus_v,
            x_minus_z=result.x_minus_z,
            iterations=result.report.iterations,
            converged=result.report.converged,
            error="",
        )
        return row

    rows = run_tasks(cell, cells, threads, "fig3", progress)
    failed = sum(1 for r in rows if not r["converged"])
    return ExperimentResult(
        "fig3_triangle_grid",
        ["alpha", "beta", "x_minus_v", "x_minus_z", "iterations", "converged", "certificate", "error"],
        rows,
        {"n": graph.n, "triangles": solver.stats.triangle_count, "norm_T_minus_A": solver.norm_difference,
         "unconverged_cells": failed},
    )


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    if np.array_equal(x, y):
        return 1.0
    if np.std(x) == 0.0 or np.std(y) == 0.0:
        return float("nan")
    return float(np.corrcoef(x, y)[0, 1])


def fig4_solution_scatter(
    graph: Graph,
    reference: Tuple[float, float] = (0.6, 0.6),
    comparisons: Sequence[Tuple[float, float]] = ((0.6, 0.0), (0.7, 0.7)),
    v=None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
    threads: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Per-node pairs (x_ref, x_cmp) with the Pearson correlation of each comparison"""
    solver = TrianglePageRank(graph)
    settings = [tuple(map(float, reference))] + [tuple(map(float, c)) for c in comparisons]
    solutions = run_tasks(lambda ab: solver.solve(ab[0], ab[1], v, tol, maxit).x, settings, threads, "fig4", progress)
    x_ref = solutions[0]

    rows: List[Dict[str, Any]] = []
    correlations = {}
    for (alpha, beta), x_cmp in zip(settings[1:], solutions[1:]):
        label = f"{alpha:g},{beta:g}"
        r = pearson(x_ref, x_cmp)
        correlations[label] = r
        rows.extend(
            {"comparison": label, "alpha": alpha, "beta": beta, "node": i + 1,
             "x_ref": float(a), "x_cmp": float(b), "pearson": r}
            for i, (a, b) in enumerate(zip(x_ref, x_cmp))
        )
    return ExperimentResult(
        "fig4_solution_scatter",
        ["comparison", "alpha", "beta", "node", "x_ref", "x_cmp", "pearson"],
        rows,
        {"reference": list(settings[0]), "pearson": correlations},
    )


def fig5_shift_sweep(P, sigmas: Sequence[float], left_weight: float = 0.5) -> ExperimentResult:
    """T(P_sigma) along sigma; the curve must be convex with value 1 at sigma = 0"""
    value = shift_curve(P, left_weight)
    sigmas = np.asarray(sigmas, dtype=float)
    values = np.array([value(s) for s in sigmas])

    if sigmas.size and sigmas[0] == 0.0 and P.n >= 2:
        check_invariant(abs(values[0] - 1.0) <= SLACK, f"T(P_0) = {values[0]!r}, expected 1")
    if sigmas.size >= 3:
        h = np.diff(sigmas)
        if h.min() <= 0:
            raise InvalidInputError("sigmas must be strictly increasing")
        bends = np.diff(np.diff(values) / h)
        check_invariant(bends.min() >= -1e-10 / h.min(), "sigma -> T(P_sigma) is not convex on the grid")

    best = int(np.argmin(values)) if values.size else 0
    rows = [{"sigma": float(s), "T": float(t)} for s, t in zip(sigmas, values)]
    summary = {"sigma_min": float(sigmas[best]), "T_min": float(values[best])} if values.size else {}
    return ExperimentResult("fig5_shift_sweep", ["sigma", "T"], rows, summary)
