"""Triangle-based multilinear PageRank

The blended operator beta T + (1 - beta) A mixes the triangle walk with the
edge walk (A lifted to a tensor through its left slot). When
alpha (1 + beta) < 1 the multilinear PageRank vector x is unique, and it
stays within alpha beta / (1 - alpha) ||T - A||_1 of classical PageRank z.
"""

import logging
import math

import numpy as np

from ..core.errors import InvalidInputError, check_invariant
from ..core.models import SolveReport, TrianglePageRankResult
from ..solvers.iteration import DEFAULT_MAXIT, DEFAULT_TOL, log_outcome, run_fixed_point, start_vector
from ..solvers.pagerank import mlpr_fixed_point
from ..tensors.operator import LiftedMatrix, TransitionOperator
from ..tensors.vectors import StochasticVector, as_array
from .loader import Graph
from .triangles import operator_one_norm_diff, transition_matrix, triangle_tensor

logger = logging.getLogger(__name__)


def pagerank(A, alpha: float, v=None, tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT, x0=None) -> SolveReport:
    """Classical PageRank z = alpha A z + (1 - alpha) v by power iteration"""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidInputError(f"alpha must lie in [0, 1], got {alpha}")
    n = A.shape[0]
    v = StochasticVector(as_array(v, n, "v")).values
    teleport = (1.0 - alpha) * v
    final, its, history, converged, _ = run_fixed_point(
        lambda z: alpha * (A @ z) + teleport, start_vector(x0, n), tol, maxit
    )
    report = SolveReport(final, its, history, converged, tol)
    if alpha < 1.0:
        report.certified_rate = alpha
        report.certificate_name = "alpha < 1"
        report.unique = True
    log_outcome("pagerank", converged, its, report.last_residual)
    return report


class TrianglePageRank:
    """Triangle and edge structures of one graph, shared across (alpha, beta) solves"""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.T, self.stats = triangle_tensor(graph)
        self.A = transition_matrix(graph)
        self.edge_tensor = LiftedMatrix(self.A, "left")
        self.norm_difference = operator_one_norm_diff(self.T, self.A)

    @property
    def n(self) -> int:
        return self.graph.n

    def blend(self, beta: float) -> TransitionOperator:
        if not 0.0 <= beta <= 1.0:
            raise InvalidInputError(f"beta must lie in [0, 1], got {beta}")
        return TransitionOperator([(beta, self.T), (1.0 - beta, self.edge_tensor)])

    def solve(
        self,
        alpha: float,
        beta: float,
        v=None,
        tol: float = DEFAULT_TOL,
        maxit: int = DEFAULT_MAXIT,
        x0=None,
    ) -> TrianglePageRankResult:
        v = StochasticVector(as_array(v, self.n, "v")).values
        certificate = alpha * (1.0 + beta)
        report = mlpr_fixed_point(self.blend(beta), alpha, v, tol, maxit, x0=x0, rate_bound=certificate)
        z_report = pagerank(self.A, alpha, v, tol, maxit)
        x, z = report.final, z_report.final

        x_minus_z = float(np.abs(x - z).sum())
        bound = alpha * beta / (1.0 - alpha) * self.norm_difference if alpha < 1.0 else math.inf
        if certificate < 1.0 and report.converged and z_report.converged:
            # both iterates sit within tol * rate / (1 - rate) of their fixed points
            slack = tol / (1.0 - certificate) + tol / (1.0 - alpha) + 1e-12
            check_invariant(
                x_minus_z <= bound + slack,
                f"||x - z||_1 = {x_minus_z!r} exceeds alpha beta / (1 - alpha) ||T - A||_1 = {bound!r}",
            )
        return TrianglePageRankResult(
            report=report,
            z=z,
            pagerank_iterations=z_report.iterations,
            alpha=alpha,
            beta=beta,
            x_minus_v=float(np.abs(x - v).sum()),
            x_minus_z=x_minus_z,
            norm_difference=self.norm_difference,
            bound=bound,
            certificate=certificate,
        )


def blend_operator(graph: Graph, beta: float) -> TransitionOperator:
    """P = beta T + (1 - beta) A without a dense tensor"""
    return TrianglePageRank(graph).blend(beta)


def triangle_mlpr(
    graph: Graph,
    alpha: float,
    beta: float,
    v=None,
    tol: float = DEFAULT_TOL,
    maxit: int = DEFAULT_MAXIT,
) -> TrianglePageRankResult:
    return TrianglePageRank(graph).solve(alpha, beta, v, tol, maxit)
