"""Edge and triangle transition structures of an undirected graph

A_ij = 1/d(j) on edges, with isolated nodes sent uniformly to all nodes.
T_ijk = 1/D(j, k) when i, j, k form a triangle, where D(j, k) counts the
triangles through the edge (j, k); pairs with D = 0 are dangling and use the
uniform column.
"""

import logging
from typing import Dict, Tuple

import numpy as np
import scipy.sparse as sp

from ..core.models import TriangleTensorStats
from ..tensors.operator import LiftedMatrix
from ..tensors.sparse import SparseTensor3
from .loader import Graph

logger = logging.getLogger(__name__)


def transition_matrix(graph: Graph) -> sp.csc_matrix:
    """Column-stochastic random-walk matrix"""
    n = graph.n
    deg = graph.degrees.astype(float)
    inv = np.divide(1.0, deg, out=np.zeros(n), where=deg > 0)
    coo = graph.adjacency.tocoo()
    rows, cols, vals = [coo.row], [coo.col], [inv[coo.col]]
    isolated = np.flatnonzero(deg == 0)
    if isolated.size:
        rows.append(np.tile(np.arange(n), isolated.size))
        cols.append(np.repeat(isolated, n))
        vals.append(np.full(n * isolated.size, 1.0 / n))
    A = sp.csc_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    )
    A.sort_indices()
    return A


def pair_triangle_counts(graph: Graph) -> Dict[Tuple[int, int], np.ndarray]:
    """Map each edge (j, k), j < k, lying on a triangle to the completing nodes"""
    counts: Dict[Tuple[int, int], np.ndarray] = {}
    heads, tails = graph.edges()
    for j, k in zip(heads.tolist(), tails.tolist()):
        common = np.intersect1d(graph.neighbors(j), graph.neighbors(k), assume_unique=True)
        if common.size:
            counts[(j, k)] = common
    return counts


def triangle_tensor(graph: Graph) -> Tuple[SparseTensor3, TriangleTensorStats]:
    """Sparse triangle transition tensor; S-symmetric by construction"""
    n = graph.n
    pieces_i, pieces_j, pieces_k, pieces_v = [], [], [], []
    incidences = 0
    for (j, k), common in pair_triangle_counts(graph).items():
        d = common.size
        incidences += d
        weight = np.full(d, 1.0 / d)
        pieces_i += [common, common]
        pieces_j += [np.full(d, j), np.full(d, k)]
        pieces_k += [np.full(d, k), np.full(d, j)]
        pieces_v += [weight, weight]

    def cat(parts, dtype):
        return np.concatenate(parts).astype(dtype) if parts else np.empty(0, dtype=dtype)

    T = SparseTensor3(
        n,
        cat(pieces_i, np.int64),
        cat(pieces_j, np.int64),
        cat(pieces_k, np.int64),
        cat(pieces_v, float),
    )
    stats = TriangleTensorStats(
        n=n,
        triangle_count=incidences // 3,
        nonzeros=T.nnz,
        stored_pairs=T.stored_pairs,
        dangling_fraction=1.0 - T.stored_pairs / (n * n) if n else 0.0,
    )
    logger.info(f"Triangle tensor: {stats.triangle_count} triangles, {stats.nonzeros} nonzeros")
    return T, stats


def operator_one_norm_diff(T: SparseTensor3, A) -> float:
    """||T - A||_1 = max_{j,k} sum_i |T_ijk - A_ij|, dangling columns included"""
    matrix = A.matrix if isinstance(A, LiftedMatrix) else A
    matrix = sp.csc_matrix(matrix)
    n = T.n
    best = 0.0
    if T.stored_pairs:
        diff = T.columns - matrix[:, T.pair_j]
        best = float(np.abs(diff).sum(axis=0).max())

    dangling_per_j = n - np.bincount(T.pair_j, minlength=n)
    if dangling_per_j.any():
        # ||d - A_j||_1 = sum(d) + sum over the support of A_j of (|d_i - a_i| - d_i)
        d = T.dangling_default.values
        col_of = np.repeat(np.arange(n), np.diff(matrix.indptr))
        rows = matrix.indices
        contrib = np.abs(d[rows] - matrix.data) - d[rows]
        per_j = d.sum() + np.bincount(col_of, weights=contrib, minlength=n)
        best = max(best, float(per_j[dangling_per_j > 0].max()))
    return best
