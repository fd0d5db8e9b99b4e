"""Undirected graphs from edge lists"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from ..core.errors import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with a symmetric 0/1 CSR adjacency

    Row i of ``adjacency`` lists the sorted neighbors of node i.
    """

    n: int
    adjacency: sp.csr_matrix
    m: int
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0

    def neighbors(self, i: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[i]:a.indptr[i + 1]]

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    def edges(self) -> Tuple[np.ndarray, np.ndarray]:
        """Endpoints (j, k) with j < k"""
        upper = sp.triu(self.adjacency, k=1, format="coo")
        order = np.lexsort((upper.col, upper.row))
        return upper.row[order].astype(np.int64), upper.col[order].astype(np.int64)

    @classmethod
    def from_edges(cls, n: int, j, k) -> "Graph":
        """Symmetrize, drop self-loops and duplicate edges"""
        j = np.asarray(j, dtype=np.int64).ravel()
        k = np.asarray(k, dtype=np.int64).ravel()
        if j.size and (min(j.min(), k.min()) < 0 or max(j.max(), k.max()) >= n):
            raise InvalidInputError(f"edge endpoint out of range for n={n}")
        loops = j == k
        lo, hi = np.minimum(j[~loops], k[~loops]), np.maximum(j[~loops], k[~loops])
        pairs = np.unique(np.stack([lo, hi], axis=1), axis=0) if lo.size else np.empty((0, 2), dtype=np.int64)
        duplicates = int(lo.size - pairs.shape[0])
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        adjacency = sp.csr_matrix((np.ones(rows.size), (rows, cols)), shape=(n, n))
        adjacency.sort_indices()
        return cls(n, adjacency, int(pairs.shape[0]), int(loops.sum()), duplicates)


def load_edge_list(source: Union[str, Path, TextIO, Iterable[str]], index_base: Union[str, int] = "auto") -> Graph:
    """Parse whitespace-separated node pairs

    Lines starting with ``#`` or ``%`` are comments and tokens after the
    second are ignored. ``index_base`` is 0, 1 or "auto" (0-based exactly
    when some endpoint is 0).
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise FileNotFoundError(f"Edge list not found: {path}")
        with open(path, "r", encoding="utf-8") as f:
            return load_edge_list(f, index_base)

    if index_base not in ("auto", 0, 1, "0", "1"):
        raise InvalidInputError(f"index_base must be auto, 0 or 1, got {index_base!r}")

    heads, tails = [], []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise InvalidInputError(f"line {lineno}: expected two node ids, got {line!r}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise InvalidInputError(f"line {lineno}: node ids must be integers, got {line!r}") from None
        if a < 0 or b < 0:
            raise InvalidInputError(f"line {lineno}: negative node id")
        heads.append(a)
        tails.append(b)

    j = np.asarray(heads, dtype=np.int64)
    k = np.asarray(tails, dtype=np.int64)
    if index_base == "auto":
        base = 0 if j.size and min(j.min(), k.min()) == 0 else 1
    else:
        base = int(index_base)
    if j.size and min(j.min(), k.min()) < base:
        raise InvalidInputError(f"node id below index base {base}")
    n = int(max(j.max(), k.max())) + 1 - base if j.size else 0
    graph = Graph.from_edges(n, j - base, k - base)
    if graph.dropped_self_loops or graph.dropped_duplicates:
        logger.info(
            f"Edge list: dropped {graph.dropped_self_loops} self-loops and "
            f"{graph.dropped_duplicates} duplicate edges"
        )
    logger.debug(f"Loaded graph n={graph.n} m={graph.m}")
    return graph


def largest_connected_component(graph: Graph) -> Tuple[Graph, np.ndarray]:
    """Induced subgraph on the largest component and the kept node ids"""
    _, labels = connected_components(graph.adjacency, directed=False)
    sizes = np.bincount(labels)
    keep = np.flatnonzero(labels == int(np.argmax(sizes)))
    sub = graph.adjacency[keep][:, keep]
    upper = sp.triu(sub, k=1, format="coo")
    component = Graph.from_edges(keep.size, upper.row, upper.col)
    logger.info(f"Largest connected component: {component.n} of {graph.n} nodes")
    return component, keep


def erdos_renyi(n: int, p: float, seed=None) -> Graph:
    """G(n, p) random graph"""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"need n >= 1 and p in [0, 1], got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    j, k = np.triu_indices(n, k=1)
    keep = rng.random(j.size) < p
    return Graph.from_edges(n, j[keep], k[keep])


def complete_graph(n: int) -> Graph:
    j, k = np.triu_indices(n, k=1)
    return Graph.from_edges(n, j, k)
