"""Graph and triangle PageRank tests"""

import os

import numpy as np
import pytest

from hots.core.errors import InvalidInputError
from hots.graph import (
    Graph,
    TrianglePageRank,
    blend_operator,
    complete_graph,
    erdos_renyi,
    largest_connected_component,
    load_edge_list,
    operator_one_norm_diff,
    pagerank,
    pair_triangle_counts,
    transition_matrix,
    triangle_mlpr,
    triangle_tensor,
)
from hots.tensors import validate_stochastic

SOCFB_EDGES = os.environ.get("HOTS_SOCFB_EDGES")


def test_load_edge_list_cleans_input():
    lines = ["# header", "1 2", "2 3 1.0 extra", "% other comment", "", "3 1", "1 1", "2 1"]
    graph = load_edge_list(lines)
    assert graph.n == 3
    assert graph.m == 3
    assert graph.dropped_self_loops == 1
    assert graph.dropped_duplicates == 1
    np.testing.assert_array_equal(graph.neighbors(0), [1, 2])


def test_load_edge_list_index_base():
    assert load_edge_list(["0 1", "1 2"]).n == 3
    assert load_edge_list(["1 2", "2 3"]).n == 3
    assert load_edge_list(["1 2", "2 3"], index_base=0).n == 4
    with pytest.raises(InvalidInputError, match="below index base"):
        load_edge_list(["0 1"], index_base=1)


def test_load_edge_list_errors(tmp_path):
    with pytest.raises(InvalidInputError, match="line 2"):
        load_edge_list(["1 2", "3"])
    with pytest.raises(InvalidInputError, match="integers"):
        load_edge_list(["a b"])
    with pytest.raises(FileNotFoundError):
        load_edge_list(tmp_path / "missing.txt")


def test_load_edge_list_from_file(edge_file):
    graph = load_edge_list(edge_file)
    assert graph.n == 4
    assert graph.m == 6


def test_largest_connected_component():
    graph = Graph.from_edges(6, [0, 1, 2, 4], [1, 2, 0, 5])
    component, keep = largest_connected_component(graph)
    assert component.n == 3
    assert component.m == 3
    np.testing.assert_array_equal(keep, [0, 1, 2])


def test_random_graphs_are_seeded():
    a, b = erdos_renyi(30, 0.2, seed=4), erdos_renyi(30, 0.2, seed=4)
    assert (a.adjacency != b.adjacency).nnz == 0
    assert complete_graph(5).m == 10
    with pytest.raises(InvalidInputError):
        erdos_renyi(5, 1.5)


def test_transition_matrix_is_column_stochastic(path_graph):
    graph = Graph.from_edges(5, [0, 1, 2], [1, 2, 3])  # node 4 isolated
    A = transition_matrix(graph)
    np.testing.assert_allclose(np.asarray(A.sum(axis=0)).ravel(), 1.0)
    np.testing.assert_allclose(A[:, 4].toarray().ravel(), 0.2)
    np.testing.assert_allclose(transition_matrix(path_graph)[:, 1].toarray().ravel(), [0.5, 0, 0.5, 0])


def test_triangle_tensor_of_k3(k3):
    T, stats = triangle_tensor(k3)
    assert stats.triangle_count == 1
    assert stats.nonzeros == 6
    np.testing.assert_array_equal(T.column(0, 1), [0, 0, 1])
    np.testing.assert_array_equal(T.column(0, 0), np.full(3, 1 / 3))
    assert operator_one_norm_diff(T, transition_matrix(k3)) == pytest.approx(1.0)


def test_triangle_tensor_of_k4(k4):
    T, stats = triangle_tensor(k4)
    assert stats.triangle_count == 4
    assert stats.nonzeros == 24
    assert stats.stored_pairs == 12
    np.testing.assert_allclose(T.column(0, 1), [0, 0, 0.5, 0.5])
    dense = T.to_dense()
    assert dense.stochastic_checked
    assert dense.is_s_symmetric()


def test_path_graph_has_no_triangles(path_graph):
    assert pair_triangle_counts(path_graph) == {}
    T, stats = triangle_tensor(path_graph)
    assert stats.nonzeros == 0
    assert stats.dangling_fraction == 1.0
    np.testing.assert_allclose(T.apply(np.full(4, 0.25), np.full(4, 0.25)), 0.25)


def test_one_norm_difference_matches_dense():
    graph = erdos_renyi(12, 0.4, seed=1)
    T, _ = triangle_tensor(graph)
    A = transition_matrix(graph).toarray()
    dense = T.to_dense().entries
    expected = np.abs(dense - A[:, :, None]).sum(axis=0).max()
    assert operator_one_norm_diff(T, A) == pytest.approx(expected, abs=1e-12)


def test_blend_operator_matches_dense(k4):
    op = blend_operator(k4, 0.3)
    T, _ = triangle_tensor(k4)
    A = transition_matrix(k4).toarray()
    expected = 0.3 * T.to_dense().entries + 0.7 * A[:, :, None]
    np.testing.assert_allclose(op.to_dense().entries, expected, atol=1e-15)
    with pytest.raises(InvalidInputError):
        blend_operator(k4, 1.2)


def test_classical_pagerank(k4):
    report = pagerank(transition_matrix(k4), 0.85)
    assert report.converged
    np.testing.assert_allclose(report.final, 0.25, atol=1e-12)


def test_triangle_mlpr_on_k4(k4):
    result = triangle_mlpr(k4, 0.6, 0.6)
    assert result.report.converged
    assert result.certificate == pytest.approx(0.96)
    assert result.report.certified_rate == pytest.approx(0.96)
    np.testing.assert_allclose(result.x, 0.25, atol=1e-9)
    assert result.x_minus_z <= result.bound + 1e-7
    rows = result.rows()
    assert [r["node"] for r in rows] == [1, 2, 3, 4]


def test_triangle_mlpr_limits():
    graph = erdos_renyi(30, 0.3, seed=1)
    solver = TrianglePageRank(graph)
    no_triangles = solver.solve(0.6, 0.0)
    assert no_triangles.x_minus_z <= 10 * 1e-8
    no_walk = solver.solve(0.0, 0.6)
    assert no_walk.x_minus_v <= 1e-12


def test_triangle_mlpr_random_graph():
    graph = erdos_renyi(100, 0.1, seed=3)
    solver = TrianglePageRank(graph)
    assert validate_stochastic(solver.T).is_stochastic
    i, j, k, v = solver.T.coordinates()
    ti, tj, tk, tv = solver.T.s_transpose().coordinates()
    assert sorted(zip(i, j, k, v)) == sorted(zip(ti, tj, tk, tv))

    result = solver.solve(0.6, 0.6)
    assert result.report.converged
    assert result.certificate == pytest.approx(0.96)
    assert result.x_minus_v <= 2 * 0.6 + 1e-12
    bound = 0.6 * 0.6 / 0.4 * solver.norm_difference
    assert result.x_minus_z <= bound + 1e-6


@pytest.mark.slow
@pytest.mark.skipif(not SOCFB_EDGES, reason="HOTS_SOCFB_EDGES not set; socfb-Carnegie49 check unavailable")
def test_socfb_carnegie_triangle_tensor():
    graph, _ = largest_connected_component(load_edge_list(SOCFB_EDGES))
    assert graph.n == 6621
    T, stats = triangle_tensor(graph)
    assert stats.nonzeros == 13860318
