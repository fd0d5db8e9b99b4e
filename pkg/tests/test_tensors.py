"""Tensor core tests"""

import io

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hots.core.errors import InvalidInputError
from hots.tensors import (
    DenseTensor3,
    SparseTensor3,
    StochasticVector,
    TransitionOperator,
    apply_bilinear,
    as_dense,
    make_identity,
    pagerank_operator,
    random_stochastic,
    read_tensor,
    shifted_operator,
    validate_stochastic,
    write_tensor,
)
from hots.tensors.dense import convex_combination, tensor_one_norm
from hots.tensors.operator import LiftedMatrix, RankOne

N = 4
vectors = arrays(np.float64, (N,), elements=st.floats(min_value=0.0, max_value=1.0))


def small_sparse() -> SparseTensor3:
    """Stored columns (1, 2), (2, 1) and (3, 3); everything else dangling"""
    return SparseTensor3(
        3,
        i=[2, 2, 0, 1],
        j=[0, 1, 2, 2],
        k=[1, 0, 2, 2],
        values=[1.0, 1.0, 0.5, 0.5],
        dangling_default=StochasticVector([0.2, 0.3, 0.5]),
    )


def test_dense_rejects_non_cubical_shape():
    with pytest.raises(InvalidInputError, match="cubical"):
        DenseTensor3(np.ones((2, 2, 3)))


def test_dense_validation_modes():
    arr = np.full((2, 2, 2), 0.5)
    arr[0, 1, 0] = 1.0
    assert not DenseTensor3(arr).stochastic_checked
    with pytest.raises(InvalidInputError, match="not stochastic"):
        DenseTensor3(arr, stochastic_checked=True)
    assert DenseTensor3(np.full((2, 2, 2), 0.5)).stochastic_checked


def test_dense_entries_are_read_only(example_tensor):
    with pytest.raises(ValueError):
        example_tensor.entries[0, 0, 0] = 1.0


def test_example_tensor_is_stochastic(example_tensor):
    assert example_tensor.stochastic_checked
    x = apply_bilinear(example_tensor, None, None)
    assert x.sum() == pytest.approx(1.0, abs=1e-12)


def test_frontal_slice_convention():
    P = DenseTensor3.from_slices([np.eye(2), np.full((2, 2), 0.5)])
    np.testing.assert_array_equal(P.entries[:, :, 0], np.eye(2))
    np.testing.assert_array_equal(P.column(0, 1), [0.5, 0.5])


@seed(3)
@settings(max_examples=50, deadline=None)
@given(tensor_seed=st.integers(min_value=0, max_value=2**32 - 1), x=vectors, y=vectors)
def test_collapse_and_s_transpose_identities(tensor_seed, x, y):
    P = random_stochastic(N, tensor_seed)
    np.testing.assert_allclose(P.collapse(x) @ y, P.apply(x, y), atol=1e-12)
    np.testing.assert_allclose(P.s_transpose().apply(x, y), P.apply(y, x), atol=1e-12)


@seed(5)
@settings(max_examples=50, deadline=None)
@given(x=arrays(np.float64, (3,), elements=st.floats(min_value=0.0, max_value=1.0)),
       y=arrays(np.float64, (3,), elements=st.floats(min_value=0.0, max_value=1.0)))
def test_sparse_apply_matches_dense(x, y):
    T = small_sparse()
    np.testing.assert_allclose(T.apply(x, y), T.to_dense().apply(x, y), atol=1e-12)


def test_symmetrize_is_s_symmetric():
    P = random_stochastic(5, 1)
    Q = P.symmetrize()
    assert Q.is_s_symmetric()
    assert Q.stochastic_checked
    assert not P.is_s_symmetric()
    np.testing.assert_array_equal(P.s_transpose().s_transpose().entries, P.entries)


def test_arithmetic_gives_unchecked_tensors(example_tensor):
    diff = example_tensor - example_tensor.s_transpose()
    assert not diff.stochastic_checked
    assert not (2.0 * example_tensor).stochastic_checked
    assert tensor_one_norm(example_tensor - example_tensor) == 0.0


def test_structured_constructors():
    v = np.array([0.2, 0.3, 0.5])
    R = DenseTensor3.rank_one(v)
    np.testing.assert_allclose(R.apply([1, 0, 0], [0, 0, 1]), v)
    U = DenseTensor3.uniform(3)
    assert U.stochastic_checked
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    L = DenseTensor3.lifted(A, "left")
    np.testing.assert_array_equal(L.entries[:, :, 1], A)
    with pytest.raises(InvalidInputError):
        DenseTensor3.lifted(A, "middle")


def test_random_stochastic_is_seeded():
    a, b = random_stochastic(4, 9), random_stochastic(4, 9)
    np.testing.assert_array_equal(a.entries, b.entries)
    assert a.stochastic_checked
    with pytest.raises(InvalidInputError):
        random_stochastic(1, 0)


def test_convex_combination_checks_weight(example_tensor):
    U = DenseTensor3.uniform(3)
    assert convex_combination(0.3, example_tensor, U).stochastic_checked
    with pytest.raises(InvalidInputError):
        convex_combination(1.5, example_tensor, U)


def test_stochastic_vector():
    assert StochasticVector.uniform(4).values.sum() == pytest.approx(1.0)
    np.testing.assert_array_equal(StochasticVector.one_hot(3, 1).values, [0, 1, 0])
    assert StochasticVector.random(5, seed=0).values.sum() == pytest.approx(1.0)
    np.testing.assert_allclose(StochasticVector.normalized([1, 3]).values, [0.25, 0.75])
    with pytest.raises(InvalidInputError):
        StochasticVector([0.5, 0.6])
    with pytest.raises(InvalidInputError):
        StochasticVector([1.5, -0.5])


def test_sparse_validation():
    with pytest.raises(InvalidInputError, match="duplicate"):
        SparseTensor3(2, [0, 0], [0, 0], [0, 0], [0.5, 0.5])
    with pytest.raises(InvalidInputError, match="sums to"):
        SparseTensor3(2, [0], [0], [0], [0.5])
    with pytest.raises(InvalidInputError, match="positive"):
        SparseTensor3(2, [0, 1], [0, 0], [0, 0], [1.5, -0.5])


def test_sparse_structure():
    T = small_sparse()
    assert T.nnz == 4
    assert T.stored_pairs == 3
    np.testing.assert_array_equal(T.column(0, 1), [0, 0, 1])
    np.testing.assert_array_equal(T.column(1, 1), [0.2, 0.3, 0.5])
    assert T.is_dangling().sum() == 6
    np.testing.assert_array_equal(T.s_transpose().to_dense().entries, T.to_dense().s_transpose().entries)
    i, j, k, _ = T.coordinates()
    order = list(zip(k.tolist(), j.tolist(), i.tolist()))
    assert order == sorted(order)


def test_validate_stochastic_reports_worst_column():
    arr = np.full((2, 2, 2), 0.5)
    arr[0, 1, 0] = 1.0
    report = validate_stochastic(arr)
    assert not report
    assert report.worst_column == (1, 0)
    assert report.worst_deviation == pytest.approx(0.5)
    assert report.to_dict()["worst_column"] == [2, 1]
    assert validate_stochastic(small_sparse()).is_stochastic


def test_as_dense_size_guard():
    big = SparseTensor3(70, [], [], [], [])
    with pytest.raises(InvalidInputError, match="n <= 64"):
        as_dense(big)


def test_identity_operator_fixes_simplex_vectors():
    x = np.array([0.1, 0.6, 0.3])
    for left_weight in (0.0, 0.3, 1.0):
        np.testing.assert_allclose(make_identity(3, left_weight).apply(x, x), x, atol=1e-15)


def test_operator_combinations(example_tensor):
    op = pagerank_operator(example_tensor, 0.7)
    expected = 0.7 * example_tensor.entries + 0.3 / 3
    np.testing.assert_allclose(op.to_dense().entries, expected, atol=1e-15)

    assert len(shifted_operator(example_tensor, 1.0).terms) == 1
    nested = TransitionOperator([(0.5, op), (0.5, example_tensor)])
    assert len(nested.terms) == 3

    with pytest.raises(InvalidInputError, match="sum to"):
        TransitionOperator([(0.5, example_tensor)])
    with pytest.raises(InvalidInputError, match="stochastic"):
        TransitionOperator([(1.0, 1.0 * example_tensor)])


def test_operands_apply_like_their_dense_forms():
    A = np.array([[0.0, 0.5, 1.0], [0.5, 0.0, 0.0], [0.5, 0.5, 0.0]])
    x, y = np.array([0.2, 0.5, 0.3]), np.array([0.6, 0.1, 0.3])
    for slot in ("left", "right"):
        lifted = LiftedMatrix(A, slot)
        np.testing.assert_allclose(lifted.apply(x, y), lifted.to_dense().apply(x, y), atol=1e-15)
    r = RankOne(np.array([0.2, 0.3, 0.5]))
    np.testing.assert_allclose(r.apply(x, y), [0.2, 0.3, 0.5])


def test_read_tensor_dense_and_sparse():
    text = "# demo\ntensor3 n=2\n1 1 1 1\n2 2 1 0.5\n1 2 1 0.5\n1 1 2 0.25\n2 1 2 0.75\n2 2 2 1\n"
    dense = read_tensor(io.StringIO(text), kind="dense")
    assert dense.stochastic_checked
    np.testing.assert_array_equal(dense.column(0, 1), [0.25, 0.75])
    sparse = read_tensor(io.StringIO(text), kind="sparse")
    assert isinstance(sparse, SparseTensor3)
    np.testing.assert_array_equal(sparse.to_dense().entries, dense.entries)


def test_dangling_line_fills_sparse_columns_only():
    text = "tensor3 n=2\ndangling 0.25 0.75\n1 1 1 1\n2 2 1 0.5\n1 2 1 0.5\n"
    auto = read_tensor(io.StringIO(text))
    assert isinstance(auto, SparseTensor3)
    np.testing.assert_array_equal(auto.to_dense().column(1, 1), [0.25, 0.75])
    dense = read_tensor(io.StringIO(text), kind="dense")
    np.testing.assert_array_equal(dense.column(1, 1), [0.0, 0.0])
    assert not dense.stochastic_checked


def test_dense_read_keeps_missing_column_at_zero():
    # no entries for (j, k) = (2, 2)
    text = "tensor3 n=2\n1 1 1 1\n2 1 2 1\n1 2 1 1\n"
    T = read_tensor(io.StringIO(text), kind="dense")
    np.testing.assert_array_equal(T.column(1, 1), [0.0, 0.0])
    report = validate_stochastic(T)
    assert not report.is_stochastic
    assert report.worst_column == (1, 1)
    assert report.to_dict()["worst_column"] == [2, 2]
    assert report.worst_deviation == pytest.approx(1.0)


def test_read_tensor_errors(tmp_path):
    with pytest.raises(InvalidInputError, match="line 1"):
        read_tensor(io.StringIO("tensor n=2\n"))
    with pytest.raises(InvalidInputError, match="out of range"):
        read_tensor(io.StringIO("tensor3 n=2\n3 1 1 1\n"))
    with pytest.raises(InvalidInputError, match="header"):
        read_tensor(io.StringIO("# only comments\n"))
    with pytest.raises(FileNotFoundError):
        read_tensor(tmp_path / "missing.tensor")


def test_written_tensor_reads_back(example_tensor):
    buf = io.StringIO()
    write_tensor(example_tensor, buf)
    text = buf.getvalue()
    assert text.startswith("tensor3 n=3\n")
    restored = read_tensor(io.StringIO(text))
    np.testing.assert_array_equal(restored.entries, example_tensor.entries)


def test_sparse_writer_emits_dangling_line():
    buf = io.StringIO()
    write_tensor(small_sparse(), buf)
    lines = buf.getvalue().splitlines()
    assert lines[1].startswith("dangling 0.20000000000000001")
    assert len(lines) == 2 + 4


def test_uniform_dangling_sparse_tensor_reads_back():
    T = SparseTensor3(3, i=[2, 2], j=[0, 1], k=[1, 0], values=[1.0, 1.0])
    buf = io.StringIO()
    write_tensor(T, buf)
    assert buf.getvalue().splitlines()[1].startswith("dangling ")
    restored = read_tensor(io.StringIO(buf.getvalue()))
    assert isinstance(restored, SparseTensor3)
    np.testing.assert_array_equal(restored.to_dense().entries, T.to_dense().entries)
