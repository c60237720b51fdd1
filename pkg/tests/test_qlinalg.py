from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverhom.qlinalg import (
    RationalSparseMatrix,
    block_matrix,
    column_space_basis,
    kernel_basis,
    kernel_dim,
    rank,
    span_dim,
)

from oracles import dense_rank

entries = st.one_of(st.integers(-3, 3), st.fractions(min_value=-2, max_value=2, max_denominator=5))


@st.composite
def dense_matrices(draw, max_side=7):
    m = draw(st.integers(0, max_side))
    n = draw(st.integers(0, max_side))
    zero_bias = draw(st.sampled_from([0.0, 0.5, 0.8]))
    rows = []
    for _ in range(m):
        rows.append([0 if draw(st.floats(0, 1)) < zero_bias else draw(entries) for _ in range(n)])
    return rows, n


def test_rank_of_identity_and_zero():
    assert rank(RationalSparseMatrix.identity(5)) == 5
    assert rank(RationalSparseMatrix.zeros(4, 3)) == 0
    assert rank(RationalSparseMatrix.zeros(0, 0)) == 0


def test_rank_small_known():
    M = RationalSparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M) == 2
    assert kernel_dim(M) == 1


def test_rejects_floats():
    with pytest.raises(TypeError):
        RationalSparseMatrix.from_dense([[0.5]])


@given(dense_matrices())
def test_rank_matches_dense_oracle(data):
    rows, n = data
    M = RationalSparseMatrix.from_dense(rows, cols=n)
    assert rank(M) == dense_rank(rows)


@given(dense_matrices())
def test_rank_of_transpose(data):
    rows, n = data
    M = RationalSparseMatrix.from_dense(rows, cols=n)
    assert rank(M) == rank(M.T)


@given(dense_matrices())
def test_kernel_basis_is_a_basis_of_the_kernel(data):
    rows, n = data
    M = RationalSparseMatrix.from_dense(rows, cols=n)
    K = kernel_basis(M)
    assert len(K) == n - rank(M)
    for v in K:
        assert all(x == 0 for x in M.apply(v))
    assert span_dim(K, n) == len(K)


@given(dense_matrices())
def test_column_space_basis(data):
    rows, n = data
    M = RationalSparseMatrix.from_dense(rows, cols=n)
    B = column_space_basis(M)
    assert len(B) == rank(M)
    cols = [[r[j] for r in rows] for j in range(n)]
    assert span_dim(B + cols, len(rows)) == len(B)


@given(dense_matrices(5), dense_matrices(5))
def test_product_against_dense(a, b):
    ra, na = a
    rb, nb = b
    if na != len(rb):
        return
    A = RationalSparseMatrix.from_dense(ra, cols=na)
    B = RationalSparseMatrix.from_dense(rb, cols=nb)
    dense = [[sum(Fraction(ra[i][k]) * rb[k][j] for k in range(na)) for j in range(nb)] for i in range(len(ra))]
    assert (A @ B).to_dense() == dense
    assert rank(A @ B) <= min(rank(A), rank(B))


def test_block_matrix_layout():
    I = RationalSparseMatrix.identity(2)
    Z = RationalSparseMatrix.from_dense([[7], [8]])
    M = block_matrix([2], [2, 1], {(0, 0): I, (0, 1): Z})
    assert M.to_dense() == [[1, 0, 7], [0, 1, 8]]


def test_integral_fractions_normalize():
    M = RationalSparseMatrix.from_dense([[Fraction(4, 2), Fraction(1, 3)]])
    assert M[0, 0] == 2 and isinstance(M[0, 0], int)
    assert M.nnz == 2
