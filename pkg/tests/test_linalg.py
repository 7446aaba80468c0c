import pytest
from hypothesis import given, settings, strategies as st

from sandpiles.linalg import (
    IntMatrix,
    det,
    det_dense,
    invariant_factors,
    smith_normal_form,
)
from sandpiles.linalg import _det_sparse_symmetric, _ZeroPivot

from .oracles import det_gauss_fractions, det_leibniz, snf_diagonal_naive

entries = st.integers(min_value=-30, max_value=30)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n),
                    min_size=n, max_size=n)


any_square = st.integers(min_value=1, max_value=5).flatmap(square)


def _mirror_upper(rows):
    n = len(rows)
    return [[rows[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]


any_symmetric = any_square.map(_mirror_upper)


# ----------------------------------------------------------------------
# IntMatrix
# ----------------------------------------------------------------------

def test_matrix_validation():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(TypeError):
        IntMatrix([[1.5]])


def test_matrix_basics():
    m = IntMatrix([[1, 2], [3, 4]])
    assert m.rows == m.cols == 2
    assert m.row(1) == (3, 4)
    assert m.transpose().tolists() == [[1, 3], [2, 4]]
    assert (m @ IntMatrix.identity(2)) == m
    assert IntMatrix.diagonal([2, 5]).is_diagonal()
    assert not m.is_symmetric()
    assert IntMatrix([[1, 7], [7, 0]]).is_symmetric()


def test_matmul_shape_mismatch():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2]]) @ IntMatrix([[1, 2]])


# ----------------------------------------------------------------------
# determinants
# ----------------------------------------------------------------------

def test_det_frozen_values():
    assert det_dense(IntMatrix([[-3]])) == -3
    assert det_dense(IntMatrix([[-3, 1, 1], [1, -3, 0], [1, 0, -3]])) == -21
    assert det_dense(IntMatrix([[-3, 1, 1], [1, -4, 0], [1, 0, -4]])) == -40
    assert det_dense(IntMatrix([[1, 2], [2, 4]])) == 0
    assert det_dense(IntMatrix([[0, 0], [0, 0]])) == 0


def test_det_empty_matrix():
    assert det_dense(IntMatrix([])) == 1


@settings(max_examples=200)
@given(any_square)
def test_det_dense_matches_oracles(rows):
    m = IntMatrix(rows)
    expected = det_leibniz(rows)
    assert det_dense(m) == expected
    assert det_gauss_fractions(rows) == expected


@settings(max_examples=150)
@given(any_symmetric)
def test_det_sparse_symmetric_matches_dense(rows):
    m = IntMatrix(rows)
    reference = det_dense(m)
    try:
        assert _det_sparse_symmetric(m) == reference
    except _ZeroPivot:
        # the sparse route declines structurally-awkward pivots; the
        # public entry point must still answer via the dense fallback
        pass
    assert det(m) == reference


@settings(max_examples=100)
@given(any_square)
def test_det_transpose_invariant(rows):
    m = IntMatrix(rows)
    assert det_dense(m) == det_dense(m.transpose())


@settings(max_examples=60)
@given(square(3), square(3))
def test_det_multiplicative(a, b):
    ma, mb = IntMatrix(a), IntMatrix(b)
    assert det_dense(ma @ mb) == det_dense(ma) * det_dense(mb)


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------

def test_snf_frozen_tree_case():
    lap = IntMatrix([
        [-3, 1, 1, 0, 0, 0, 0],
        [1, -3, 0, 1, 1, 0, 0],
        [1, 0, -3, 0, 0, 1, 1],
        [0, 1, 0, -3, 0, 0, 0],
        [0, 1, 0, 0, -3, 0, 0],
        [0, 0, 1, 0, 0, -3, 0],
        [0, 0, 1, 0, 0, 0, -3],
    ])
    d, u, v = smith_normal_form(lap)
    assert d.diagonal_entries() == (1, 1, 1, 1, 3, 3, 105)
    assert (u @ lap @ v) == d
    assert invariant_factors(lap) == (3, 3, 105)


def test_snf_zero_and_identity():
    d, _, _ = smith_normal_form(IntMatrix.zeros(2, 3))
    assert d.diagonal_entries() == (0, 0)
    assert invariant_factors(IntMatrix.identity(4)) == ()


rect = st.tuples(
    st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=5)
).flatmap(lambda rc: st.lists(
    st.lists(entries, min_size=rc[1], max_size=rc[1]),
    min_size=rc[0], max_size=rc[0]))


@settings(max_examples=200, deadline=None)
@given(rect)
def test_snf_matches_naive_diagonal(rows):
    m = IntMatrix(rows)
    d, u, v = smith_normal_form(m)
    assert list(d.diagonal_entries()) == snf_diagonal_naive(rows)
    assert (u @ m @ v) == d
    assert abs(det_dense(u)) == 1
    assert abs(det_dense(v)) == 1


@settings(max_examples=100)
@given(any_square)
def test_snf_det_consistency(rows):
    # |det| equals the product of the diagonal for square matrices
    m = IntMatrix(rows)
    d, _, _ = smith_normal_form(m)
    prod = 1
    for x in d.diagonal_entries():
        prod *= x
    assert prod == abs(det_dense(m))
