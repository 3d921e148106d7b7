from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from opk.exactlin import SparseMatrix, kernel_basis, rank, solve


def test_rank_empty_matrix():
    assert rank(SparseMatrix(0, 0)) == 0


def test_rank_identity():
    assert rank(SparseMatrix.identity(2)) == 2


def test_rank_dependent_rows():
    # [[1,2],[2,4]] has rank 1: row2 = 2*row1, checked by hand.
    m = SparseMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1


def test_kernel_identity_is_trivial():
    assert kernel_basis(SparseMatrix.identity(3)) == []


def test_kernel_zero_matrix_is_everything():
    vs = kernel_basis(SparseMatrix.zero(2, 3))
    assert len(vs) == 3


def test_kernel_single_equation():
    # x + y = 0 has solution line spanned by (1, -1).
    m = SparseMatrix.from_rows([[1, 1]])
    (v,) = kernel_basis(m)
    assert v[0] == -v[1] != 0


def test_solve_identity():
    m = SparseMatrix.identity(3)
    b = [Fraction(1), Fraction(2), Fraction(5, 7)]
    assert solve(m, b) == b


def test_solve_inconsistent():
    m = SparseMatrix.zero(2, 2)
    assert solve(m, [1, 0]) is None


def test_solve_scalar_division():
    m = SparseMatrix.from_rows([[2]])
    assert solve(m, [1]) == [Fraction(1, 2)]


def test_matmul_and_transpose():
    a = SparseMatrix.from_rows([[1, 2], [0, 1]])
    b = SparseMatrix.from_rows([[1, 0], [3, 1]])
    assert a.matmul(b) == SparseMatrix.from_rows([[7, 2], [3, 1]])
    assert a.transpose() == SparseMatrix.from_rows([[1, 0], [2, 1]])


@st.composite
def small_matrices(draw):
    rows = draw(st.integers(min_value=0, max_value=6))
    cols = draw(st.integers(min_value=0, max_value=6))
    entries = {}
    for i in range(rows):
        for j in range(cols):
            v = draw(st.integers(min_value=-3, max_value=3))
            if v:
                entries[(i, j)] = Fraction(v)
    return SparseMatrix(rows, cols, entries)


@given(small_matrices())
@settings(max_examples=120, deadline=None)
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(small_matrices())
@settings(max_examples=120, deadline=None)
def test_rank_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(small_matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m):
        assert m.mul_vec(v) == [Fraction(0)] * m.rows


@given(small_matrices(), st.data())
@settings(max_examples=100, deadline=None)
def test_solve_exact_on_consistent_systems(m, data):
    # Build b in the image so a solution must exist; solve must verify exactly.
    x = [
        Fraction(data.draw(st.integers(min_value=-3, max_value=3)))
        for _ in range(m.cols)
    ]
    b = m.mul_vec(x)
    got = solve(m, b)
    assert got is not None
    assert m.mul_vec(got) == b


def test_no_floats_accepted():
    with pytest.raises(TypeError):
        SparseMatrix(1, 1, {(0, 0): 0.5})
