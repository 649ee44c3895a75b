# test_linalg.py
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Matrix

from hnlat import linalg
from hnlat.errors import InputError

from conftest import integer_grams

small_ints = st.integers(-4, 4)


def square_matrices(n_min=1, n_max=3):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))


def test_det_known_values():
    assert linalg.det([[2, 1], [1, 3]]) == 5
    assert linalg.det([[2, 0, 1], [1, 3, 2], [1, 1, 2]]) == 6
    assert linalg.det([[0, 1], [1, 0]]) == -1
    assert linalg.det([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), 1]]) == Fraction(5, 12)
    assert linalg.det([[1, 2], [2, 4]]) == 0
    assert linalg.det([]) == 1


def test_det_rejects_non_square():
    with pytest.raises(InputError):
        linalg.det([[1, 2, 3], [4, 5, 6]])


@given(square_matrices(), square_matrices())
@settings(max_examples=60, deadline=None)
def test_det_is_multiplicative(A, B):
    assume(len(A) == len(B))
    assert linalg.det(linalg.matmul(A, B)) == linalg.det(A) * linalg.det(B)


@given(square_matrices())
@settings(max_examples=60, deadline=None)
def test_inverse_is_two_sided(M):
    assume(linalg.det(M) != 0)
    inv = linalg.inverse(M)
    n = len(M)
    assert linalg.matmul(M, inv) == linalg.identity(n)
    assert linalg.matmul(inv, M) == linalg.identity(n)


def test_inverse_of_singular_matrix():
    with pytest.raises(InputError, match="singular"):
        linalg.inverse([[1, 2], [2, 4]])


def test_kernel_and_solve_rows():
    K = linalg.kernel([[1, 1, 1]], 3)
    assert len(K) == 2
    for row in K:
        assert sum(row) == 0
    assert linalg.solve_rows([[1, 0, 1], [0, 1, 1]], [2, 3, 5]) == [2, 3]
    assert linalg.solve_rows([[1, 0, 1]], [0, 1, 0]) is None


def test_rank():
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert linalg.rank([]) == 0


def test_hnf_known_value():
    M = [[2, 4], [1, 3]]
    H, U = linalg.hnf(M)
    assert H == [[1, 1], [0, 2]]
    assert linalg.matmul(U, M) == H
    assert abs(linalg.det(U)) == 1


@given(st.integers(1, 4), st.integers(1, 4), st.data())
@settings(max_examples=60, deadline=None)
def test_hnf_shape(m, n, data):
    M = [[data.draw(small_ints) for _ in range(n)] for _ in range(m)]
    H, U = linalg.hnf(M)
    assert linalg.matmul(U, M) == H
    assert abs(linalg.det(U)) == 1
    basis = [row for row in H if any(row)]
    assert len(basis) == linalg.rank(M)
    # staircase with positive pivots and reduced entries above them
    last = -1
    for r, row in enumerate(basis):
        p = next(j for j, x in enumerate(row) if x)
        assert p > last and row[p] > 0
        for above in basis[:r]:
            assert 0 <= above[p] < row[p]
        last = p


def test_snf_diag():
    assert linalg.snf_diag([[2, 4], [6, 8]]) == [2, 4]
    assert linalg.snf_diag([[2, 0], [0, 3]]) == [1, 6]
    assert linalg.snf_diag([[1, 2], [2, 4]]) == [1, 0]
    assert linalg.snf_diag([[0, 0, 0]]) == [0]


@given(square_matrices(1, 3))
@settings(max_examples=60, deadline=None)
def test_snf_product_is_abs_det(M):
    divisors = linalg.snf_diag(M)
    product = 1
    for d in divisors:
        product *= d
    assert product == abs(linalg.det(M))
    for a, b in zip(divisors, divisors[1:]):
        if a:
            assert b % a == 0


def test_snf_diag_rectangular():
    assert linalg.snf_diag([[2, 4, 6], [4, 8, 14]]) == [2, 2]
    assert linalg.snf_diag([[6], [10]]) == [2]
    assert linalg.snf_diag([[4, 0, 0], [0, 6, 0], [0, 0, 10]]) == [2, 2, 60]
    assert linalg.snf_diag([]) == []


@given(square_matrices(1, 4))
@settings(max_examples=60, deadline=None)
def test_det_and_rank_match_dense_sympy(M):
    dense = Matrix(M)
    assert linalg.det(M) == Fraction(int(dense.det(method="bareiss")))
    assert linalg.rank(M) == dense.rank()


@given(square_matrices(1, 3), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_kernel_spans_nullspace(M, scale):
    scaled = [[Fraction(x, scale) for x in row] for row in M]
    K = linalg.kernel(scaled, len(M))
    assert len(K) == len(M) - linalg.rank(M)
    for x in K:
        assert all(linalg.dot(row, x) == 0 for row in scaled)


def test_integer_kernel_and_saturation():
    assert linalg.integer_kernel([[1, 1, 1]], 3) == [[1, 0, -1], [0, 1, -1]]
    assert linalg.saturate_rows([[2, 4]]) == [[1, 2]]
    assert linalg.saturate_rows([[2, 0], [0, 2]]) == [[1, 0], [0, 1]]
    assert linalg.saturate_rows([[0, 0]]) == []


def test_complete_basis():
    K, W = linalg.complete_basis([[1, 2]], 2)
    M = [[1, 2]] + K
    assert abs(linalg.det(M)) == 1
    assert linalg.matmul(M, W) == linalg.identity(2)


def test_complete_basis_rejects_unsaturated_rows():
    with pytest.raises(InputError):
        linalg.complete_basis([[2, 0]], 2)


@given(integer_grams())
@settings(max_examples=40, deadline=None)
def test_ldl_reconstructs(G):
    R, d = linalg.ldl(G)
    n = len(G)
    D = [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert linalg.matmul(linalg.matmul(linalg.transpose(R), D), R) == G
    assert all(R[i][i] == 1 for i in range(n))


def test_definiteness_diagnostics():
    assert linalg.is_psd([[1, 1], [1, 1]])
    assert not linalg.is_psd([[1, 2], [2, 1]])
    assert linalg.first_nonpositive_minor([[1, 2], [2, 1]]) == 2
    assert linalg.first_nonpositive_minor([[2, 1], [1, 2]]) is None
    with pytest.raises(InputError):
        linalg.ldl([[1, 2], [2, 1]])


def test_integer_roots():
    assert linalg.isqrt_floor(Fraction(9, 4)) == 1
    assert linalg.isqrt_floor(Fraction(17, 4)) == 2
    assert linalg.iroot_floor(26, 3) == 2
    assert linalg.iroot_floor(27, 3) == 3
    assert linalg.root_upper_bound(8, 3) == 2
    assert linalg.root_upper_bound(10, 2) == 4


@given(st.fractions(min_value=0, max_value=1000, max_denominator=50), st.integers(1, 4))
@settings(max_examples=100, deadline=None)
def test_root_upper_bound_is_an_upper_bound(x, k):
    r = linalg.root_upper_bound(x, k)
    assert r ** k >= x
    assert (r - Fraction(1, x.denominator)) ** k < x or r == 0


def test_content_and_primitivity():
    assert linalg.content([4, -6, 8]) == 2
    assert linalg.is_primitive([3, 5])
    assert linalg.clear_denominators([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]


def test_subsets_order():
    S = linalg.subsets(4, 2)
    assert len(S) == 6
    assert S[0] == (0, 1) and S[-1] == (2, 3)
