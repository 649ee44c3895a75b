# test_hermitian.py
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnlat import hermitian, linalg
from hnlat.errors import InputError
from hnlat.hermitian import HermSpace, LinMap

from conftest import integer_grams, well_conditioned_grams


def test_from_gram_validation():
    with pytest.raises(InputError, match="not symmetric"):
        HermSpace.from_gram([[1, 2], [0, 1]])
    with pytest.raises(InputError, match="leading minor of size 2"):
        HermSpace.from_gram([[1, 2], [2, 1]])
    V = HermSpace.from_gram([["1/2", 0], [0, 3]])
    assert V.det() == Fraction(3, 2)
    assert V.norm([2, 1]) == 5


def test_submetric_and_injectivity():
    V = HermSpace.from_gram(linalg.identity(2))
    assert hermitian.submetric(V, LinMap([[1, 1]])).gram == ((2,),)
    with pytest.raises(InputError, match="not injective"):
        hermitian.submetric(V, LinMap([[1, 1], [2, 2]]))


def test_quotient_metric_of_diagonal():
    V = HermSpace.from_gram(linalg.identity(2))
    # Z² / Z(1, 1): the class of e₁ has shortest lift (1/2, -1/2)
    Q = hermitian.quotient_metric(V, LinMap([[1], [-1]]))
    assert Q.gram == ((Fraction(1, 2),),)
    with pytest.raises(InputError, match="not surjective"):
        hermitian.quotient_metric(V, LinMap([[0], [0]]))


@given(integer_grams(min_rank=2), st.data())
@settings(max_examples=40, deadline=None)
def test_quotient_metric_paths_agree(G, data):
    n = len(G)
    V = HermSpace.from_gram(G)
    k = data.draw(st.integers(1, n - 1))
    rows = [[data.draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(k)]
    if linalg.rank(rows) != k:
        return
    psi = LinMap(linalg.transpose(linalg.kernel(rows, n)))
    assert hermitian.quotient_metric(V, psi) == hermitian.quotient_metric_orthogonal(V, psi)


def test_dual_metric_and_extremal():
    V = HermSpace.from_gram([[1, 0], [0, 4]])
    dual = hermitian.dual_metric(V)
    assert dual.gram == ((1, 0), (0, Fraction(1, 4)))
    phi = [1, 1]
    x = hermitian.dual_extremal(V, phi)
    assert dual.norm(phi) * V.norm(x) == linalg.dot(phi, x) ** 2


def test_wedge_metric_known_values():
    V = HermSpace.from_gram([[1, 0], [0, 4]])
    assert hermitian.wedge_metric(V, 1) == V
    assert hermitian.wedge_metric(V, 2).gram == ((4,),)
    W = hermitian.wedge_metric(HermSpace.from_gram([[1, 0, 0], [0, 1, 0], [0, 0, 4]]), 2)
    assert W.gram == ((1, 0, 0), (0, 4, 0), (0, 0, 4))
    with pytest.raises(InputError):
        hermitian.wedge_metric(V, 3)


@given(well_conditioned_grams(max_rank=3), st.data())
@settings(max_examples=25, deadline=None)
def test_wedge_metric_normalization(G, data):
    V = HermSpace.from_gram(G)
    s = data.draw(st.integers(1, len(G)))
    assert hermitian.wedge_metric(V, s) == hermitian.wedge_metric_from_tensor(V, s)


@given(integer_grams(), st.data())
@settings(max_examples=40, deadline=None)
def test_wedge_norm_is_gram_determinant(G, data):
    n = len(G)
    V = HermSpace.from_gram(G)
    s = data.draw(st.integers(1, n))
    xs = [[data.draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(s)]
    gram_of_xs = linalg.matmul(linalg.matmul(xs, G), linalg.transpose(xs))
    W = hermitian.wedge_metric(V, s)
    assert W.norm(hermitian.plucker_vector(xs, n)) == linalg.det(gram_of_xs)


def test_plucker_vector_and_wedge_multiplication():
    assert hermitian.plucker_vector([[1, 0, 0], [0, 1, 0]], 3) == [1, 0, 0]
    assert hermitian.plucker_vector([[0, 1, 0], [1, 0, 0]], 3) == [-1, 0, 0]
    # v ∧ e₀∧e₁ only sees the e₂ coordinate of v
    M = hermitian.wedge_multiplication_matrix([1, 0, 0], 3, 2)
    assert M == [[0], [0], [1]]
    M = hermitian.wedge_multiplication_matrix([0, 1, 0], 3, 2)
    assert M == [[0], [-1], [0]]


def test_tensor_metric():
    U = HermSpace.from_gram([[2]])
    W = HermSpace.from_gram([[1, 0], [0, 3]])
    assert hermitian.tensor_metric(U, W).gram == ((2, 0), (0, 6))


def test_dominates():
    big = HermSpace.from_gram([[2, 0], [0, 2]])
    small = HermSpace.from_gram(linalg.identity(2))
    assert hermitian.dominates(big, small)
    assert hermitian.dominates(small, small)
    assert not hermitian.dominates(small, big)
    with pytest.raises(InputError):
        hermitian.dominates(big, HermSpace.from_gram([[1]]))
