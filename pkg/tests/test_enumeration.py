# test_enumeration.py
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnlat import linalg
from hnlat.enumeration import (
    EnumConfig,
    all_subs_with_deg_at_least,
    decomposable_recover,
    rank1_subs_with_deg_at_least,
    ranked_subs_with_deg_at_least,
    short_vectors,
)
from hnlat.errors import EnumerationIncomplete, InputError
from hnlat.hermitian import plucker_vector
from hnlat.lattice import HermLattice, Sublattice, degree_of_sub
from hnlat.oracle import naive_short_vectors

from conftest import well_conditioned_grams


def test_short_vectors_of_square_lattice(identity2):
    report = short_vectors(identity2.metric, 1)
    assert report.complete
    assert report.vectors == (((0, 1), 1), ((1, 0), 1))
    report = short_vectors(identity2.metric, 2)
    assert [v for v, _ in report.vectors] == [(0, 1), (1, 0), (1, -1), (1, 1)]


def test_short_vectors_edge_cases(identity2):
    assert short_vectors(identity2.metric, 0).vectors == ()
    assert short_vectors(identity2.metric, Fraction(1, 2)).vectors == ()
    with pytest.raises(InputError):
        short_vectors(identity2.metric, -1)


def test_short_vectors_of_rectangular_lattice(diag14):
    report = short_vectors(diag14.metric, 4)
    assert report.complete
    assert report.vectors == (((1, 0), 1), ((0, 1), 4), ((2, 0), 4))
    assert short_vectors(diag14.metric, 4, EnumConfig(parallel=True, threads=3)) == report


def test_short_vectors_sign_normalized(hexagonal):
    report = short_vectors(hexagonal.metric, 2)
    vectors = [v for v, _ in report.vectors]
    # the six minimal vectors of A2, one per ± pair
    assert len(vectors) == 3
    for v in vectors:
        assert next(x for x in v if x) > 0
        assert hexagonal.metric.norm(v) == 2


@given(well_conditioned_grams(), st.integers(0, 12))
@settings(max_examples=40, deadline=None)
def test_short_vectors_match_box_scan(G, bound):
    L = HermLattice.from_gram(G).metric
    assert short_vectors(L, bound).vectors == naive_short_vectors(L, bound).vectors


@given(well_conditioned_grams(min_rank=2), st.integers(1, 10))
@settings(max_examples=25, deadline=None)
def test_parallel_search_is_deterministic(G, bound):
    L = HermLattice.from_gram(G).metric
    serial = short_vectors(L, bound, EnumConfig())
    parallel = short_vectors(L, bound, EnumConfig(parallel=True, threads=4))
    assert serial == parallel


def test_node_cap_marks_result_incomplete(identity3):
    report = short_vectors(identity3.metric, 9, EnumConfig(max_candidates=5))
    assert not report.complete
    with pytest.raises(InputError):
        EnumConfig(max_candidates=0)


def test_rank1_subs(identity2, diag14):
    subs = rank1_subs_with_deg_at_least(identity2, 1)
    assert subs == [Sublattice(2, ((0, 1),)), Sublattice(2, ((1, 0),))]
    assert rank1_subs_with_deg_at_least(diag14, Fraction(1, 4)) == [
        Sublattice(2, ((1, 0),)), Sublattice(2, ((0, 1),))]
    assert rank1_subs_with_deg_at_least(identity2, 1000000) == []
    with pytest.raises(InputError):
        rank1_subs_with_deg_at_least(identity2, 0)


def test_rank1_subs_skip_imprimitive_vectors(identity2):
    # (2, 0) has norm 4 but spans the same line as (1, 0)
    subs = rank1_subs_with_deg_at_least(identity2, Fraction(1, 4))
    assert all(linalg.is_primitive(F.basis[0]) for F in subs)
    assert len(subs) == len(set(subs))


def test_ranked_subs_plane(diag119):
    diag114 = HermLattice.from_gram([[1, 0, 0], [0, 1, 0], [0, 0, 4]])
    subs = ranked_subs_with_deg_at_least(diag114, 2, 1)
    assert subs == [Sublattice(3, ((1, 0, 0), (0, 1, 0)))]
    subs = ranked_subs_with_deg_at_least(diag119, 2, Fraction(1, 9))
    assert subs[0] == Sublattice(3, ((1, 0, 0), (0, 1, 0)))
    for F in subs:
        assert degree_of_sub(diag119, F).D >= Fraction(1, 9)
    with pytest.raises(InputError):
        ranked_subs_with_deg_at_least(diag119, 3, 1)


def test_decomposable_recover(identity3):
    F = decomposable_recover(identity3, 2, [1, 1, 1])
    assert F is not None and F.rank == 2
    lam = plucker_vector(F.basis, 3)
    assert lam == [1, 1, 1] or lam == [-1, -1, -1]
    E4 = HermLattice.from_gram(linalg.identity(4))
    # e₀∧e₁ + e₂∧e₃ is not a pure wedge
    assert decomposable_recover(E4, 2, [1, 0, 0, 0, 0, 1]) is None
    with pytest.raises(InputError):
        decomposable_recover(identity3, 2, [0, 0, 0])


def test_all_subs(identity2):
    found = all_subs_with_deg_at_least(identity2, 1)
    assert found == {
        1: [Sublattice(2, ((0, 1),)), Sublattice(2, ((1, 0),))],
        2: [Sublattice.whole(2)],
    }
    assert all_subs_with_deg_at_least(identity2, 1000000) == {1: [], 2: []}


def test_enumeration_incomplete_carries_partial(identity3):
    with pytest.raises(EnumerationIncomplete) as info:
        all_subs_with_deg_at_least(identity3, Fraction(1, 9), EnumConfig(max_candidates=3))
    assert isinstance(info.value.partial, dict)
    assert set(info.value.partial) == {1, 2, 3}
