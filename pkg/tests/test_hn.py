# test_hn.py
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from hnlat import hn
from hnlat.enumeration import all_subs_with_deg_at_least
from hnlat.errors import InputError, InvariantViolation
from hnlat.hn import (
    HNFiltration,
    HNStep,
    check_max_slope_containment,
    check_max_slope_gap,
    graded_piece,
    graded_piece_grams,
    hn_filtration,
    is_semistable,
    max_destabilizing,
    max_slope_subs,
    verify_hn,
)
from hnlat.lattice import ExpDegree, HermLattice, Sublattice, change_basis, degree_of_sub, transform_sublattice

from conftest import well_conditioned_grams

E1 = Sublattice(2, ((1, 0),))
PLANE = Sublattice(3, ((1, 0, 0), (0, 1, 0)))


def test_semistability_verdicts(identity2, diag14, hexagonal):
    assert is_semistable(identity2).semistable is True
    assert is_semistable(hexagonal).semistable is True
    report = is_semistable(diag14)
    assert report.semistable is False
    assert report.witness == E1
    assert report.witness_degree == ExpDegree(1, 1)
    assert report.slope_E == ExpDegree(Fraction(1, 4), 2)


def test_rank_one_is_semistable():
    report = is_semistable(HermLattice.from_gram([[7]]))
    assert report.semistable is True
    assert report.conclusive


def test_max_slope_subs(diag119):
    result = max_slope_subs(diag119)
    assert result.slope == ExpDegree(1, 2)
    assert set(result.subs) == {
        Sublattice(3, ((1, 0, 0),)),
        Sublattice(3, ((0, 1, 0),)),
        PLANE,
    }
    assert max_destabilizing(diag119) == PLANE


def test_hn_of_diagonal(diag14):
    flt = hn_filtration(diag14)
    assert flt.length == 2
    assert flt.steps[0] == HNStep(E1, ExpDegree(1, 1))
    assert flt.steps[1] == HNStep(Sublattice.whole(2), ExpDegree(Fraction(1, 4), 1))
    assert flt.mu_max == ExpDegree(1, 1)
    assert flt.mu_min == ExpDegree(Fraction(1, 4), 1)
    assert flt.polygon() == [(0, 1), (1, 1), (2, Fraction(1, 4))]


def test_hn_of_semistable_lattice(identity3, hexagonal):
    assert hn_filtration(identity3).steps == (HNStep(Sublattice.whole(3), ExpDegree(1, 3)),)
    assert hn_filtration(hexagonal).length == 1


def test_hn_first_step_is_a_plane(diag119):
    flt = hn_filtration(diag119)
    assert [step.sublattice for step in flt.steps] == [PLANE, Sublattice.whole(3)]
    assert [step.quotient_degree for step in flt.steps] == [ExpDegree(1, 2), ExpDegree(Fraction(1, 9), 1)]


def test_verify_hn_rejects_wrong_filtrations(diag14):
    trivial = HNFiltration((HNStep(Sublattice.whole(2), ExpDegree(Fraction(1, 4), 2)),))
    report = verify_hn(diag14, trivial)
    assert not report.passed
    failed = {d["condition"] for d in report.details if not d["passed"]}
    assert failed == {"semistable_pieces"}

    wrong_degree = HNFiltration((HNStep(E1, ExpDegree(2, 1)), HNStep(Sublattice.whole(2), ExpDegree(Fraction(1, 4), 1))))
    report = verify_hn(diag14, wrong_degree)
    failed = {d["condition"] for d in report.details if not d["passed"]}
    assert {"quotient_degrees", "degree_product"} <= failed


def test_graded_piece(diag14, diag119):
    assert graded_piece(diag14, E1, Sublattice.whole(2)).gram == ((4,),)
    assert graded_piece(diag119, None, PLANE).gram == ((1, 0), (0, 1))


@given(well_conditioned_grams(min_rank=2))
@settings(max_examples=15, deadline=None)
def test_hn_verifies_on_random_lattices(G):
    E = HermLattice.from_gram(G)
    flt = hn_filtration(E)
    assert verify_hn(E, flt).passed
    lower = None
    for step in flt.steps:
        first, second = graded_piece_grams(E, lower, step.sublattice)
        assert first == second
        lower = step.sublattice


@given(well_conditioned_grams(min_rank=2))
@settings(max_examples=10, deadline=None)
def test_hn_is_basis_independent(G):
    E = HermLattice.from_gram(G)
    U = [[1, 1, 0], [0, 1, 0], [0, 0, 1]][:E.rank]
    U = [row[:E.rank] for row in U]
    moved = hn_filtration(change_basis(E, U))
    base = hn_filtration(E)
    assert [s.sublattice for s in moved.steps] == [transform_sublattice(s.sublattice, U) for s in base.steps]
    assert moved.slopes == base.slopes


def test_max_slope_gap(diag14, identity2):
    assert check_max_slope_gap(diag14).passed
    with pytest.raises(InputError):
        check_max_slope_gap(identity2)


def test_max_slope_containment(diag119, identity3):
    assert check_max_slope_containment(diag119).passed
    assert check_max_slope_containment(identity3).passed


def test_verify_hn_rejects_flag_of_equal_slopes(identity2):
    flag = HNFiltration((HNStep(E1, ExpDegree(1, 1)), HNStep(Sublattice.whole(2), ExpDegree(1, 1))))
    assert flag.is_concave()
    report = verify_hn(identity2, flag)
    assert not report.passed
    failed = {d["condition"] for d in report.details if not d["passed"]}
    assert failed == {"slopes_decreasing"}


def test_verify_hn_rejects_swapped_steps():
    E = HermLattice.from_gram([[1, 0, 0], [0, 4, 0], [0, 0, 16]])
    line = Sublattice(3, ((1, 0, 0),))
    plane = Sublattice(3, ((1, 0, 0), (0, 1, 0)))
    first, second, third = ExpDegree(1, 1), ExpDegree(Fraction(1, 4), 1), ExpDegree(Fraction(1, 16), 1)
    flt = hn_filtration(E)
    assert flt.steps == (HNStep(line, first), HNStep(plane, second), HNStep(Sublattice.whole(3), third))
    assert verify_hn(E, flt).passed

    swapped = HNFiltration((HNStep(plane, second), HNStep(line, first), HNStep(Sublattice.whole(3), third)))
    assert not swapped.is_concave()
    failed = {d["condition"] for d in verify_hn(E, swapped).details if not d["passed"]}
    assert {"chain", "slopes_decreasing"} <= failed

    relabeled = HNFiltration((HNStep(line, second), HNStep(plane, first), HNStep(Sublattice.whole(3), third)))
    failed = {d["condition"] for d in verify_hn(E, relabeled).details if not d["passed"]}
    assert {"quotient_degrees", "slopes_decreasing"} <= failed
    assert "chain" not in failed


def test_hn_filtration_refuses_a_non_concave_polygon(monkeypatch, diag14):
    steps = [HNStep(E1, ExpDegree(Fraction(1, 4), 1)), HNStep(Sublattice.whole(2), ExpDegree(1, 1))]
    monkeypatch.setattr(hn, "_hn_steps", lambda E, cfg: steps)
    with pytest.raises(InvariantViolation, match="concave"):
        hn_filtration(diag14)


def test_polygon_vertices(diag14, diag119):
    vertices = hn_filtration(diag14).polygon()
    assert [v.rank for v in vertices] == [0, 1, 2]
    assert vertices[1].log_value() == 0
    assert vertices[2].log_value() == pytest.approx(-math.log(2))

    flt = hn_filtration(diag119)
    assert flt.polygon() == [(0, 1), (2, 1), (3, Fraction(1, 9))]
    assert flt.lies_below(1, 1)
    assert not flt.lies_below(1, Fraction(11, 10))
    assert flt.lies_below(3, Fraction(1, 9))
    assert not flt.lies_below(3, Fraction(1, 8))
    with pytest.raises(InputError):
        flt.lies_below(4, 1)


def test_polygon_interpolates_between_vertices():
    # vertices (0, 1), (2, 1/4): the polygon passes through D = 1/2 at rank 1
    flt = HNFiltration((HNStep(Sublattice.whole(2), ExpDegree(Fraction(1, 4), 2)),))
    assert flt.lies_below(1, Fraction(1, 2))
    assert not flt.lies_below(1, Fraction(51, 100))


@given(well_conditioned_grams(min_rank=2))
@settings(max_examples=15, deadline=None)
def test_every_sublattice_lies_below_the_polygon(G):
    E = HermLattice.from_gram(G)
    flt = hn_filtration(E)
    assert flt.is_concave()
    found = all_subs_with_deg_at_least(E, min(v.D for v in flt.polygon()))
    for s, subs in found.items():
        for F in subs:
            assert flt.lies_below(s, degree_of_sub(E, F).D)
