# hn.py
"""
Semistability, maximal slope sublattices and the Harder-Narasimhan filtration.

All slope comparisons are exact (see lattice.slope_cmp). A rank-s sublattice
F destabilizes E of rank n exactly when its wedge norm N = 1/D_F satisfies
N^n < det(H)^s.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from hnlat import linalg
from hnlat.enumeration import EnumConfig, decomposable_recover, short_vectors
from hnlat.errors import EnumerationIncomplete, HnlatError, InputError, InvariantViolation
from hnlat.hermitian import HermSpace, LinMap, quotient_metric, submetric, wedge_metric
from hnlat.lattice import (
    ExpDegree,
    HermLattice,
    Sublattice,
    combine,
    contains,
    degree,
    degree_of_sub,
    pullback,
    quotient_lattice,
    slope_cmp,
)

logger = logging.getLogger(__name__)

# first search radius is the seed norm divided by this, then doubled
_RADIUS_SHRINK = 16


@dataclass(frozen=True)
class HNStep:
    sublattice: Sublattice
    quotient_degree: ExpDegree


@dataclass(frozen=True)
class HNFiltration:
    """0 = E₀ ⊊ E₁ ⊊ ... ⊊ E_l = E, each step with the degree of E_i/E_{i-1}."""

    steps: Tuple[HNStep, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def slopes(self) -> List[ExpDegree]:
        return [step.quotient_degree for step in self.steps]

    @property
    def mu_max(self) -> ExpDegree:
        return self.steps[0].quotient_degree

    @property
    def mu_min(self) -> ExpDegree:
        return self.steps[-1].quotient_degree

    def polygon(self) -> List["PolygonVertex"]:
        """Vertices (cumulative rank, cumulative D) starting at (0, 1)."""
        vertices = [PolygonVertex(0, Fraction(1))]
        for step in self.steps:
            r, D = vertices[-1]
            vertices.append(PolygonVertex(r + step.quotient_degree.rank, D * step.quotient_degree.D))
        return vertices

    def is_concave(self) -> bool:
        slopes = self.slopes
        return all(slope_cmp(a, b) >= 0 for a, b in zip(slopes, slopes[1:]))

    def lies_below(self, rank: int, D: Fraction) -> bool:
        """Whether (rank, ½·log D) is on or below the polygon.

        On the segment from (r0, D0) to (r1, D1) the test is
        D^(r1-r0) <= D0^(r1-rank) · D1^(rank-r0), all in exact rationals.
        """
        vertices = self.polygon()
        if not 0 <= rank <= vertices[-1].rank:
            raise InputError(f"Rank {rank} outside the polygon range 0..{vertices[-1].rank}")
        D = Fraction(D)
        for (r0, D0), (r1, D1) in zip(vertices, vertices[1:]):
            if r0 <= rank <= r1:
                return D ** (r1 - r0) <= D0 ** (r1 - rank) * D1 ** (rank - r0)
        return D <= 1


class PolygonVertex(NamedTuple):
    rank: int
    D: Fraction

    def log_value(self) -> float:
        """Approximate cumulative degree ½·log D. Advisory only."""
        return 0.5 * (math.log(self.D.numerator) - math.log(self.D.denominator))


@dataclass(frozen=True)
class SemistabilityReport:
    """`semistable` is None when the search hit its node cap without finding a witness."""

    semistable: Optional[bool]
    witness: Optional[Sublattice]
    slope_E: ExpDegree
    witness_degree: Optional[ExpDegree] = None

    @property
    def conclusive(self) -> bool:
        return self.semistable is not None


@dataclass(frozen=True)
class MaxSlope:
    slope: ExpDegree
    subs: Tuple[Sublattice, ...]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a named check; `details` lists one entry per case examined."""

    name: str
    passed: bool
    details: Tuple[Dict[str, object], ...] = field(default=())


def _wedge_space(E: HermLattice, s: int) -> HermSpace:
    return E.metric if s == 1 else wedge_metric(E.metric, s)


def _recover(E: HermLattice, s: int, w) -> Optional[Sublattice]:
    if s == 1:
        return Sublattice(E.rank, (tuple(w),))
    return decomposable_recover(E, s, w)


def is_semistable(E: HermLattice, cfg: Optional[EnumConfig] = None) -> SemistabilityReport:
    """Search every rank for a saturated sublattice of slope above slope(E)."""
    n = E.rank
    slope_E = degree(E)
    if n == 1:
        return SemistabilityReport(True, None, slope_E)
    det_E = E.metric.det()
    best: Optional[Tuple[Sublattice, ExpDegree]] = None
    inconclusive = False
    for s in range(1, n):
        limit = det_E ** s
        # every destabilizing wedge norm N has N^n < det^s, hence N <= bound
        bound = linalg.root_upper_bound(limit, n)
        report = short_vectors(_wedge_space(E, s), bound, cfg)
        for w, norm in report.vectors:
            if norm ** n >= limit:
                break
            if not linalg.is_primitive(w):
                continue
            F = _recover(E, s, w)
            if F is None:
                continue
            deg_F = ExpDegree(1 / norm, s)
            if best is None or slope_cmp(deg_F, best[1]) > 0:
                best = (F, deg_F)
            break
        if not report.complete:
            inconclusive = True
    if best is not None:
        return SemistabilityReport(False, best[0], slope_E, best[1])
    if inconclusive:
        logger.warning("Semistability search hit the node cap; result is inconclusive")
        return SemistabilityReport(None, None, slope_E)
    return SemistabilityReport(True, None, slope_E)


def _min_norm_subs(E: HermLattice, s: int, cfg: Optional[EnumConfig]) -> Tuple[Fraction, List[Sublattice]]:
    """Least wedge norm of a rank-s saturated sublattice and all sublattices attaining it."""
    W = _wedge_space(E, s)
    # coordinate subspaces are saturated, so the least diagonal entry is attained
    seed = min(W.gram[i][i] for i in range(W.dim))
    bound = seed / _RADIUS_SHRINK
    while True:
        bound = min(bound, seed)
        report = short_vectors(W, bound, cfg)
        if not report.complete:
            raise EnumerationIncomplete(f"Maximal slope search at rank {s} hit the node cap (bound {bound})")
        hits: List[Tuple[Fraction, Sublattice]] = []
        for w, norm in report.vectors:
            if hits and norm > hits[0][0]:
                break
            if not linalg.is_primitive(w):
                continue
            F = _recover(E, s, w)
            if F is not None:
                hits.append((norm, F))
        if hits:
            logger.debug(f"rank {s}: minimal wedge norm {hits[0][0]} at bound {bound}")
            return hits[0][0], sorted({F for _, F in hits})
        bound *= 2


def max_slope_subs(E: HermLattice, cfg: Optional[EnumConfig] = None) -> MaxSlope:
    """The maximal slope over all nonzero saturated sublattices and every sublattice attaining it."""
    n = E.rank
    per_rank: List[Tuple[ExpDegree, List[Sublattice]]] = []
    for s in range(1, n):
        norm, subs = _min_norm_subs(E, s, cfg)
        per_rank.append((ExpDegree(1 / norm, s), subs))
    per_rank.append((degree(E), [Sublattice.whole(n)]))

    top = per_rank[0][0]
    for deg, _ in per_rank[1:]:
        if slope_cmp(deg, top) > 0:
            top = deg
    attaining = [F for deg, subs in per_rank if slope_cmp(deg, top) == 0 for F in subs]
    representative = max((deg for deg, _ in per_rank if slope_cmp(deg, top) == 0), key=lambda d: d.rank)
    return MaxSlope(representative, tuple(sorted(attaining, key=lambda F: (F.rank, F.basis))))


def max_destabilizing(E: HermLattice, cfg: Optional[EnumConfig] = None) -> Sublattice:
    """The maximal slope sublattice of largest rank."""
    result = max_slope_subs(E, cfg)
    top_rank = max(F.rank for F in result.subs)
    candidates = [F for F in result.subs if F.rank == top_rank]
    if len(candidates) > 1:
        raise InvariantViolation(
            f"Maximal destabilizing sublattice is not unique: {[F.basis for F in candidates]}")
    return candidates[0]


def _hn_steps(E: HermLattice, cfg: Optional[EnumConfig]) -> List[HNStep]:
    E1 = max_destabilizing(E, cfg)
    if E1.rank == E.rank:
        return [HNStep(E1, degree(E))]
    logger.debug(f"HN step: rank {E1.rank} of {E.rank}, basis {E1.basis}")
    Q, _ = quotient_lattice(E, E1)
    rest = _hn_steps(Q, cfg)
    steps = [HNStep(E1, degree_of_sub(E, E1))]
    for step in rest:
        steps.append(HNStep(pullback(E, E1, step.sublattice), step.quotient_degree))
    return steps


def hn_filtration(E: HermLattice, cfg: Optional[EnumConfig] = None) -> HNFiltration:
    """The Harder-Narasimhan filtration, built greedily from maximal destabilizing sublattices."""
    flt = HNFiltration(tuple(_hn_steps(E, cfg)))
    if not flt.is_concave():
        raise InvariantViolation(f"HN polygon is not concave: {flt.polygon()}")
    report = verify_hn(E, flt, cfg)
    if not report.passed:
        failed = [d for d in report.details if not d["passed"]]
        raise InvariantViolation(f"Constructed filtration fails verification: {failed}")
    return flt


def graded_piece_grams(E: HermLattice, lower: Optional[Sublattice],
                       upper: Sublattice) -> Tuple[HermSpace, HermSpace]:
    """Metric of upper/lower computed two ways, in the same basis.

    First: submetric on `upper`, then quotient by `lower`. Second: quotient
    metric on E/lower, then submetric on the image of `upper`.
    """
    if lower is None:
        gram = submetric(E.metric, LinMap(upper.basis))
        return gram, gram
    n = E.rank
    Q, proj = quotient_lattice(E, lower)
    image = [[int(x) for x in proj.apply(row)] for row in upper.basis]
    G = Sublattice.from_rows(image, n - lower.rank)
    K, _ = linalg.complete_basis(lower.rows(), n)
    complement = [[int(x) for x in row] for row in linalg.matmul(G.rows(), K)]
    k, g = lower.rank, G.rank
    upper_gram = submetric(E.metric, LinMap(lower.rows() + complement))
    to_piece = [[0] * g for _ in range(k)] + linalg.identity(g)
    first = quotient_metric(upper_gram, LinMap(to_piece))
    second = submetric(Q.metric, LinMap(G.rows()))
    return first, second


def graded_piece(E: HermLattice, lower: Optional[Sublattice], upper: Sublattice) -> HermLattice:
    """E_i/E_{i-1} with its induced metric."""
    return HermLattice(graded_piece_grams(E, lower, upper)[1])


def verify_hn(E: HermLattice, flt: HNFiltration, cfg: Optional[EnumConfig] = None) -> CheckReport:
    """Re-check every defining condition of an HN filtration; failures are reported, not raised."""
    details: List[Dict[str, object]] = []

    def record(condition: str, ok: bool, note: str = ""):
        details.append({"condition": condition, "passed": bool(ok), "note": note})

    subs = [step.sublattice for step in flt.steps]
    ranks = [F.rank for F in subs]
    chain_ok = (
        bool(subs)
        and all(F.ambient_rank == E.rank for F in subs)
        and subs[-1].rank == E.rank
        and all(a < b for a, b in zip(ranks, ranks[1:]))
        and all(contains(b, a) for a, b in zip(subs, subs[1:]))
    )
    record("chain", chain_ok, f"ranks {ranks}")
    record("torsion_free", all(F.is_canonical() for F in subs))

    metric_ok, semistable_ok, degrees_ok = chain_ok, chain_ok, chain_ok
    notes = []
    if chain_ok:
        lower = None
        for step in flt.steps:
            try:
                first, second = graded_piece_grams(E, lower, step.sublattice)
            except HnlatError as e:
                metric_ok = semistable_ok = degrees_ok = False
                notes.append(str(e))
                break
            if first.gram != second.gram:
                metric_ok = False
            piece = HermLattice(second)
            if degree(piece) != step.quotient_degree:
                degrees_ok = False
            verdict = is_semistable(piece, cfg)
            if verdict.semistable is not True:
                semistable_ok = False
                notes.append(f"piece of rank {piece.rank}: semistable={verdict.semistable}")
            lower = step.sublattice
    record("metric_identity", metric_ok)
    record("quotient_degrees", degrees_ok)
    record("semistable_pieces", semistable_ok, "; ".join(notes))

    slopes = flt.slopes
    record("slopes_decreasing", all(slope_cmp(a, b) > 0 for a, b in zip(slopes, slopes[1:])))

    total = slopes[0] if slopes else None
    for deg in slopes[1:]:
        total = combine(total, deg)
    record("degree_product", total is not None and total == degree(E))

    return CheckReport("verify_hn", all(d["passed"] for d in details), tuple(details))


def check_max_slope_gap(E: HermLattice, cfg: Optional[EnumConfig] = None) -> CheckReport:
    """For every maximal slope F of a non-semistable E: slope(F) > slope(E/F)."""
    verdict = is_semistable(E, cfg)
    if verdict.semistable is not False:
        raise InputError("The maximal slope gap is only defined for lattices that are not semistable")
    details = []
    for F in max_slope_subs(E, cfg).subs:
        Q, _ = quotient_lattice(E, F)
        ok = slope_cmp(degree_of_sub(E, F), degree(Q)) > 0
        details.append({"sublattice": [list(r) for r in F.basis], "passed": ok})
    return CheckReport("max_slope_gap", all(d["passed"] for d in details), tuple(details))


def check_max_slope_containment(E: HermLattice, cfg: Optional[EnumConfig] = None) -> CheckReport:
    """Every maximal slope sublattice lies in E₁ and has the slope of E₁."""
    E1 = hn_filtration(E, cfg).steps[0].sublattice
    deg_E1 = degree_of_sub(E, E1)
    details = []
    for F in max_slope_subs(E, cfg).subs:
        ok = contains(E1, F) and slope_cmp(degree_of_sub(E, F), deg_E1) == 0
        details.append({"sublattice": [list(r) for r in F.basis], "passed": ok})
    return CheckReport("max_slope_containment", all(d["passed"] for d in details), tuple(details))
