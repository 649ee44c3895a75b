# oracle.py
"""
Brute-force ground truth for enumeration and HN filtrations at desk scale.

Deliberately a different algorithm family from the main paths: box scans
instead of branch-and-bound, the wedge metric through the tensor-power
quotient instead of the Gram of minors, quotients as Schur complements of the
orthogonal projection, and threshold descent instead of radius doubling.
Single threaded.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, lcm, prod
from typing import List, Optional, Tuple

from hnlat import config, linalg
from hnlat.enumeration import ShortVecReport
from hnlat.errors import InputError, InvariantViolation, OracleRefusal
from hnlat.hermitian import HermSpace, wedge_metric_from_tensor
from hnlat.hn import HNFiltration, HNStep
from hnlat.lattice import ExpDegree, HermLattice, Sublattice, slope_cmp

logger = logging.getLogger(__name__)

MAX_RANK = 4
MAX_WEDGE_DIM = 20


@dataclass(frozen=True)
class BoxBound:
    """|v_i| <= bounds[i] for every vector of norm at most `norm`."""

    norm: Fraction
    bounds: Tuple[int, ...]

    @property
    def points(self) -> int:
        return prod(2 * m + 1 for m in self.bounds)

    def contains(self, v) -> bool:
        return all(abs(x) <= m for x, m in zip(v, self.bounds))


def box_bound(L: HermSpace, B: Fraction) -> BoxBound:
    """m_i = floor(sqrt(B·(H⁻¹)_ii)), by Cauchy-Schwarz against the dual Gram."""
    inv = linalg.inverse(L.gram)
    return BoxBound(Fraction(B), tuple(linalg.isqrt_floor(Fraction(B) * inv[i][i]) for i in range(L.dim)))


def _integral_gram(L: HermSpace) -> Tuple[List[List[int]], int]:
    scale = lcm(*(x.denominator for row in L.gram for x in row)) if L.dim else 1
    return [[int(x * scale) for x in row] for row in L.gram], scale


def naive_short_vectors(L: HermSpace, B: Fraction, max_points: Optional[int] = None) -> ShortVecReport:
    """Every nonzero vector up to sign with norm <= B, by scanning the whole box."""
    B = Fraction(B)
    if B < 0:
        raise InputError(f"Norm bound must be nonnegative, got {B}")
    box = box_bound(L, B)
    limit = max_points or config.HNLAT_ORACLE_MAX_POINTS
    if box.points > limit:
        raise OracleRefusal(f"Oracle box has {box.points} points, more than {limit}")
    G, scale = _integral_gram(L)
    cap = B * scale
    n = L.dim
    found = []
    for v in product(*(range(-m, m + 1) for m in box.bounds)):
        lead = next((x for x in v if x), 0)
        if lead <= 0:
            continue
        q = sum(v[i] * G[i][j] * v[j] for i in range(n) for j in range(n))
        if q <= cap:
            found.append((tuple(v), Fraction(q, scale)))
    found.sort(key=lambda item: (item[1], item[0]))
    return ShortVecReport(B, tuple(found), True, box.points)


def _sign_of(seq) -> int:
    # parity via cycle decomposition of the sorting permutation
    order = sorted(range(len(seq)), key=lambda k: seq[k])
    seen = [False] * len(seq)
    sign = 1
    for start in range(len(seq)):
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


def _annihilator(w, n: int, s: int) -> linalg.RatMat:
    """Rows spanning {v : v ∧ w = 0}."""
    source = linalg.subsets(n, s)
    target = linalg.subsets(n, s + 1)
    columns = []
    for T in target:
        column = [Fraction(0)] * n
        for i in T:
            S = tuple(j for j in T if j != i)
            coeff = w[source.index(S)]
            if coeff:
                column[i] += _sign_of((i,) + S) * coeff
        columns.append(column)
    return linalg.kernel(columns, n)


def naive_subs(E: HermLattice, s: int, D_min: Fraction,
               max_points: Optional[int] = None) -> List[Sublattice]:
    """Saturated rank-s sublattices with D >= D_min, by box scan in the exterior power."""
    n = E.rank
    if not 1 <= s < n:
        raise InputError(f"Sublattice rank {s} out of range 1..{n - 1}")
    if comb(n, s) > MAX_WEDGE_DIM:
        raise OracleRefusal(f"Wedge dimension {comb(n, s)} exceeds the oracle limit {MAX_WEDGE_DIM}")
    D_min = Fraction(D_min)
    if D_min <= 0:
        raise InputError(f"Degree threshold D_min must be positive, got {D_min}")
    W = wedge_metric_from_tensor(E.metric, s)
    report = naive_short_vectors(W, 1 / D_min, max_points)
    found = {}
    for w, norm in report.vectors:
        if linalg.content(w) != 1:
            continue
        rows = _annihilator(w, n, s)
        if len(rows) != s:
            continue
        F = Sublattice.from_rows([linalg.clear_denominators(r) for r in rows], n)
        found.setdefault(F, norm)
    return sorted(found, key=lambda F: (found[F], F.basis))


def _best_at_rank(E: HermLattice, s: int, max_points: Optional[int] = None) -> Tuple[ExpDegree, List[Sublattice]]:
    """Largest D among rank-s sublattices, found by lowering the threshold until something appears."""
    W = wedge_metric_from_tensor(E.metric, s)
    least_diagonal = min(W.gram[i][i] for i in range(W.dim))
    D_min = Fraction(64) / least_diagonal
    while True:
        subs = naive_subs(E, s, D_min, max_points)
        if subs:
            norms = {F: W.norm(linalg.to_rat([_plucker(F, E.rank)])[0]) for F in subs}
            best = min(norms.values())
            return ExpDegree(1 / best, s), [F for F in subs if norms[F] == best]
        D_min /= 4


def _plucker(F: Sublattice, n: int) -> List[Fraction]:
    return [linalg.det([[row[j] for j in S] for row in F.basis]) for S in linalg.subsets(n, F.rank)]


def _naive_max_destabilizing(E: HermLattice, max_points: Optional[int] = None) -> Tuple[Sublattice, ExpDegree]:
    n = E.rank
    candidates = [_best_at_rank(E, s, max_points) for s in range(1, n)]
    candidates.append((ExpDegree(1 / linalg.det(E.gram), n), [Sublattice.whole(n)]))
    top = candidates[0][0]
    for deg, _ in candidates:
        if slope_cmp(deg, top) > 0:
            top = deg
    best_rank = max(deg.rank for deg, _ in candidates if slope_cmp(deg, top) == 0)
    deg, subs = next(c for c in candidates if c[0].rank == best_rank)
    if len(subs) != 1:
        raise InvariantViolation(f"Oracle found {len(subs)} maximal destabilizing sublattices")
    return subs[0], deg


def _orthogonal_quotient(E: HermLattice, F: Sublattice) -> Tuple[HermLattice, List[List[int]]]:
    """E/F as the projection of E orthogonal to F, with integer rows lifting its basis.

    For rows K completing F's basis B, the Gram is the Schur complement
    K·H·Kᵀ - (K·H·Bᵀ)(B·H·Bᵀ)⁻¹(B·H·Kᵀ).
    """
    B = F.rows()
    K, _ = linalg.complete_basis(B, E.rank)
    H = E.gram
    cross = linalg.matmul(linalg.matmul(K, H), linalg.transpose(B))
    inner = linalg.inverse(linalg.matmul(linalg.matmul(B, H), linalg.transpose(B)))
    correction = linalg.matmul(linalg.matmul(cross, inner), linalg.transpose(cross))
    full = linalg.matmul(linalg.matmul(K, H), linalg.transpose(K))
    gram = [[a - b for a, b in zip(row, fix)] for row, fix in zip(full, correction)]
    return HermLattice.from_gram(gram), K


def _lift(F: Sublattice, K: List[List[int]], G: Sublattice) -> Sublattice:
    lifted = [[int(x) for x in row] for row in linalg.matmul(G.rows(), K)]
    return Sublattice.from_rows(F.rows() + lifted, F.ambient_rank)


def naive_hn(E: HermLattice, max_points: Optional[int] = None) -> HNFiltration:
    """HN filtration by exhaustive slope maximisation, recursing on quotients."""
    if E.rank > MAX_RANK:
        raise OracleRefusal(f"Oracle HN handles rank <= {MAX_RANK}, got {E.rank}")
    flt = HNFiltration(tuple(_naive_steps(E, max_points)))
    if not flt.is_concave():
        raise InvariantViolation(f"Oracle HN polygon is not concave: {flt.polygon()}")
    return flt


def _naive_steps(E: HermLattice, max_points: Optional[int]) -> List[HNStep]:
    E1, deg = _naive_max_destabilizing(E, max_points)
    if E1.rank == E.rank:
        return [HNStep(E1, deg)]
    Q, K = _orthogonal_quotient(E, E1)
    steps = [HNStep(E1, deg)]
    steps.extend(HNStep(_lift(E1, K, st.sublattice), st.quotient_degree) for st in _naive_steps(Q, max_points))
    return steps
