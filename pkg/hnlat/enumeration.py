# enumeration.py
"""
Finite enumeration of short lattice vectors and of saturated sublattices of
bounded degree.

Rank-s sublattices are found as primitive decomposable vectors of the s-th
exterior power: a saturated F with basis f₁..f_s has Plücker vector of wedge
norm det(h(fᵢ, fⱼ)) = 1/D_F, so D_F >= D_min is a norm bound 1/D_min there.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, ceil
from typing import Dict, List, Optional, Sequence, Tuple

from hnlat import config, linalg
from hnlat.errors import EnumerationIncomplete, InputError, InvariantViolation
from hnlat.hermitian import HermSpace, plucker_vector, wedge_metric, wedge_multiplication_matrix
from hnlat.lattice import HermLattice, Sublattice, degree, degree_of_sub

logger = logging.getLogger(__name__)

ShortVector = Tuple[Tuple[int, ...], Fraction]


@dataclass(frozen=True)
class EnumConfig:
    """Search limits. `max_candidates` caps the number of search-tree nodes."""

    max_candidates: int = config.HNLAT_MAX_NODES
    parallel: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.max_candidates <= 0:
            raise InputError(f"max_candidates must be positive, got {self.max_candidates}")

    @classmethod
    def from_env(cls) -> "EnumConfig":
        threads = max(1, config.HNLAT_THREADS)
        return cls(max_candidates=config.HNLAT_MAX_NODES, parallel=threads > 1, threads=threads)


@dataclass(frozen=True)
class ShortVecReport:
    """Nonzero vectors (one per ± pair) with norm at most `bound`, sorted by (norm, vector)."""

    bound: Fraction
    vectors: Tuple[ShortVector, ...]
    complete: bool = True
    nodes: int = field(default=0, compare=False)


class _NodeLimit(Exception):
    pass


def _interval(c: Fraction, t: Fraction) -> Tuple[int, int]:
    """Integers v with (v - c)² <= t, as an inclusive range (empty when lo > hi)."""
    r = linalg.isqrt_floor(t)
    lo, hi = floor(c) - r - 1, ceil(c) + r + 1
    while lo <= hi and (lo - c) ** 2 > t:
        lo += 1
    while hi >= lo and (hi - c) ** 2 > t:
        hi -= 1
    return lo, hi


def _normalize_sign(v: Sequence[int]) -> Tuple[int, ...]:
    """Representative of ±v whose first nonzero coordinate is positive."""
    lead = next(x for x in v if x)
    return tuple(v) if lead > 0 else tuple(-x for x in v)


def _enumerate_subtree(R, d, bound: Fraction, top: int, limit: int) -> Tuple[List[ShortVector], int, bool]:
    """Fincke-Pohst search below a fixed value of the last coordinate.

    Returns (vectors, nodes visited, finished within limit).
    """
    n = len(d)
    x = [0] * n
    x[n - 1] = top
    found: List[ShortVector] = []
    nodes = 1

    def descend(i: int, remaining: Fraction, zero_above: bool):
        nonlocal nodes
        if i < 0:
            if any(x):
                found.append((_normalize_sign(x), bound - remaining))
            return
        c = -sum((R[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = _interval(c, remaining / d[i])
        if zero_above:
            lo = max(lo, 0)
        for v in range(lo, hi + 1):
            nodes += 1
            if nodes > limit:
                raise _NodeLimit()
            x[i] = v
            descend(i - 1, remaining - d[i] * (v - c) ** 2, zero_above and v == 0)
        x[i] = 0

    try:
        descend(n - 2, bound - d[n - 1] * top * top, top == 0)
    except _NodeLimit:
        return found, nodes, False
    return found, nodes, True


def short_vectors(L: HermSpace, bound: Fraction, cfg: Optional[EnumConfig] = None) -> ShortVecReport:
    """All nonzero integer vectors v (up to sign) with v·H·vᵀ <= bound."""
    cfg = cfg or EnumConfig()
    bound = Fraction(bound)
    if bound < 0:
        raise InputError(f"Norm bound must be nonnegative, got {bound}")
    n = L.dim
    if n == 0:
        return ShortVecReport(bound, ())
    R, d = linalg.ldl(L.gram)
    tops = list(range(0, linalg.isqrt_floor(bound / d[n - 1]) + 1))

    vectors: List[ShortVector] = []
    spent = 0
    complete = True
    if cfg.parallel and cfg.threads > 1 and len(tops) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(
                lambda top: _enumerate_subtree(R, d, bound, top, cfg.max_candidates), tops))
        for found, nodes, finished in results:
            if not finished or spent + nodes > cfg.max_candidates:
                complete = False
                break
            spent += nodes
            vectors.extend(found)
    else:
        for top in tops:
            found, nodes, finished = _enumerate_subtree(R, d, bound, top, cfg.max_candidates - spent)
            if not finished:
                complete = False
                break
            spent += nodes
            vectors.extend(found)

    vectors.sort(key=lambda item: (item[1], item[0]))
    logger.debug(f"short_vectors: dim={n} bound={bound} found={len(vectors)} nodes={spent} complete={complete}")
    return ShortVecReport(bound, tuple(vectors), complete, spent)


def _check_threshold(D_min: Fraction) -> Fraction:
    D_min = Fraction(D_min)
    if D_min <= 0:
        raise InputError(f"Degree threshold D_min must be positive, got {D_min}")
    return D_min


def rank1_subs_with_deg_at_least(E: HermLattice, D_min: Fraction,
                                 cfg: Optional[EnumConfig] = None) -> List[Sublattice]:
    """Saturated rank-1 sublattices Z·v with D = 1/h(v, v) >= D_min."""
    D_min = _check_threshold(D_min)
    report = short_vectors(E.metric, 1 / D_min, cfg)
    subs = [Sublattice(E.rank, (v,)) for v, _ in report.vectors if linalg.is_primitive(v)]
    if not report.complete:
        raise EnumerationIncomplete(f"Rank-1 enumeration stopped after {report.nodes} nodes", subs)
    return subs


def decomposable_recover(E: HermLattice, s: int, w: Sequence[int]) -> Optional[Sublattice]:
    """The saturated rank-s sublattice whose Plücker vector is proportional to w, if w is decomposable."""
    if not any(w):
        raise InputError("Cannot recover a sublattice from the zero wedge vector")
    n = E.rank
    M = wedge_multiplication_matrix(w, n, s)
    # V_w = {v : v ∧ w = 0}
    V_w = linalg.kernel(linalg.transpose(M, n), n)
    if len(V_w) != s:
        return None
    return Sublattice.from_rows([linalg.clear_denominators(row) for row in V_w], n)


def _check_recovered(E: HermLattice, F: Sublattice, w: Sequence[int], norm: Fraction) -> None:
    lam = [int(x) for x in plucker_vector(F.basis, E.rank)]
    if lam != list(w) and lam != [-x for x in w]:
        raise InvariantViolation(f"Recovered sublattice {F.basis} has Plücker vector {lam}, expected ±{list(w)}")
    if degree_of_sub(E, F).D != 1 / norm:
        raise InvariantViolation(f"Wedge norm {norm} of {F.basis} disagrees with its degree")


def ranked_subs_with_deg_at_least(E: HermLattice, s: int, D_min: Fraction,
                                  cfg: Optional[EnumConfig] = None) -> List[Sublattice]:
    """Saturated rank-s sublattices with D_F >= D_min, sorted by (wedge norm, basis)."""
    D_min = _check_threshold(D_min)
    if not 1 <= s < E.rank:
        raise InputError(f"Sublattice rank {s} out of range 1..{E.rank - 1}")
    if s == 1:
        return rank1_subs_with_deg_at_least(E, D_min, cfg)
    report = short_vectors(wedge_metric(E.metric, s), 1 / D_min, cfg)
    found: Dict[Sublattice, Fraction] = {}
    for w, norm in report.vectors:
        if not linalg.is_primitive(w):
            continue
        F = decomposable_recover(E, s, w)
        if F is None:
            continue
        _check_recovered(E, F, w, norm)
        found.setdefault(F, norm)
    subs = sorted(found, key=lambda F: (found[F], F.basis))
    if not report.complete:
        raise EnumerationIncomplete(f"Rank-{s} enumeration stopped after {report.nodes} nodes", subs)
    return subs


def all_subs_with_deg_at_least(E: HermLattice, D_min: Fraction,
                               cfg: Optional[EnumConfig] = None) -> Dict[int, List[Sublattice]]:
    """Every nonzero saturated sublattice with D_F >= D_min, keyed by rank."""
    D_min = _check_threshold(D_min)
    result: Dict[int, List[Sublattice]] = {}
    incomplete = []
    for s in range(1, E.rank):
        try:
            result[s] = ranked_subs_with_deg_at_least(E, s, D_min, cfg)
        except EnumerationIncomplete as e:
            result[s] = e.partial
            incomplete.append(s)
    result[E.rank] = [Sublattice.whole(E.rank)] if degree(E).D >= D_min else []
    if incomplete:
        raise EnumerationIncomplete(f"Enumeration incomplete at ranks {incomplete}", result)
    return result
