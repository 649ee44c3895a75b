# properties.py
"""
The invariant suite behind `hnlat check`.

Each property takes a lattice and the suite context (which carries the
seeded random generator) and returns None when it holds, or a
counterexample dict when it does not. Raising `Skip` marks a case as not applicable.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from tqdm import tqdm

from hnlat import hermitian, linalg
from hnlat.enumeration import EnumConfig, all_subs_with_deg_at_least, ranked_subs_with_deg_at_least
from hnlat.errors import EnumerationIncomplete, HnlatError, InputError, OracleRefusal
from hnlat.hermitian import HermSpace, LinMap
from hnlat.hn import (
    check_max_slope_containment,
    check_max_slope_gap,
    hn_filtration,
    is_semistable,
    verify_hn,
)
from hnlat.lattice import (
    GenSubmodule,
    HermLattice,
    change_basis,
    degree,
    degree_from_vectors,
    degree_of_gen_sub,
    degree_of_sub,
    index_ratio,
    module_index,
    quotient_lattice,
    saturation,
    saturation_index,
    transform_sublattice,
)
from hnlat import oracle

logger = logging.getLogger(__name__)


class Skip(Exception):
    """The property does not apply to this lattice."""


@dataclass
class SuiteContext:
    rng: random.Random
    cfg: EnumConfig
    dmin: Fraction = Fraction(1)
    trials: int = 4
    oracle_points: int = 200_000


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    skipped: int = 0
    failed: int = 0
    counterexample: Optional[Dict[str, object]] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "name": self.name,
            "status": "pass" if self.ok else "fail",
            "cases_passed": self.passed,
            "cases_skipped": self.skipped,
            "cases_failed": self.failed,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


# ---------------------------------------------------------------------------
# Random objects
# ---------------------------------------------------------------------------

def random_gram(rng: random.Random, rank: int, entry: int = 3) -> List[List[int]]:
    """A·Aᵀ + d·I with A in [-entry, entry] and d in {0, 1}; singular draws are rejected."""
    while True:
        A = [[rng.randint(-entry, entry) for _ in range(rank)] for _ in range(rank)]
        d = rng.randint(0, 1)
        G = linalg.matmul(A, linalg.transpose(A))
        G = [[G[i][j] + (d if i == j else 0) for j in range(rank)] for i in range(rank)]
        if linalg.det(G) != 0:
            return G


def random_lattices(rng: random.Random, count: int, rank: int) -> List[HermLattice]:
    return [HermLattice.from_gram(random_gram(rng, rank), f"random-{i}") for i in range(count)]


def random_full_rank(rng: random.Random, rows: int, cols: int, entry: int = 3) -> List[List[int]]:
    while True:
        M = [[rng.randint(-entry, entry) for _ in range(cols)] for _ in range(rows)]
        if linalg.rank(M) == rows:
            return M


def random_unimodular(rng: random.Random, n: int, moves: int = 3) -> List[List[int]]:
    """Product of random elementary row operations and sign flips."""
    U = linalg.identity(n)
    if n == 1:
        return [[rng.choice((1, -1))]]
    for _ in range(moves):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.2:
            U[i] = [-a for a in U[i]]
    return U


def _rational_matrix(rng: random.Random, rows: int, cols: int) -> List[List[Fraction]]:
    while True:
        M = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
        if linalg.rank(M) == min(rows, cols):
            return M


def _grams(*spaces: HermSpace) -> List[List[List[str]]]:
    return [[[str(x) for x in row] for row in V.gram] for V in spaces]


def _projection_killing(rows: Sequence[Sequence[object]], n: int) -> List[List[Fraction]]:
    """Matrix of a surjection from dimension n whose kernel is the span of `rows`."""
    return linalg.transpose(linalg.kernel(rows, n), n)


# ---------------------------------------------------------------------------
# Metric identities
# ---------------------------------------------------------------------------

def prop_sub_quotient_commute(E: HermLattice, ctx: SuiteContext):
    """Sub-then-quotient equals quotient-then-sub on V ⊇ V' ⊇ V''."""
    n = E.rank
    if n < 2:
        raise Skip()
    V = E.metric
    k = ctx.rng.randint(2, n)
    j = ctx.rng.randint(1, k - 1)
    A = random_full_rank(ctx.rng, k, n)
    B = random_full_rank(ctx.rng, j, k)
    psi_inner = _projection_killing(B, k)
    first = hermitian.quotient_metric(hermitian.submetric(V, LinMap(A)), LinMap(psi_inner))

    psi_outer = _projection_killing(linalg.matmul(B, A), n)
    K_B = linalg.kernel(B, k)
    right_inverse = linalg.matmul(linalg.inverse(linalg.matmul(K_B, linalg.transpose(K_B))), K_B)
    incl = linalg.matmul(linalg.matmul(right_inverse, A), psi_outer)
    second = hermitian.submetric(hermitian.quotient_metric(V, LinMap(psi_outer)), LinMap(incl))
    if first.gram != second.gram:
        return {"A": A, "B": B, "grams": _grams(first, second)}
    orth = hermitian.quotient_metric_orthogonal(hermitian.submetric(V, LinMap(A)), LinMap(psi_inner))
    if orth.gram != first.gram:
        return {"A": A, "B": B, "orthogonal_path": _grams(orth, first)}
    return None


def prop_domination(E: HermLattice, ctx: SuiteContext):
    """For subspaces W, U: restricting then projecting dominates projecting then restricting."""
    n = E.rank
    if n < 2:
        raise Skip()
    V = E.metric
    W = random_full_rank(ctx.rng, ctx.rng.randint(1, n), n)
    U = random_full_rank(ctx.rng, ctx.rng.randint(1, n - 1), n)
    psi = _projection_killing(U, n)
    phi = linalg.matmul(W, psi)
    Q, _ = linalg.rref(phi)
    if not Q:
        raise Skip()
    onto_Q = [linalg.solve_rows(Q, row) for row in phi]
    h1 = hermitian.quotient_metric(hermitian.submetric(V, LinMap(W)), LinMap(onto_Q))
    h2 = hermitian.submetric(hermitian.quotient_metric(V, LinMap(psi)), LinMap(Q))
    if not hermitian.dominates(h1, h2) or h1.det() < h2.det():
        return {"W": W, "U": U, "grams": _grams(h1, h2)}
    return None


def prop_dual_exact_sequence(E: HermLattice, ctx: SuiteContext):
    """Dualising sub/quotient metrics swaps them."""
    n = E.rank
    if n < 2:
        raise Skip()
    V = E.metric
    A = random_full_rank(ctx.rng, ctx.rng.randint(1, n - 1), n)
    psi = _projection_killing(A, n)
    h1 = hermitian.submetric(V, LinMap(A))
    h3 = hermitian.quotient_metric(V, LinMap(psi))
    dual = hermitian.dual_metric(V)
    into_dual = hermitian.submetric(dual, LinMap(linalg.transpose(psi)))
    onto_dual = hermitian.quotient_metric_orthogonal(dual, LinMap(linalg.transpose(A)))
    if hermitian.dual_metric(h3).gram != into_dual.gram:
        return {"A": A, "quotient_side": _grams(hermitian.dual_metric(h3), into_dual)}
    if hermitian.dual_metric(h1).gram != onto_dual.gram:
        return {"A": A, "sub_side": _grams(hermitian.dual_metric(h1), onto_dual)}
    return None


def prop_dual_sup_characterization(E: HermLattice, ctx: SuiteContext):
    """h^∨(φ,φ)·h(x,x) >= φ(x)², with equality at x = H⁻¹φ."""
    V = E.metric
    n = E.rank
    dual = hermitian.dual_metric(V)
    for _ in range(ctx.trials):
        phi = [ctx.rng.randint(-5, 5) for _ in range(n)]
        x = [ctx.rng.randint(-5, 5) for _ in range(n)]
        if not any(phi) or not any(x):
            continue
        if dual.norm(phi) * V.norm(x) < linalg.dot(phi, x) ** 2:
            return {"phi": phi, "x": x}
        best = hermitian.dual_extremal(V, phi)
        if dual.norm(phi) * V.norm(best) != linalg.dot(phi, best) ** 2:
            return {"phi": phi, "extremal": [str(v) for v in best]}
    return None


def prop_wedge_gram_determinant(E: HermLattice, ctx: SuiteContext):
    """Wedge norm of x₁∧...∧x_s equals det(h(xᵢ, xⱼ))."""
    n = E.rank
    s = ctx.rng.randint(1, n)
    xs = [[ctx.rng.randint(-4, 4) for _ in range(n)] for _ in range(s)]
    W = hermitian.wedge_metric(E.metric, s)
    lhs = W.norm(hermitian.plucker_vector(xs, n))
    rhs = linalg.det(linalg.matmul(linalg.matmul(xs, E.gram), linalg.transpose(xs)))
    if lhs != rhs:
        return {"vectors": xs, "wedge_norm": str(lhs), "gram_det": str(rhs)}
    if linalg.first_nonpositive_minor(W.gram) is not None:
        return {"s": s, "wedge_not_positive_definite": True}
    return None


def prop_wedge_tensor_normalization(E: HermLattice, ctx: SuiteContext):
    """Gram of minors equals s! times the tensor quotient metric."""
    if E.rank > 4:
        raise Skip()
    for s in range(1, E.rank + 1):
        a = hermitian.wedge_metric(E.metric, s)
        b = hermitian.wedge_metric_from_tensor(E.metric, s)
        if a.gram != b.gram:
            return {"s": s, "grams": _grams(a, b)}
    return None


# ---------------------------------------------------------------------------
# Lengths and degrees
# ---------------------------------------------------------------------------

def prop_generator_base_change(E: HermLattice, ctx: SuiteContext):
    """Replacing generators s by A·s multiplies the index by |det A|."""
    n = E.rank
    S = random_full_rank(ctx.rng, n, n)
    A = random_full_rank(ctx.rng, n, n)
    before = module_index(S, n)
    after = module_index(linalg.matmul(A, S), n)
    if after != abs(linalg.det(A)) * before:
        return {"S": S, "A": A, "before": before, "after": after}
    return None


def prop_basis_independence(E: HermLattice, ctx: SuiteContext):
    """The degree of a submodule does not depend on the rational basis used."""
    n = E.rank
    r = ctx.rng.randint(1, n)
    S = GenSubmodule(n, random_full_rank(ctx.rng, r, n))
    basis = S.basis()
    X = _rational_matrix(ctx.rng, r, r)
    if degree_from_vectors(E, basis, X) != degree_of_gen_sub(E, S):
        return {"gens": [list(g) for g in S.gens], "X": [[str(v) for v in row] for row in X]}
    B = random_full_rank(ctx.rng, r, r)
    if index_ratio(linalg.matmul(B, X)) != abs(linalg.det(B)) * index_ratio(X):
        return {"X": [[str(v) for v in row] for row in X], "B": B}
    return None


def prop_saturation_defect(E: HermLattice, ctx: SuiteContext):
    """D of the saturation is D of the submodule times the squared index."""
    n = E.rank
    r = ctx.rng.randint(1, n)
    gens = random_full_rank(ctx.rng, r, n)
    gens[0] = [2 * x for x in gens[0]]
    S = GenSubmodule(n, gens)
    sat = saturation(E, S)
    idx = saturation_index(S)
    if degree_of_sub(E, sat).D != degree_of_gen_sub(E, S).D * idx ** 2:
        return {"gens": gens, "index": idx}
    return None


def prop_degree_additivity(E: HermLattice, ctx: SuiteContext):
    """D_E = D_F · D_{E/F} for every saturated F above the threshold."""
    try:
        found = all_subs_with_deg_at_least(E, ctx.dmin, ctx.cfg)
    except EnumerationIncomplete as e:
        found = e.partial
    D_E = degree(E).D
    for s, subs in found.items():
        if s == E.rank:
            continue
        for F in subs:
            Q, _ = quotient_lattice(E, F)
            if degree_of_sub(E, F).D * degree(Q).D != D_E:
                return {"sublattice": [list(r) for r in F.basis]}
    return None


# ---------------------------------------------------------------------------
# Slopes and filtrations
# ---------------------------------------------------------------------------

def prop_max_slope_gap(E: HermLattice, ctx: SuiteContext):
    if is_semistable(E, ctx.cfg).semistable is not False:
        raise Skip()
    report = check_max_slope_gap(E, ctx.cfg)
    return None if report.passed else {"details": list(report.details)}


def prop_max_slope_containment(E: HermLattice, ctx: SuiteContext):
    report = check_max_slope_containment(E, ctx.cfg)
    return None if report.passed else {"details": list(report.details)}


def prop_hn_verifies(E: HermLattice, ctx: SuiteContext):
    report = verify_hn(E, hn_filtration(E, ctx.cfg), ctx.cfg)
    return None if report.passed else {"details": list(report.details)}


def prop_hn_equivariance(E: HermLattice, ctx: SuiteContext):
    """The filtration of a re-based lattice is the re-based filtration."""
    U = random_unimodular(ctx.rng, E.rank)
    base = hn_filtration(E, ctx.cfg)
    moved = hn_filtration(change_basis(E, U), ctx.cfg)
    expected = [transform_sublattice(step.sublattice, U) for step in base.steps]
    if [step.sublattice for step in moved.steps] != expected or moved.slopes != base.slopes:
        return {"U": U}
    return None


def _polygon_floor(vertices, s: int) -> Fraction:
    """A rational t at most the polygon's D-value at rank s."""
    for (r0, D0), (r1, D1) in zip(vertices, vertices[1:]):
        if r0 <= s <= r1:
            value = D0 ** (r1 - s) * D1 ** (s - r0)
            return 1 / linalg.root_upper_bound(1 / value, r1 - r0)
    raise InputError(f"Rank {s} is outside the polygon")


def prop_polygon_domination(E: HermLattice, ctx: SuiteContext):
    """Every saturated F sits on or below the HN polygon at rank F."""
    flt = hn_filtration(E, ctx.cfg)
    vertices = flt.polygon()
    for s in range(1, E.rank):
        # anything with D_F under the floor is already below the polygon
        for F in ranked_subs_with_deg_at_least(E, s, _polygon_floor(vertices, s), ctx.cfg):
            D_F = degree_of_sub(E, F).D
            if not flt.lies_below(s, D_F):
                return {"sublattice": [list(r) for r in F.basis], "D": str(D_F),
                        "polygon": [[v.rank, str(v.D)] for v in vertices]}
    return None


def prop_oracle_enum_agreement(E: HermLattice, ctx: SuiteContext):
    if E.rank > oracle.MAX_RANK:
        raise Skip()
    for s in range(1, E.rank):
        main = ranked_subs_with_deg_at_least(E, s, ctx.dmin, ctx.cfg)
        naive = oracle.naive_subs(E, s, ctx.dmin, ctx.oracle_points)
        if set(main) != set(naive):
            return {"s": s, "main": [F.basis for F in main], "oracle": [F.basis for F in naive]}
    return None


def prop_oracle_hn_agreement(E: HermLattice, ctx: SuiteContext):
    if E.rank > oracle.MAX_RANK:
        raise Skip()
    main = hn_filtration(E, ctx.cfg)
    naive = oracle.naive_hn(E, ctx.oracle_points)
    if main != naive:
        return {"main": [s.sublattice.basis for s in main.steps],
                "oracle": [s.sublattice.basis for s in naive.steps]}
    return None


PROPERTIES: Dict[str, Callable[[HermLattice, SuiteContext], Optional[dict]]] = {
    "sub_quotient_commute": prop_sub_quotient_commute,
    "domination": prop_domination,
    "dual_exact_sequence": prop_dual_exact_sequence,
    "dual_sup_characterization": prop_dual_sup_characterization,
    "wedge_gram_determinant": prop_wedge_gram_determinant,
    "wedge_tensor_normalization": prop_wedge_tensor_normalization,
    "generator_base_change": prop_generator_base_change,
    "basis_independence": prop_basis_independence,
    "saturation_defect": prop_saturation_defect,
    "degree_additivity": prop_degree_additivity,
    "max_slope_gap": prop_max_slope_gap,
    "max_slope_containment": prop_max_slope_containment,
    "hn_verifies": prop_hn_verifies,
    "hn_equivariance": prop_hn_equivariance,
    "polygon_domination": prop_polygon_domination,
    "oracle_enum_agreement": prop_oracle_enum_agreement,
    "oracle_hn_agreement": prop_oracle_hn_agreement,
}


def run_suite(lattices: Sequence[HermLattice], ctx: SuiteContext,
              names: Optional[Sequence[str]] = None, progress: bool = False) -> List[PropertyResult]:
    """Run the selected properties over every lattice, in a fixed order."""
    selected = list(names) if names else list(PROPERTIES)
    results = {name: PropertyResult(name) for name in selected}
    for E in tqdm(lattices, desc="lattices", disable=not progress, leave=False):
        for name in selected:
            result = results[name]
            try:
                counterexample = PROPERTIES[name](E, ctx)
            except (Skip, OracleRefusal, EnumerationIncomplete):
                result.skipped += 1
                continue
            except HnlatError as e:
                counterexample = {"error": f"{type(e).__name__}: {e}"}
            if counterexample is None:
                result.passed += 1
            else:
                result.failed += 1
                if result.counterexample is None:
                    result.counterexample = {"lattice": E.name, "gram": [[str(x) for x in row] for row in E.gram],
                                             **counterexample}
                logger.info(f"Property {name} failed on {E.name}")
    return [results[name] for name in selected]
