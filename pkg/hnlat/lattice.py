# lattice.py
"""
Hermitian lattices over the integers, saturated sublattices and the
arithmetic degree in exponential form.

A degree is never a real number here. ``ExpDegree(D, rank)`` stands for
deg = ½·log D and slope = log D / (2·rank); comparing slopes reduces to
comparing D_a^{rank_b} with D_b^{rank_a}.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from hnlat import linalg
from hnlat.errors import InputError
from hnlat.hermitian import HermSpace, LinMap, quotient_metric

logger = logging.getLogger(__name__)

IntRows = Tuple[Tuple[int, ...], ...]


def _rows(M: Sequence[Sequence[int]]) -> IntRows:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True)
class HermLattice:
    """A free Z-module with a positive definite Gram matrix on its chosen basis."""

    metric: HermSpace
    name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def from_gram(cls, rows: Sequence[Sequence[object]], name: Optional[str] = None) -> "HermLattice":
        return cls(HermSpace.from_gram(rows), name)

    @property
    def rank(self) -> int:
        return self.metric.dim

    @property
    def gram(self):
        return self.metric.gram


@dataclass(frozen=True, order=True)
class Sublattice:
    """A saturated sublattice, stored by its canonical (HNF) basis."""

    ambient_rank: int
    basis: IntRows

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ambient_rank: int) -> "Sublattice":
        """Saturate the rows and store the canonical basis of the result."""
        basis = linalg.saturate_rows([list(r) for r in rows], ambient_rank)
        if not basis:
            raise InputError("A sublattice needs at least one nonzero generator")
        return cls(ambient_rank, _rows(basis))

    @classmethod
    def whole(cls, n: int) -> "Sublattice":
        return cls(n, _rows(linalg.identity(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_canonical(self) -> bool:
        return _rows(linalg.saturate_rows([list(r) for r in self.basis], self.ambient_rank)) == self.basis

    def rows(self) -> List[List[int]]:
        return [list(r) for r in self.basis]


@dataclass(frozen=True)
class GenSubmodule:
    """An arbitrary submodule given by generators; possibly redundant, possibly not saturated."""

    ambient_rank: int
    gens: IntRows

    def __post_init__(self):
        object.__setattr__(self, "gens", _rows(self.gens))
        if any(len(row) != self.ambient_rank for row in self.gens):
            raise InputError(f"Generators must have {self.ambient_rank} coordinates")

    def basis(self) -> List[List[int]]:
        """Z-basis of the module itself (HNF rows)."""
        return linalg.hnf_basis(self.gens)


@dataclass(frozen=True)
class ExpDegree:
    """Exact degree encoding: degree = ½·log D, slope = log D / (2·rank)."""

    D: Fraction
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "D", Fraction(self.D))
        if self.D <= 0:
            raise InputError(f"Degree encoding needs D > 0, got {self.D}")
        if self.rank < 1:
            raise InputError(f"Degree encoding needs rank >= 1, got {self.rank}")

    def log_value(self) -> float:
        """Approximate degree ½·log D. Advisory only."""
        return 0.5 * (math.log(self.D.numerator) - math.log(self.D.denominator))

    def slope_value(self) -> float:
        """Approximate slope. Advisory only."""
        return self.log_value() / self.rank


def slope_cmp(a: ExpDegree, b: ExpDegree) -> int:
    """Sign of slope(a) - slope(b), decided exactly."""
    left = a.D ** b.rank
    right = b.D ** a.rank
    return (left > right) - (left < right)


def combine(a: ExpDegree, b: ExpDegree) -> ExpDegree:
    """Degree of an extension: degrees add, ranks add."""
    return ExpDegree(a.D * b.D, a.rank + b.rank)


def saturation(E: HermLattice, S: GenSubmodule) -> Sublattice:
    if S.ambient_rank != E.rank:
        raise InputError(f"Submodule lives in rank {S.ambient_rank}, lattice has rank {E.rank}")
    if not any(any(row) for row in S.gens):
        raise InputError("Cannot saturate the zero submodule")
    return Sublattice.from_rows(S.gens, E.rank)


def index_ratio(xs: Sequence[Sequence[object]]) -> Fraction:
    """#(F / ⟨a·x₁, ..., a·x_r⟩) / a^r for vectors xs given in coordinates of a basis of F.

    Any a clearing denominators gives the same value; the least one is used.
    """
    X = [[Fraction(v) for v in row] for row in xs]
    r = len(X)
    if r == 0 or any(len(row) != r for row in X):
        raise InputError("index_ratio needs r vectors in r coordinates")
    a = 1
    for row in X:
        for v in row:
            a = a * v.denominator // math.gcd(a, v.denominator)
    M = [[int(v * a) for v in row] for row in X]
    divisors = linalg.snf_diag(M)
    if 0 in divisors:
        raise InputError("Vectors are linearly dependent")
    return Fraction(math.prod(divisors), a ** r)


def module_index(gens: Sequence[Sequence[int]], n: int) -> int:
    """#(Zⁿ / M) for the module M generated by gens; M must have full rank."""
    if not gens:
        raise InputError("No generators")
    divisors = linalg.snf_diag(gens)[:n]
    if len(divisors) < n or 0 in divisors:
        raise InputError("Generators do not span a full-rank submodule")
    return math.prod(divisors)


def saturation_index(S: GenSubmodule) -> int:
    """[sat(S) : S], the order of the torsion of Zⁿ/S."""
    return math.prod(d for d in linalg.snf_diag(S.gens) if d)


def _gram_of(E: HermLattice, vectors: Sequence[Sequence[object]]) -> linalg.RatMat:
    return linalg.matmul(linalg.matmul(vectors, E.gram), linalg.transpose(vectors))


def degree(E: HermLattice) -> ExpDegree:
    return ExpDegree(1 / E.metric.det(), E.rank)


def degree_of_sub(E: HermLattice, F: Sublattice) -> ExpDegree:
    """Degree of a saturated sublattice with the submetric."""
    if F.ambient_rank != E.rank:
        raise InputError(f"Sublattice lives in rank {F.ambient_rank}, lattice has rank {E.rank}")
    return ExpDegree(1 / linalg.det(_gram_of(E, F.basis)), F.rank)


def degree_from_vectors(E: HermLattice, module_basis: Sequence[Sequence[int]],
                        xs: Sequence[Sequence[object]]) -> ExpDegree:
    """Degree of the module with Z-basis `module_basis`, computed from an arbitrary rational basis.

    xs are given in coordinates of module_basis; the result does not depend on them.
    """
    vectors = linalg.matmul(xs, module_basis)
    D = index_ratio(xs) ** 2 / linalg.det(_gram_of(E, vectors))
    return ExpDegree(D, len(module_basis))


def degree_of_gen_sub(E: HermLattice, S: GenSubmodule) -> ExpDegree:
    """Degree of a possibly non-saturated submodule with the submetric."""
    basis = S.basis()
    if not basis:
        raise InputError("Degree of the zero submodule is undefined")
    r = len(basis)
    return degree_from_vectors(E, basis, linalg.identity(r))


def _check_proper(E: HermLattice, F: Sublattice) -> None:
    if F.ambient_rank != E.rank:
        raise InputError(f"Sublattice lives in rank {F.ambient_rank}, lattice has rank {E.rank}")
    if not 0 < F.rank < E.rank:
        raise InputError(f"Quotient needs a proper nonzero sublattice, got rank {F.rank} in rank {E.rank}")


def quotient_lattice(E: HermLattice, F: Sublattice) -> Tuple[HermLattice, LinMap]:
    """E/F with the quotient metric, and the projection E -> E/F.

    The basis of E/F is the image of the rows completing F.basis to a basis of E.
    """
    _check_proper(E, F)
    _, W = linalg.complete_basis(F.rows(), E.rank)
    proj = LinMap([row[F.rank:] for row in W])
    Q = HermLattice(quotient_metric(E.metric, proj))
    return Q, proj


def pushforward(E: HermLattice, F: Sublattice, G: Sublattice) -> Optional[Sublattice]:
    """Image of G in E/F (saturated), or None when G ⊆ F."""
    _, proj = quotient_lattice(E, F)
    image = [proj.apply(row) for row in G.basis]
    image = [[int(x) for x in row] for row in image if any(row)]
    if not image:
        return None
    return Sublattice.from_rows(image, E.rank - F.rank)


def pullback(E: HermLattice, F: Sublattice, G: Sublattice) -> Sublattice:
    """Preimage in E of a sublattice G of E/F."""
    _check_proper(E, F)
    K, _ = linalg.complete_basis(F.rows(), E.rank)
    lifted = linalg.matmul(G.rows(), K)
    return Sublattice.from_rows(F.rows() + [[int(x) for x in row] for row in lifted], E.rank)


def contains(F: Sublattice, G: Sublattice) -> bool:
    """G ⊆ F for saturated F."""
    return linalg.rank(F.rows() + G.rows()) == F.rank


def change_basis(E: HermLattice, U: Sequence[Sequence[int]]) -> HermLattice:
    """The same lattice seen through the new basis given by the rows of U."""
    if abs(linalg.det(U)) != 1:
        raise InputError("Change of basis must be unimodular")
    return HermLattice(HermSpace(_gram_of(E, U)), E.name)


def transform_sublattice(F: Sublattice, U: Sequence[Sequence[int]]) -> Sublattice:
    """Coordinates of F with respect to the basis given by the rows of U."""
    coords = linalg.matmul(F.rows(), linalg.inverse(U))
    return Sublattice.from_rows(linalg.to_int(coords), F.ambient_rank)
