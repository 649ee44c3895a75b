# hermitian.py
"""
Hermitian metrics as exact Gram matrices: sub, quotient, dual, tensor and
wedge metrics, and the domination order between two metrics.

Linear maps follow the row convention: ``LinMap.matrix`` has one row per
source basis vector, holding its image in target coordinates, so a source
row vector x maps to x·matrix.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Sequence, Tuple

from hnlat import linalg
from hnlat.errors import InputError

Gram = Tuple[Tuple[Fraction, ...], ...]


def _freeze(M: Sequence[Sequence[object]]) -> Gram:
    return tuple(tuple(Fraction(x) for x in row) for row in M)


@dataclass(frozen=True)
class HermSpace:
    """A finite dimensional real inner-product space given by its Gram matrix."""

    gram: Gram

    def __post_init__(self):
        object.__setattr__(self, "gram", _freeze(self.gram))
        if not linalg.is_symmetric(self.gram):
            raise InputError("Gram matrix is not symmetric")

    @classmethod
    def from_gram(cls, rows: Sequence[Sequence[object]]) -> "HermSpace":
        """Build a space from user data, insisting on positive definiteness."""
        space = cls(rows)
        space.validate()
        return space

    def validate(self) -> None:
        bad = linalg.first_nonpositive_minor(self.gram)
        if bad is not None:
            raise InputError(f"Gram matrix is not positive definite: leading minor of size {bad} is not positive")

    @property
    def dim(self) -> int:
        return len(self.gram)

    def matrix(self) -> linalg.RatMat:
        return [list(row) for row in self.gram]

    def inner(self, x: Sequence[object], y: Sequence[object]) -> Fraction:
        return Fraction(linalg.bilinear(x, self.gram, y))

    def norm(self, x: Sequence[object]) -> Fraction:
        """Squared length h(x, x)."""
        return self.inner(x, x)

    def det(self) -> Fraction:
        return linalg.det(self.gram)


@dataclass(frozen=True)
class LinMap:
    """A linear map V' -> V; row i of `matrix` is the image of the i-th source basis vector."""

    matrix: Gram

    def __post_init__(self):
        object.__setattr__(self, "matrix", _freeze(self.matrix))
        widths = {len(row) for row in self.matrix}
        if len(widths) > 1:
            raise InputError("Linear map matrix is not rectangular")

    @property
    def source_dim(self) -> int:
        return len(self.matrix)

    @property
    def target_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, x: Sequence[object]) -> linalg.Vector:
        return linalg.vecmat(x, self.matrix)


def submetric(target: HermSpace, incl: LinMap) -> HermSpace:
    """Metric h(φx, φy) on the source of an injective map."""
    if incl.target_dim != target.dim:
        raise InputError(f"Inclusion lands in dimension {incl.target_dim}, space has {target.dim}")
    if linalg.rank(incl.matrix) != incl.source_dim:
        raise InputError("Inclusion map is not injective")
    phi = incl.matrix
    return HermSpace(linalg.matmul(linalg.matmul(phi, target.gram), linalg.transpose(phi)))


def quotient_metric(source: HermSpace, surj: LinMap) -> HermSpace:
    """Quotient metric on the target of a surjection, via the dual: (Ψᵀ·H⁻¹·Ψ)⁻¹."""
    if surj.source_dim != source.dim:
        raise InputError(f"Surjection starts in dimension {surj.source_dim}, space has {source.dim}")
    if linalg.rank(surj.matrix) != surj.target_dim:
        raise InputError("Quotient map is not surjective")
    psi = surj.matrix
    dual = linalg.matmul(linalg.matmul(linalg.transpose(psi), linalg.inverse(source.gram)), psi)
    return HermSpace(linalg.inverse(dual))


def quotient_metric_orthogonal(source: HermSpace, surj: LinMap) -> HermSpace:
    """Quotient metric built by restricting to the orthogonal complement of the kernel.

    Independent of quotient_metric; the two agree exactly.
    """
    if linalg.rank(surj.matrix) != surj.target_dim:
        raise InputError("Quotient map is not surjective")
    n = source.dim
    psi = surj.matrix
    ker = linalg.kernel(linalg.transpose(psi), n)
    if ker:
        W = linalg.kernel(linalg.matmul(ker, source.gram), n)
    else:
        W = linalg.to_rat(linalg.identity(n))
    # ψ restricted to W is an isomorphism onto the target
    T = linalg.inverse(linalg.matmul(W, psi))
    lifted = linalg.matmul(T, W)
    return HermSpace(linalg.matmul(linalg.matmul(lifted, source.gram), linalg.transpose(lifted)))


def dual_metric(V: HermSpace) -> HermSpace:
    """Gram of the dual metric in the dual basis: the inverse Gram."""
    return HermSpace(linalg.inverse(V.gram))


def dual_extremal(V: HermSpace, phi: Sequence[object]) -> linalg.Vector:
    """The vector x = H⁻¹φ at which φ(x)²/h(x, x) reaches h^∨(φ, φ)."""
    return linalg.vecmat(phi, linalg.inverse(V.gram))


def tensor_metric(U: HermSpace, W: HermSpace) -> HermSpace:
    return HermSpace(linalg.kron(U.gram, W.gram))


def _check_wedge_degree(V: HermSpace, s: int) -> None:
    if not 1 <= s <= V.dim:
        raise InputError(f"Wedge degree {s} out of range 1..{V.dim}")


def wedge_metric(V: HermSpace, s: int) -> HermSpace:
    """Metric on the s-th exterior power as the Gram of s×s minors.

    Basis e_S for sorted s-subsets S in lexicographic order.
    """
    _check_wedge_degree(V, s)
    index = linalg.subsets(V.dim, s)
    return HermSpace([[linalg.det(linalg.submatrix(V.gram, S, T)) for T in index] for S in index])


def _permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def wedge_metric_from_tensor(V: HermSpace, s: int) -> HermSpace:
    """s! times the quotient of the s-fold tensor metric along antisymmetrisation."""
    _check_wedge_degree(V, s)
    n = V.dim
    index = {S: k for k, S in enumerate(linalg.subsets(n, s))}
    rows = []
    for word in product(range(n), repeat=s):
        row = [Fraction(0)] * len(index)
        if len(set(word)) == s:
            row[index[tuple(sorted(word))]] = Fraction(_permutation_sign(word))
        rows.append(row)
    inv = linalg.inverse(V.gram)
    tensor_inv = inv
    for _ in range(s - 1):
        tensor_inv = linalg.kron(tensor_inv, inv)
    dual = linalg.matmul(linalg.matmul(linalg.transpose(rows), tensor_inv), rows)
    quotient = linalg.inverse(dual)
    scale = factorial(s)
    return HermSpace([[scale * x for x in row] for row in quotient])


def plucker_vector(rows: Sequence[Sequence[object]], n: int) -> linalg.Vector:
    """Coordinates of rows[0] ∧ ... ∧ rows[s-1] in the lexicographic wedge basis."""
    s = len(rows)
    return [linalg.det(linalg.submatrix(rows, range(s), S)) for S in linalg.subsets(n, s)]


def wedge_multiplication_matrix(w: Sequence[object], n: int, s: int) -> linalg.RatMat:
    """Matrix of v ↦ v ∧ w from V to the (s+1)-th exterior power; row i is e_i ∧ w."""
    source = linalg.subsets(n, s)
    target = {T: k for k, T in enumerate(linalg.subsets(n, s + 1))}
    out = [[Fraction(0)] * len(target) for _ in range(n)]
    for coeff, S in zip(w, source):
        if coeff == 0:
            continue
        for i in range(n):
            if i in S:
                continue
            # e_i ∧ e_S = (-1)^{#{j in S : j < i}} e_{S ∪ {i}}
            sign = -1 if sum(1 for j in S if j < i) % 2 else 1
            T = tuple(sorted(S + (i,)))
            out[i][target[T]] += sign * Fraction(coeff)
    return out


def dominates(h1: HermSpace, h2: HermSpace) -> bool:
    """True iff h1(x, x) >= h2(x, x) for every x."""
    if h1.dim != h2.dim:
        raise InputError(f"Cannot compare metrics of dimensions {h1.dim} and {h2.dim}")
    diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(h1.gram, h2.gram)]
    return linalg.is_psd(diff)
