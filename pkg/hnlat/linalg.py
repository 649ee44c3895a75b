# linalg.py
"""
Exact integer and rational linear algebra.

Matrices are plain row-major lists of lists holding ``int`` (IntMat) or
``fractions.Fraction`` (RatMat). Functions never mutate their arguments and
always hand back fresh lists, so callers may treat every matrix as a value.

Elimination (determinant, inverse, echelon form, kernel, rank) and the Smith
invariants run on sympy's DomainMatrix over ZZ or QQ; values cross the
boundary through ``_domain_matrix`` and ``_from_domain``. The row Hermite form
stays here because callers need its unimodular transform.
"""

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.matrices.normalforms import invariant_factors

from hnlat.errors import InputError

Scalar = Union[int, Fraction]
Vector = List[Scalar]
Matrix = List[List[Scalar]]
RatMat = List[List[Fraction]]
IntMat = List[List[int]]


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------

def to_rat(M: Sequence[Sequence[Scalar]]) -> RatMat:
    """Copy a matrix with every entry converted to Fraction."""
    return [[Fraction(x) for x in row] for row in M]


def to_int(M: Sequence[Sequence[Scalar]]) -> IntMat:
    """Copy a matrix whose entries are integral, as ints."""
    out = []
    for row in M:
        new_row = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise InputError(f"Expected an integer entry, got {x}")
            new_row.append(x.numerator)
        out.append(new_row)
    return out


def identity(n: int) -> IntMat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def is_square(M: Sequence[Sequence[Scalar]]) -> bool:
    return all(len(row) == len(M) for row in M)


def matmul(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]]) -> Matrix:
    if not A:
        return []
    if len(A[0]) != len(B):
        raise InputError(f"Cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0]) if B else 0}")
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v: Sequence[Scalar], M: Sequence[Sequence[Scalar]]) -> Vector:
    """Row vector times matrix."""
    if not M:
        return []
    return [sum(v[i] * M[i][j] for i in range(len(M))) for j in range(len(M[0]))]


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum(a * b for a, b in zip(u, v))


def bilinear(u: Sequence[Scalar], H: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Scalar:
    """u·H·vᵀ."""
    return dot(vecmat(u, H), v)


def kron(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]]) -> Matrix:
    """Kronecker product, lexicographic (row of A, row of B) index order."""
    return [
        [a * b for a in row_a for b in row_b]
        for row_a in A
        for row_b in B
    ]


def submatrix(M: Sequence[Sequence[Scalar]], rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[M[i][j] for j in cols] for i in rows]


def content(v: Sequence[int]) -> int:
    """gcd of the entries; 0 for the zero vector."""
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def clear_denominators(v: Sequence[Scalar]) -> List[int]:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    fracs = [Fraction(x) for x in v]
    lcm = 1
    for x in fracs:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fracs]
    c = content(ints)
    return [x // c for x in ints] if c else ints


def _is_integral(M: Sequence[Sequence[Scalar]]) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def _domain_matrix(M: Sequence[Sequence[Scalar]], cols: Optional[int] = None,
                   integral: bool = False) -> DomainMatrix:
    """DomainMatrix over ZZ (integral=True) or QQ holding the entries of M."""
    ncols = len(M[0]) if M else (cols or 0)
    if integral:
        rows = [[ZZ(int(Fraction(x))) for x in row] for row in M]
        return DomainMatrix(rows, (len(M), ncols), ZZ)
    rows = []
    for row in M:
        new_row = []
        for x in row:
            x = Fraction(x)
            new_row.append(QQ(x.numerator, x.denominator))
        rows.append(new_row)
    return DomainMatrix(rows, (len(M), ncols), QQ)


def _scalar(x) -> Fraction:
    """A ZZ or QQ element as a Fraction."""
    if hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(int(x))


def _from_domain(A: DomainMatrix) -> RatMat:
    return [[_scalar(x) for x in row] for row in A.to_list()]


# ---------------------------------------------------------------------------
# Integer roots with directed rounding
# ---------------------------------------------------------------------------

def isqrt_floor(t: Scalar) -> int:
    """floor(sqrt(t)) for a nonnegative rational t."""
    t = Fraction(t)
    if t < 0:
        raise InputError(f"Square root of negative value {t}")
    return isqrt(t.numerator * t.denominator) // t.denominator


def iroot_floor(n: int, k: int) -> int:
    """floor(n ** (1/k)) for integers n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise InputError(f"Bad integer root arguments n={n}, k={k}")
    if n < 2 or k == 1:
        return n
    hi = 1 << (n.bit_length() // k + 1)
    lo = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def root_upper_bound(x: Scalar, k: int) -> Fraction:
    """A rational r with r >= x ** (1/k) and r < x ** (1/k) + 1/denominator(x)."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    # x^(1/k) = (p * q^(k-1))^(1/k) / q
    n = p * q ** (k - 1)
    r = iroot_floor(n, k)
    if r ** k < n:
        r += 1
    return Fraction(r, q)


# ---------------------------------------------------------------------------
# Determinant, inverse, elimination
# ---------------------------------------------------------------------------

def det(M: Sequence[Sequence[Scalar]]) -> Fraction:
    """Exact determinant; fraction-free over ZZ when every entry is integral."""
    if not is_square(M):
        raise InputError("Determinant of a non-square matrix")
    if not M:
        return Fraction(1)
    return _scalar(_domain_matrix(M, integral=_is_integral(M)).det())


def rref(M: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> Tuple[RatMat, List[int]]:
    """Reduced row echelon form over the rationals; returns (nonzero rows, pivot columns)."""
    if not M:
        return [], []
    R, pivots = _domain_matrix(M, cols).rref()
    return _from_domain(R)[:len(pivots)], list(pivots)


def rank(M: Sequence[Sequence[Scalar]]) -> int:
    return _domain_matrix(M).rank() if M else 0


def inverse(M: Sequence[Sequence[Scalar]]) -> RatMat:
    if not is_square(M):
        raise InputError("Inverse of a non-square matrix")
    if not M:
        return []
    try:
        return _from_domain(_domain_matrix(M).inv())
    except DMNonInvertibleMatrixError:
        raise InputError("Matrix is singular")


def kernel(M: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> RatMat:
    """Basis (as rows) of the right kernel {x : M·xᵀ = 0}."""
    ncols = len(M[0]) if M else (cols or 0)
    if not M:
        return to_rat(identity(ncols))
    if ncols == 0:
        return []
    return [row for row in _from_domain(_domain_matrix(M, ncols).nullspace()) if any(row)]


def solve_rows(B: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Optional[List[Fraction]]:
    """Coefficients a with a·B = v for linearly independent rows B, or None."""
    k = len(B)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    aug = [[Fraction(B[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(len(v))]
    R, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    a = [Fraction(0)] * k
    for row, p in zip(R, pivots):
        a[p] = row[k]
    return a


def leading_minors(M: Sequence[Sequence[Scalar]]) -> List[Fraction]:
    return [det(submatrix(M, range(k), range(k))) for k in range(1, len(M) + 1)]


def is_symmetric(M: Sequence[Sequence[Scalar]]) -> bool:
    return is_square(M) and all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(i))


def first_nonpositive_minor(M: Sequence[Sequence[Scalar]]) -> Optional[int]:
    """1-based size of the first leading principal minor that is <= 0, or None if PD."""
    for k, m in enumerate(leading_minors(M), start=1):
        if m <= 0:
            return k
    return None


def is_psd(M: Sequence[Sequence[Scalar]]) -> bool:
    """Exact positive-semidefiniteness by symmetrically pivoted LDL."""
    A = to_rat(M)
    idx = list(range(len(A)))
    while idx:
        if any(A[i][i] < 0 for i in idx):
            return False
        p = max(idx, key=lambda i: A[i][i])
        d = A[p][p]
        if d == 0:
            # all remaining diagonals vanish: PSD only if the rest is zero
            return all(A[i][j] == 0 for i in idx for j in idx)
        rest = [i for i in idx if i != p]
        for i in rest:
            for j in rest:
                A[i][j] = A[i][j] - A[i][p] * A[p][j] / d
        idx = rest
    return True


def ldl(H: Sequence[Sequence[Scalar]]) -> Tuple[RatMat, List[Fraction]]:
    """Decompose a positive definite H as Rᵀ·diag(d)·R with R unit upper triangular.

    Then x·H·xᵀ = Σ_i d_i (x_i + Σ_{j>i} R[i][j] x_j)².
    """
    n = len(H)
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d: List[Fraction] = []
    for i in range(n):
        di = Fraction(H[i][i]) - sum((R[k][i] ** 2 * d[k] for k in range(i)), Fraction(0))
        if di <= 0:
            raise InputError(f"Gram matrix is not positive definite (pivot {i + 1} is {di})")
        d.append(di)
        for j in range(i + 1, n):
            s = Fraction(H[i][j]) - sum((R[k][i] * R[k][j] * d[k] for k in range(i)), Fraction(0))
            R[i][j] = s / di
    return R, d


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------

def hnf(M: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns (H, U) with H = U·M, U unimodular, nonzero rows of H on top with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    ncols = len(A[0]) if A else 0
    U = identity(m)
    r = 0
    for j in range(ncols):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if A[i][j] != 0]
            if not live:
                break
            p = min(live, key=lambda i: abs(A[i][j]))
            others = [i for i in live if i != p]
            if not others:
                break
            for i in others:
                q = A[i][j] // A[p][j]
                A[i] = [a - q * b for a, b in zip(A[i], A[p])]
                U[i] = [a - q * b for a, b in zip(U[i], U[p])]
        if A[r][j] == 0:
            p = next((i for i in range(r + 1, m) if A[i][j] != 0), None)
            if p is None:
                continue
            A[r], A[p] = A[p], A[r]
            U[r], U[p] = U[p], U[r]
        if A[r][j] < 0:
            A[r] = [-a for a in A[r]]
            U[r] = [-a for a in U[r]]
        pivot = A[r][j]
        for i in range(r):
            q = A[i][j] // pivot
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return A, U


def hnf_basis(M: Sequence[Sequence[int]]) -> IntMat:
    """Nonzero rows of the Hermite normal form: the canonical basis of the row module."""
    H, _ = hnf(M)
    return [row for row in H if any(row)]


def snf_diag(M: Sequence[Sequence[int]]) -> List[int]:
    """Smith elementary divisors d1 | d2 | ... (zeros last), min(rows, cols) of them."""
    m = len(M)
    n = len(M[0]) if M else 0
    size = min(m, n)
    if size == 0:
        return []
    raw = [abs(int(x)) for x in invariant_factors(_domain_matrix(M, integral=True))]
    nonzero = [d for d in raw if d]
    # restore the divisibility chain on the diagonal: (a, b) -> (gcd, lcm)
    for i in range(len(nonzero)):
        for j in range(i + 1, len(nonzero)):
            g = gcd(nonzero[i], nonzero[j])
            nonzero[i], nonzero[j] = g, nonzero[i] * nonzero[j] // g
    return nonzero + [0] * (size - len(nonzero))


def integer_kernel(M: Sequence[Sequence[int]], cols: int) -> IntMat:
    """Z-basis (rows, HNF) of {v ∈ Zⁿ : M·vᵀ = 0}."""
    if not M:
        return identity(cols)
    H, U = hnf(transpose(M))
    # rows of U that hit a zero row of H span the integer left kernel of Mᵀ
    gens = [U[i] for i, row in enumerate(H) if not any(row)]
    return hnf_basis(gens) if gens else []


def saturate_rows(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMat:
    """Canonical HNF basis of (rational row span of M) ∩ Zⁿ."""
    ncols = len(M[0]) if M else (cols or 0)
    if not M or not any(any(row) for row in M):
        return []
    K = [clear_denominators(row) for row in kernel(M, ncols)]
    return integer_kernel(K, ncols)


def complete_basis(B: Sequence[Sequence[int]], n: int) -> Tuple[IntMat, IntMat]:
    """Extend a saturated basis B (k rows) to a basis of Zⁿ.

    Returns (K, W): K holds the n-k added rows, so M = [B; K] is unimodular, and
    W = M⁻¹ (integral). The coordinates of v in the basis M are v·W.
    """
    k = len(B)
    if k == 0:
        return identity(n), identity(n)
    H, U = hnf(transpose(B))
    top = [row for row in H[:k]]
    if top != identity(k) or any(any(row) for row in H[k:]):
        raise InputError("Rows do not form a saturated basis")
    W = transpose(U)
    M = to_int(inverse(W))
    if M[:k] != [list(map(int, row)) for row in B]:
        raise InputError("Basis completion failed to reproduce the input rows")
    return M[k:], W


def subsets(n: int, s: int) -> List[Tuple[int, ...]]:
    """Sorted s-subsets of range(n) in lexicographic order (the wedge basis)."""
    return list(combinations(range(n), s))
