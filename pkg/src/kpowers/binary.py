"""Binary complexes, their Dold-Puppe powers and a determinant invariant for K_1.

The torsion of an acyclic based complex C with contraction h is

    τ(C) = ε(C) · det(d + h : ⊕ C_odd -> ⊕ C_even),

blocks listed in increasing degree, with ε(C) = (-1)^{Σ b_n b_{n+1}} and
b_n = rank d_n.  The sign makes τ(cone(id)) = 1 for every complex.  Because
τ depends on the order of basis vectors, it is multiplicative on direct sums
only up to sign; the ratio k1_class = τ(bottom) / τ(top) is exactly
multiplicative since both torsions use the same basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complexes import ChainComplex, ComplexError, is_acyclic
from .linalg import Matrix, block_matrix, det, inverse, kernel_basis, rank, solve
from .rings import RingError, RingTag
from .simplicial import ConsistencyError, complete_basis, power_data


class BinaryError(ValueError):
    pass


class BinaryComplex:
    """One graded object with two square-zero differentials ``d`` and ``d̃``."""

    __slots__ = ("ring", "ranks", "d_diffs", "dt_diffs")

    def __init__(self, ring: RingTag, ranks, d_diffs, dt_diffs):
        ranks = tuple(ranks)
        try:
            low = ChainComplex(ring, ranks, d_diffs)
        except ComplexError as exc:
            raise BinaryError(f"bottom differential: {exc}") from None
        try:
            high = ChainComplex(ring, ranks, dt_diffs)
        except ComplexError as exc:
            raise BinaryError(f"top differential: {exc}") from None
        self.ring = ring
        self.ranks = ranks
        self.d_diffs = low.diffs
        self.dt_diffs = high.diffs

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def __eq__(self, other):
        if not isinstance(other, BinaryComplex):
            return NotImplemented
        return (self.ring, self.ranks, self.d_diffs, self.dt_diffs) == \
            (other.ring, other.ranks, other.d_diffs, other.dt_diffs)

    def __hash__(self):
        return hash((self.ring, self.ranks, self.d_diffs, self.dt_diffs))

    def __repr__(self):
        return f"BinaryComplex[{self.ring.name}](ranks={list(self.ranks)})"

    def direct_sum(self, other: "BinaryComplex") -> "BinaryComplex":
        a, b = bottom(self).direct_sum(bottom(other)), top(self).direct_sum(top(other))
        return BinaryComplex(self.ring, a.ranks, a.diffs, b.diffs)


def top(B: BinaryComplex) -> ChainComplex:
    """The complex with the top differential d̃."""
    return ChainComplex(B.ring, B.ranks, B.dt_diffs, check=False)


def bottom(B: BinaryComplex) -> ChainComplex:
    """The complex with the bottom differential d."""
    return ChainComplex(B.ring, B.ranks, B.d_diffs, check=False)


def diag(C: ChainComplex) -> BinaryComplex:
    return BinaryComplex(C.ring, C.ranks, C.diffs, C.diffs)


def is_biacyclic(B: BinaryComplex) -> bool:
    return is_acyclic(bottom(B)) and is_acyclic(top(B))


def binary_power(B: BinaryComplex, k: int, *, slack: int = 2) -> BinaryComplex:
    """⋀^k applied to each differential; the graded pieces must coincide."""
    if k == 1:
        return B
    low = power_data(bottom(B), k, slack=slack)
    high = power_data(top(B), k, slack=slack)
    if low.labels != high.labels:
        raise ConsistencyError("graded pieces of the two powers differ")
    a, b = low.complex, high.complex
    n = max(a.top, b.top)
    a, b = a.truncate(n), b.truncate(n)
    if a.ranks != b.ranks:
        raise ConsistencyError(f"rank sequences differ: {a.ranks} vs {b.ranks}")
    return BinaryComplex(B.ring, a.ranks, a.diffs, b.diffs)


def standard_unit_complex(ring: RingTag, u) -> BinaryComplex:
    """R in degrees 1 and 0 with d = ·u and d̃ = ·1."""
    u = ring.coerce(u)
    if not ring.is_unit(u):
        raise RingError(f"{u} is not a unit of {ring.name}")
    return BinaryComplex(ring, (1, 1), [Matrix.from_rows(ring, [[u]])],
                         [Matrix.identity(ring, 1)])


# ---------------------------------------------------------------------------
# torsion

@dataclass(frozen=True)
class UnitClass:
    ring: RingTag
    value: object

    def __post_init__(self):
        if not self.ring.is_unit(self.value):
            raise RingError(f"{self.value} is not a unit")

    def __mul__(self, other: "UnitClass") -> "UnitClass":
        return UnitClass(self.ring, self.ring.coerce(self.value * other.value))

    def inverse(self) -> "UnitClass":
        return UnitClass(self.ring, self.ring.inv(self.value))

    def __truediv__(self, other: "UnitClass") -> "UnitClass":
        return self * other.inverse()

    def __str__(self):
        return self.ring.format(self.value)


def _random_complement(K: Matrix, rng) -> Matrix:
    """Columns completing K to a basis, randomized by adding multiples of K."""
    ring = K.ring
    n, k = K.shape
    full = complete_basis(K)
    S = full.submatrix(range(n), range(k, n))
    if rng is not None and k and S.cols:
        X = Matrix.from_rows(ring, [[ring.coerce(rng.randint(-3, 3)) for _ in range(S.cols)]
                                    for _ in range(k)], S.cols)
        S = S + K @ X
    return S


def sample_contraction(C: ChainComplex, rng=None) -> list:
    """Matrices ``h_n: C_n -> C_{n+1}`` with d h + h d = id.

    Without ``rng`` the canonical complements are used; with ``rng`` both the
    complements and a perturbation ``h + dφ - φd`` are random.
    """
    if not is_acyclic(C):
        raise ComplexError("complex is not acyclic")
    ring = C.ring
    top_n = C.top
    K = [kernel_basis(C.d(n)) for n in range(top_n + 2)]
    S = [_random_complement(K[n], rng) for n in range(top_n + 1)]
    h = []
    for n in range(top_n + 1):
        # h_n: C_n -> C_{n+1}, inverse of d_{n+1} on K_n, zero on S_n
        P = K[n].hstack(S[n])
        if C.rank(n + 1):
            A = solve(K[n], C.d(n + 1) @ S[n + 1])
            if A is None or A.rows != A.cols:
                raise ConsistencyError("differential does not map the complement onto the boundaries")
            left = S[n + 1] @ inverse(A)
        else:
            left = Matrix.zeros(ring, 0, K[n].cols)
        block = left.hstack(Matrix.zeros(ring, C.rank(n + 1), S[n].cols))
        h.append(block @ inverse(P))
    if rng is not None:
        phi = [Matrix.from_rows(ring, [[ring.coerce(rng.randint(-3, 3)) for _ in range(C.rank(n))]
                                       for _ in range(C.rank(n + 2))], C.rank(n))
               for n in range(top_n + 1)]
        h = [h[n] + C.d(n + 2) @ phi[n] - (phi[n - 1] @ C.d(n) if n >= 1 else
                                          Matrix.zeros(ring, C.rank(n + 1), C.rank(n)))
             for n in range(top_n + 1)]
    for n in range(top_n + 1):
        lhs = C.d(n + 1) @ h[n]
        if n >= 1:
            lhs = lhs + h[n - 1] @ C.d(n)
        if lhs != Matrix.identity(ring, C.rank(n)):
            raise ConsistencyError(f"contraction identity fails in degree {n}")
    return h


def _sign(C: ChainComplex) -> int:
    b = [rank(C.d(n)) for n in range(C.top + 2)]
    return -1 if sum(b[n] * b[n + 1] for n in range(len(b) - 1)) % 2 else 1


def torsion(C: ChainComplex, rng=None, *, contraction=None) -> UnitClass:
    """ε(C)·det(d + h) from odd to even degrees."""
    ring = C.ring
    if not ring.is_field and ring.kind != "Z":
        raise RingError("torsion needs a field (or ℤ for sign checks)")
    h = contraction if contraction is not None else sample_contraction(C, rng)
    odd = [n for n in range(C.top + 1) if n % 2]
    even = [n for n in range(C.top + 1) if n % 2 == 0]
    grid = []
    for e in even:
        row = []
        for o in odd:
            if o == e + 1:
                row.append(C.d(o))
            elif o == e - 1:
                row.append(h[o])
            else:
                row.append(None)
        grid.append(row)
    rs = [C.rank(e) for e in even]
    cs = [C.rank(o) for o in odd]
    if sum(rs) != sum(cs):
        raise ComplexError("odd and even ranks differ; complex cannot be acyclic")
    M = block_matrix(ring, grid, rs, cs) if odd else Matrix.zeros(ring, sum(rs), 0)
    value = det(M) if M.rows else ring.one
    if _sign(C) < 0:
        value = ring.coerce(-value)
    return UnitClass(ring, value)


def k1_class(B: BinaryComplex, rng=None) -> UnitClass:
    """τ(bottom) / τ(top) for a biacyclic binary complex over a field."""
    if not B.ring.is_field:
        raise RingError("k1_class needs field coefficients")
    if not is_biacyclic(B):
        raise BinaryError("binary complex is not biacyclic")
    return torsion(bottom(B), rng) / torsion(top(B), rng)


@dataclass
class K1Experiment:
    unit: object
    observed: UnitClass
    predicted: UnitClass

    @property
    def match(self) -> bool:
        return self.observed == self.predicted


def lambda2_unit_experiment(ring: RingTag, u) -> K1Experiment:
    """Compare k1_class(⋀² of the standard unit complex) with the prediction u^{-1}."""
    B = standard_unit_complex(ring, u)
    observed = k1_class(binary_power(B, 2))
    return K1Experiment(ring.coerce(u), observed, UnitClass(ring, ring.coerce(u)).inverse())


def random_biacyclic(ring: RingTag, rng, *, max_top: int = 2, max_rank: int = 2) -> BinaryComplex:
    """Two random acyclic differentials on a common graded object."""
    from .random_gen import _unit, conjugate, from_pieces, random_invertible

    while True:
        top_n = rng.randint(1, max_top)
        pieces = []
        ranks = [0] * (top_n + 1)
        for _ in range(rng.randint(1, max_rank * top_n)):
            i = rng.randint(1, top_n)
            if ranks[i] < max_rank and ranks[i - 1] < max_rank:
                pieces.append(("arrow", i, _unit(ring, rng)))
                ranks[i] += 1
                ranks[i - 1] += 1
        if pieces:
            break
    base = from_pieces(ring, pieces, top_n)
    low = conjugate(base, [random_invertible(ring, r, rng) for r in base.ranks])
    high = conjugate(base, [random_invertible(ring, r, rng) for r in base.ranks])
    return BinaryComplex(ring, base.ranks, low.diffs, high.diffs)
