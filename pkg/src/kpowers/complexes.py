"""Bounded chain complexes of based free modules, supported in degrees >= 0.

Sign conventions used everywhere in the package:

* ``cone(f)_n = target_n ⊕ source_{n-1}`` with differential
  ``[[d', f], [0, -d]]``;
* ``shift_left(C)_n = C_{n-1}`` with differential ``-d``;
* total tensor product ``d(x ⊗ y) = dx ⊗ y + (-1)^i x ⊗ dy`` for ``x`` in degree i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    Matrix, block_matrix, direct_sum as mat_direct_sum, invariant_factors, kronecker,
)
from .rings import RingTag, RingError


class ComplexError(ValueError):
    pass


class ChainComplex:
    """Free modules of ranks ``ranks[0..top]`` with differentials ``d_i: C_i -> C_{i-1}``."""

    __slots__ = ("ring", "ranks", "diffs", "_inv")

    def __init__(self, ring: RingTag, ranks, diffs=None, *, check: bool = True):
        ranks = tuple(int(r) for r in ranks) or (0,)
        if any(r < 0 for r in ranks):
            raise ComplexError("ranks must be non-negative")
        if diffs is None:
            diffs = [Matrix.zeros(ring, ranks[i - 1], ranks[i]) for i in range(1, len(ranks))]
        diffs = tuple(diffs)
        if len(diffs) != len(ranks) - 1:
            raise ComplexError(f"expected {len(ranks) - 1} differentials, got {len(diffs)}")
        for i, d in enumerate(diffs, start=1):
            if d.ring != ring:
                raise RingError(f"differential d_{i} is over {d.ring}, complex over {ring}")
            if d.shape != (ranks[i - 1], ranks[i]):
                raise ComplexError(f"d_{i} has shape {d.shape}, expected {(ranks[i - 1], ranks[i])}")
        self.ring = ring
        self.ranks = ranks
        self.diffs = diffs
        self._inv = {}
        if check:
            for i in range(1, len(diffs)):
                if not (diffs[i - 1] @ diffs[i]).is_zero():
                    raise ComplexError(f"d_{i} ∘ d_{i + 1} != 0")

    @classmethod
    def zero(cls, ring: RingTag) -> "ChainComplex":
        return cls(ring, (0,))

    @classmethod
    def concentrated(cls, ring: RingTag, rank: int, degree: int = 0) -> "ChainComplex":
        ranks = [0] * degree + [rank]
        return cls(ring, ranks)

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def d(self, n: int) -> Matrix:
        """Differential out of degree n (zero matrix outside the stored range)."""
        if 1 <= n <= self.top:
            return self.diffs[n - 1]
        return Matrix.zeros(self.ring, self.rank(n - 1), self.rank(n))

    def trimmed(self) -> "ChainComplex":
        t = self.top
        while t > 0 and self.ranks[t] == 0:
            t -= 1
        return self.truncate(t)

    def truncate(self, top: int) -> "ChainComplex":
        """Same complex viewed with ``top`` as last stored degree (zero-padded)."""
        ranks = [self.rank(n) for n in range(top + 1)]
        diffs = [self.d(n) for n in range(1, top + 1)]
        for n in range(top + 1, self.top + 1):
            if self.ranks[n]:
                raise ComplexError(f"cannot truncate away nonzero degree {n}")
        return ChainComplex(self.ring, ranks, diffs, check=False)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.ring == b.ring and a.ranks == b.ranks and a.diffs == b.diffs

    def __hash__(self):
        t = self.trimmed()
        return hash((t.ring, t.ranks, t.diffs))

    def __repr__(self):
        return f"ChainComplex[{self.ring.name}](ranks={list(self.ranks)})"

    def invariant_factors(self, n: int) -> tuple:
        if n not in self._inv:
            self._inv[n] = invariant_factors(self.d(n)) if 1 <= n <= self.top else ()
        return self._inv[n]

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        _same_ring(self, other)
        top = max(self.top, other.top)
        ranks = [self.rank(n) + other.rank(n) for n in range(top + 1)]
        diffs = [mat_direct_sum(self.d(n), other.d(n)) for n in range(1, top + 1)]
        return ChainComplex(self.ring, ranks, diffs, check=False)

    def rebased(self, bases) -> "ChainComplex":
        """The same complex written in new bases: column j of ``bases[n]`` is the
        j-th new basis vector of degree n in old coordinates (must be invertible)."""
        from .linalg import inverse
        inv = [inverse(P) for P in bases]
        diffs = [inv[n - 1] @ self.d(n) @ bases[n] for n in range(1, self.top + 1)]
        return ChainComplex(self.ring, self.ranks, diffs)


def _same_ring(*objs):
    rings = {o.ring for o in objs}
    if len(rings) > 1:
        raise RingError(f"ring mismatch: {sorted(r.name for r in rings)}")


class ChainMap:
    """Components ``f_n: source_n -> target_n`` commuting with the differentials."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ChainComplex, target: ChainComplex, components, *, check=True):
        _same_ring(source, target)
        top = max(source.top, target.top)
        comps = list(components)
        for n in range(len(comps), top + 1):
            comps.append(Matrix.zeros(source.ring, target.rank(n), source.rank(n)))
        for n, f in enumerate(comps):
            if f.shape != (target.rank(n), source.rank(n)):
                raise ComplexError(f"f_{n} has shape {f.shape}, expected {(target.rank(n), source.rank(n))}")
        self.source = source
        self.target = target
        self.components = tuple(comps[: top + 1])
        if check:
            for n in range(1, top + 1):
                if self.f(n - 1) @ source.d(n) != target.d(n) @ self.f(n):
                    raise ComplexError(f"not a chain map: f_{n - 1} d_{n} != d'_{n} f_{n}")

    @property
    def ring(self):
        return self.source.ring

    def f(self, n: int) -> Matrix:
        if 0 <= n < len(self.components):
            return self.components[n]
        return Matrix.zeros(self.ring, self.target.rank(n), self.source.rank(n))

    @classmethod
    def identity(cls, C: ChainComplex) -> "ChainMap":
        return cls(C, C, [Matrix.identity(C.ring, r) for r in C.ranks], check=False)

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, [], check=False)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        top = max(other.source.top, self.target.top)
        return ChainMap(other.source, self.target,
                        [self.f(n) @ other.f(n) for n in range(top + 1)], check=False)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        top = max(len(self.components), len(other.components))
        return (self.source == other.source and self.target == other.target
                and all(self.f(n) == other.f(n) for n in range(top)))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


@dataclass(frozen=True)
class K0Class:
    """A class in K_0 of based free modules over a PID, i.e. an integer rank."""
    ring: RingTag
    value: int

    def __add__(self, other: "K0Class") -> "K0Class":
        return K0Class(self.ring, self.value + other.value)

    def __neg__(self) -> "K0Class":
        return K0Class(self.ring, -self.value)

    def __int__(self):
        return self.value


# ---------------------------------------------------------------------------

def homology(C: ChainComplex, n: int):
    """``(free_rank, torsion)`` of H_n(C); torsion lists the non-unit invariant factors."""
    if not 0 <= n <= C.top:
        raise ComplexError(f"degree {n} outside [0, {C.top}]")
    out_rank = len(C.invariant_factors(n))
    inc = C.invariant_factors(n + 1)
    free = C.rank(n) - out_rank - len(inc)
    torsion = [] if C.ring.is_field else [x for x in inc if x != 1]
    return free, torsion


def is_acyclic(C: ChainComplex) -> bool:
    for n in range(C.top + 1):
        free, tors = homology(C, n)
        if free or tors:
            return False
    return True


def cone(f: ChainMap) -> ChainComplex:
    S, T = f.source, f.target
    ring = f.ring
    top = max(T.top, S.top + 1)
    ranks = [T.rank(n) + S.rank(n - 1) for n in range(top + 1)]
    diffs = []
    for n in range(1, top + 1):
        blocks = [[T.d(n), f.f(n - 1)], [None, -S.d(n - 1)]]
        diffs.append(block_matrix(ring, blocks, [T.rank(n - 1), S.rank(n - 2)],
                                  [T.rank(n), S.rank(n - 1)]))
    return ChainComplex(ring, ranks, diffs, check=False)


def cone_of_identity(C: ChainComplex) -> ChainComplex:
    return cone(ChainMap.identity(C))


def shift_left(C: ChainComplex) -> ChainComplex:
    ranks = [0, *C.ranks]
    diffs = [Matrix.zeros(C.ring, 0, C.rank(0))] + [-d for d in C.diffs]
    return ChainComplex(C.ring, ranks, diffs, check=False)


def euler_characteristic(C: ChainComplex) -> K0Class:
    return K0Class(C.ring, sum((-1) ** i * r for i, r in enumerate(C.ranks)))


def is_quasi_iso(f: ChainMap) -> bool:
    """True iff the mapping cone of ``f`` is acyclic."""
    return is_acyclic(cone(f))


def tensor_total(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    _same_ring(C, D)
    ring = C.ring
    top = C.top + D.top
    pieces = [[(i, n - i) for i in range(n + 1) if i <= C.top and n - i <= D.top]
              for n in range(top + 1)]
    ranks = [sum(C.rank(i) * D.rank(j) for i, j in pieces[n]) for n in range(top + 1)]
    diffs = []
    for n in range(1, top + 1):
        rows = pieces[n - 1]
        cols = pieces[n]
        grid = []
        for (a, b) in rows:
            line = []
            for (i, j) in cols:
                if (a, b) == (i - 1, j):
                    line.append(kronecker(C.d(i), Matrix.identity(ring, D.rank(j))))
                elif (a, b) == (i, j - 1):
                    blk = kronecker(Matrix.identity(ring, C.rank(i)), D.d(j))
                    line.append(-blk if i % 2 else blk)
                else:
                    line.append(None)
            grid.append(line)
        diffs.append(block_matrix(ring, grid, [C.rank(a) * D.rank(b) for a, b in rows],
                                  [C.rank(i) * D.rank(j) for i, j in cols]))
    return ChainComplex(ring, ranks, diffs, check=False)


def is_admissible_mono(f: ChainMap) -> bool:
    """Degreewise injective with free cokernel (all invariant factors units)."""
    for n in range(len(f.components)):
        m = f.f(n)
        inv = invariant_factors(m)
        if len(inv) != m.cols or any(not f.ring.is_unit(x) for x in inv):
            return False
    return True


def direct_sum_map(f: ChainMap, g: ChainMap) -> ChainMap:
    top = max(len(f.components), len(g.components))
    return ChainMap(f.source.direct_sum(g.source), f.target.direct_sum(g.target),
                    [mat_direct_sum(f.f(n), g.f(n)) for n in range(top)], check=False)
