"""Seeded random instances: complexes, acyclic complexes, quasi-isomorphisms,
admissible monomorphisms and mono chains.

Every complex of finitely generated free modules over a PID is a direct sum
of pieces ``R[i]`` and ``(R --a--> R)`` up to a change of basis, so the
generators below build such a sum and then conjugate it by random invertible
matrices.  Entries of the building blocks are drawn from [-3, 3].
"""

from __future__ import annotations

import random

from .axioms import ModuleChain
from .complexes import ChainComplex, ChainMap, direct_sum_map
from .linalg import Matrix, block_matrix, det, inverse, solve
from .rings import RingTag


def case_rng(seed: int, suite: str, index: int) -> random.Random:
    """Independent deterministic stream per test case (schedule independent)."""
    return random.Random(f"{seed}:{suite}:{index}")


def _scalar(ring: RingTag, rng, lo=-3, hi=3, nonzero=False):
    while True:
        x = ring.coerce(rng.randint(lo, hi))
        if not nonzero or x != 0:
            return x


def random_matrix(ring: RingTag, rows: int, cols: int, rng) -> Matrix:
    return Matrix.from_rows(ring, [[_scalar(ring, rng) for _ in range(cols)] for _ in range(rows)], cols)


def random_invertible(ring: RingTag, n: int, rng) -> Matrix:
    """Over a field: rejection sampling.  Over ℤ: a short product of elementary moves."""
    if ring.is_field:
        while True:
            M = random_matrix(ring, n, n, rng)
            if det(M) != 0:
                return M
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    for i in range(n):
        if rng.random() < 0.3:
            rows[i] = [-a for a in rows[i]]
    rng.shuffle(rows)
    return Matrix.from_rows(ring, rows, n)


def _unit(ring: RingTag, rng):
    if ring.kind == "Z":
        return rng.choice([1, -1])
    return _scalar(ring, rng, nonzero=True)


def _nonzero_nonunit_mix(ring: RingTag, rng):
    if ring.kind == "Z":
        return rng.choice([1, -1, 2, -2, 3, 4, 6])
    return _scalar(ring, rng, nonzero=True)


def from_pieces(ring: RingTag, pieces, top: int) -> ChainComplex:
    """Pieces are ``("point", i)`` for R[i] or ``("arrow", i, a)`` for R --a--> R in degrees i, i-1."""
    slots = [[] for _ in range(top + 1)]  # per degree: piece index of every basis vector
    for idx, pc in enumerate(pieces):
        if pc[0] == "point":
            slots[pc[1]].append(idx)
        else:
            slots[pc[1]].append(idx)
            slots[pc[1] - 1].append(idx)
    ranks = [len(s) for s in slots]
    diffs = []
    for n in range(1, top + 1):
        entries = {}
        for col, idx in enumerate(slots[n]):
            pc = pieces[idx]
            if pc[0] == "arrow" and pc[1] == n:
                entries[(slots[n - 1].index(idx), col)] = pc[2]
        diffs.append(Matrix.from_sparse(ring, ranks[n - 1], ranks[n], entries))
    return ChainComplex(ring, ranks, diffs)


def conjugate(C: ChainComplex, mats) -> ChainComplex:
    """Complex isomorphic to C via ``mats[n]``: new d_n = U_{n-1} d_n U_n^{-1}."""
    invs = [inverse(U) for U in mats]
    diffs = [mats[n - 1] @ C.d(n) @ invs[n] for n in range(1, C.top + 1)]
    return ChainComplex(C.ring, C.ranks, diffs)


def _pieces(ring: RingTag, rng, top: int, caps, *, acyclic=False, units_only=False):
    """Random pieces with at most ``caps[i]`` basis vectors in degree i."""
    ranks = [0] * (top + 1)
    pieces = []
    for _ in range(rng.randint(1, 2 * sum(caps[: top + 1]))):
        kind = "arrow" if acyclic or (top > 0 and rng.random() < 0.55) else "point"
        if kind == "arrow":
            if top == 0:
                continue
            i = rng.randint(1, top)
            if ranks[i] >= caps[i] or ranks[i - 1] >= caps[i - 1]:
                continue
            a = _unit(ring, rng) if (acyclic or units_only) else _nonzero_nonunit_mix(ring, rng)
            pieces.append(("arrow", i, a))
            ranks[i] += 1
            ranks[i - 1] += 1
        else:
            i = rng.randint(0, top)
            if ranks[i] >= caps[i]:
                continue
            pieces.append(("point", i))
            ranks[i] += 1
    return pieces


def random_complex(ring: RingTag, rng, *, max_top: int = 3, max_rank: int = 3,
                   acyclic: bool = False) -> ChainComplex:
    top = rng.randint(1 if acyclic else 0, max_top)
    pieces = _pieces(ring, rng, top, [max_rank] * (top + 1), acyclic=acyclic)
    C = from_pieces(ring, pieces, top)
    return conjugate(C, [random_invertible(ring, r, rng) for r in C.ranks])


def random_acyclic(ring: RingTag, rng, *, max_top: int = 3, max_rank: int = 3) -> ChainComplex:
    while True:
        C = random_complex(ring, rng, max_top=max_top, max_rank=max_rank, acyclic=True)
        if sum(C.ranks):
            return C


def random_chain_map(C: ChainComplex, D: ChainComplex, rng) -> ChainMap:
    """A null-homotopic map d h + h d for a random h of degree +1."""
    ring = C.ring
    top = max(C.top, D.top)
    h = [random_matrix(ring, D.rank(n + 1), C.rank(n), rng) for n in range(top + 1)]
    comps = []
    for n in range(top + 1):
        term = D.d(n + 1) @ h[n]
        if n >= 1:
            term = term + h[n - 1] @ C.d(n)
        comps.append(term)
    return ChainMap(C, D, comps)


def _pad(C: ChainComplex, top: int) -> ChainComplex:
    return C.truncate(top) if C.top < top else C


QUASI_ISO_CAPS = (2, 2, 1)


def random_quasi_iso(ring: RingTag, rng, *, caps=QUASI_ISO_CAPS) -> ChainMap:
    """``C ⊕ A -> C ⊕ A'`` with A, A' acyclic, identity on C plus a null-homotopic
    perturbation, conjugated by isomorphisms on both sides.

    ``caps`` bounds the ranks of C per degree; each acyclic summand adds one
    arrow in degrees (1, 0) or, when C vanishes in degree 2, (2, 1).
    """
    top = len(caps) - 1
    C = from_pieces(ring, _pieces(ring, rng, top, caps), top)
    extras = []
    for _ in range(2):
        pcs = []
        if rng.random() < 0.8:
            i = 2 if C.rank(2) == 0 and rng.random() < 0.5 else 1
            pcs.append(("arrow", i, _unit(ring, rng)))
        extras.append(from_pieces(ring, pcs, top) if pcs else ChainComplex.zero(ring).truncate(top))
    S = C.direct_sum(extras[0])
    T = C.direct_sum(extras[1])
    base = direct_sum_map(ChainMap.identity(C), ChainMap.zero(extras[0], extras[1]))
    base = ChainMap(S, T, base.components)
    pert = random_chain_map(S, T, rng)
    f_comps = [base.f(n) + pert.f(n) for n in range(top + 1)]
    US = [random_invertible(ring, r, rng) for r in S.ranks]
    UT = [random_invertible(ring, r, rng) for r in T.ranks]
    S2, T2 = conjugate(S, US), conjugate(T, UT)
    comps = [UT[n] @ f_comps[n] @ inverse(US[n]) for n in range(top + 1)]
    return ChainMap(S2, T2, comps)


def random_admissible_mono(ring: RingTag, rng, *, max_top: int = 1, max_rank: int = 2) -> ChainMap:
    """V ↣ W with W_n = V_n ⊕ Q_n and d_W = [[d_V, d_V h - h d_Q], [0, d_Q]], re-based."""
    V = random_complex(ring, rng, max_top=max_top, max_rank=max_rank)
    Q = random_complex(ring, rng, max_top=max_top, max_rank=max_rank)
    top = max(V.top, Q.top)
    V, Q = _pad(V, top), _pad(Q, top)
    h = [random_matrix(ring, V.rank(n), Q.rank(n), rng) for n in range(top + 1)]
    diffs = []
    for n in range(1, top + 1):
        g = V.d(n) @ h[n] - h[n - 1] @ Q.d(n)
        diffs.append(block_matrix(ring, [[V.d(n), g], [None, Q.d(n)]],
                                  [V.rank(n - 1), Q.rank(n - 1)], [V.rank(n), Q.rank(n)]))
    W = ChainComplex(ring, [V.rank(n) + Q.rank(n) for n in range(top + 1)], diffs)
    inc = [Matrix.from_sparse(ring, W.rank(n), V.rank(n), {(i, i): ring.one for i in range(V.rank(n))})
           for n in range(top + 1)]
    UV = [random_invertible(ring, r, rng) for r in V.ranks]
    UW = [random_invertible(ring, r, rng) for r in W.ranks]
    comps = [UW[n] @ inc[n] @ inverse(UV[n]) for n in range(top + 1)]
    return ChainMap(conjugate(V, UV), conjugate(W, UW), comps)


def random_module_chain(ring: RingTag, rng, length: int, *, max_rank: int = 4,
                        min_rank: int = 0) -> ModuleChain:
    """V_1 ↣ … ↣ V_length with random bases on every V_t."""
    n = rng.randint(max(1, min_rank), max_rank)
    ranks = sorted(rng.randint(min_rank, n) for _ in range(length - 1)) + [n]
    U = random_invertible(ring, n, rng)
    embs = []
    for r in ranks:
        cols = U.submatrix(range(n), range(r))
        embs.append(cols @ random_invertible(ring, r, rng) if r else cols)
    incs = [solve(embs[t + 1], embs[t]) for t in range(length - 1)]
    return ModuleChain(ring, tuple(ranks), tuple(incs))
