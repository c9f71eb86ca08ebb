"""Dold-Kan correspondence and Dold-Puppe power operations.

Conventions
-----------
A monotone surjection ``[n] -> [m]`` is stored as its *jump set*
``J ⊂ {0, …, n-1}`` (``σ(j+1) = σ(j) + 1`` exactly for ``j ∈ J``), so ``m = |J|``.
``Γ(C)_n`` has one copy of ``C_m`` per surjection; its basis is the list of
triples ``(m, J, x)`` in lexicographic order.  Structure maps act by
epi-mono factorization ``σθ = δε``: the summand is moved to ``ε`` and ``x`` is
sent to ``x`` when ``δ = id``, to ``d x`` when ``δ`` is the coface skipping 0,
and to 0 otherwise.  The normalized complex is ``N_n = ∩_{i≥1} ker d_i`` with
differential ``d_0``; with these choices ``N(Γ C) = C`` on the nose.

Powers of complexes are computed on the Moore quotient ``A_n / D_n`` whose
basis is the set of nondegenerate wedges of Γ-basis elements (a wedge is
degenerate when every factor lies in the image of one common ``s_j``).  That
complex is isomorphic to the normalized complex and its basis only depends on
the ranks, never on the differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .complexes import ChainComplex, ChainMap, ComplexError, is_admissible_mono
from .linalg import (
    Matrix, exterior_power_matrix, inverse, kernel_basis, kronecker, smith_normal_form,
    solve, symmetric_power_matrix, vstack, wedge_vectors,
)
from .rings import RingTag, RingError


class SimplicialError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An internal invariant of a computation failed."""


# ---------------------------------------------------------------------------
# surjections and their action

def surjection_values(J, n: int):
    vals = [0] * (n + 1)
    c = 0
    for i in range(1, n + 1):
        if i - 1 in J:
            c += 1
        vals[i] = c
    return vals


def _act(J: tuple, n: int, theta: tuple):
    """Pull the summand indexed by ``J`` at level ``n`` back along ``theta``.

    ``theta`` lists the values of a monotone map ``[n'] -> [n]``.  Returns
    ``(kind, J')`` with kind in {"id", "d", "zero"}.
    """
    sv = surjection_values(J, n)
    m = len(J)
    w = [sv[t] for t in theta]
    image = set(w)
    if len(image) == m + 1:
        kind = "id"
    elif image == set(range(1, m + 1)):
        kind = "d"
        w = [v - 1 for v in w]
    else:
        return "zero", None
    Jn = tuple(a for a in range(len(w) - 1) if w[a + 1] == w[a] + 1)
    return kind, Jn


def face_theta(n: int, i: int) -> tuple:
    """Coface ``[n-1] -> [n]`` skipping ``i``."""
    return tuple(a if a < i else a + 1 for a in range(n))


def degeneracy_theta(n: int, i: int) -> tuple:
    """Codegeneracy ``[n+1] -> [n]`` hitting ``i`` twice."""
    return tuple(a if a <= i else a - 1 for a in range(n + 2))


def gamma_basis(ranks, n: int):
    out = []
    top = len(ranks) - 1
    for m in range(0, min(n, top) + 1):
        if ranks[m] == 0:
            continue
        for J in combinations(range(n), m):
            for x in range(ranks[m]):
                out.append((m, J, x))
    return out


# ---------------------------------------------------------------------------

class SimplicialModule:
    """Levels ``0..bound`` of a simplicial free module with face/degeneracy matrices.

    ``faces[(n, i)]`` is ``d_i: A_n -> A_{n-1}`` and ``degens[(n, i)]`` is
    ``s_i: A_n -> A_{n+1}``.
    """

    def __init__(self, ring: RingTag, ranks, faces, degens, *, check: bool = True):
        self.ring = ring
        self.ranks = tuple(ranks)
        self.faces = dict(faces)
        self.degens = dict(degens)
        L = self.bound
        for n in range(1, L + 1):
            for i in range(n + 1):
                M = self.faces.get((n, i))
                if M is None or M.shape != (self.ranks[n - 1], self.ranks[n]):
                    raise SimplicialError(f"face d_{i} at level {n} missing or misshapen")
        for n in range(0, L):
            for i in range(n + 1):
                M = self.degens.get((n, i))
                if M is None or M.shape != (self.ranks[n + 1], self.ranks[n]):
                    raise SimplicialError(f"degeneracy s_{i} at level {n} missing or misshapen")
        if check:
            bad = self.identity_violations()
            if bad:
                raise SimplicialError("simplicial identity fails: " + bad[0])

    @property
    def bound(self) -> int:
        return len(self.ranks) - 1

    def d(self, n, i):
        return self.faces[(n, i)]

    def s(self, n, i):
        return self.degens[(n, i)]

    def identity_violations(self) -> list[str]:
        out = []
        L = self.bound
        d, s = self.d, self.s
        for n in range(2, L + 1):
            for j in range(n + 1):
                for i in range(j):
                    if d(n - 1, i) @ d(n, j) != d(n - 1, j - 1) @ d(n, i):
                        out.append(f"d{i} d{j} = d{j - 1} d{i} at level {n}")
        for n in range(0, L):
            for j in range(n + 1):
                I = Matrix.identity(self.ring, self.ranks[n])
                if d(n + 1, j) @ s(n, j) != I or d(n + 1, j + 1) @ s(n, j) != I:
                    out.append(f"d{j} s{j} = d{j + 1} s{j} = id at level {n}")
                for i in range(n + 2):
                    if i < j:
                        if d(n + 1, i) @ s(n, j) != s(n - 1, j - 1) @ d(n, i):
                            out.append(f"d{i} s{j} = s{j - 1} d{i} at level {n}")
                    elif i > j + 1:
                        if d(n + 1, i) @ s(n, j) != s(n - 1, j) @ d(n, i - 1):
                            out.append(f"d{i} s{j} = s{j} d{i - 1} at level {n}")
        for n in range(0, L - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if s(n + 1, i) @ s(n, j) != s(n + 1, j + 1) @ s(n, i):
                        out.append(f"s{i} s{j} = s{j + 1} s{i} at level {n}")
        return out

    def map_levels(self, fn) -> "SimplicialModule":
        """Apply a functor on matrices levelwise (rank computed from identities)."""
        faces = {key: fn(M) for key, M in self.faces.items()}
        degens = {key: fn(M) for key, M in self.degens.items()}
        ranks = [fn(Matrix.identity(self.ring, r)).rows for r in self.ranks]
        return SimplicialModule(self.ring, ranks, faces, degens, check=False)

    def __repr__(self):
        return f"SimplicialModule[{self.ring.name}](ranks={list(self.ranks)})"


def gamma(C: ChainComplex, bound: int) -> SimplicialModule:
    """Γ(C) truncated to levels ``0..bound``."""
    if bound < C.top:
        raise SimplicialError(f"bound {bound} is below the top degree {C.top}")
    ring = C.ring
    bases = [gamma_basis(C.ranks, n) for n in range(bound + 2)]
    index = [{b: i for i, b in enumerate(B)} for B in bases]

    def structure(n_src, n_tgt, theta):
        entries = {}
        for col, (m, J, x) in enumerate(bases[n_src]):
            kind, Jn = _act(J, n_src, theta)
            if kind == "id":
                entries[(index[n_tgt][(m, Jn, x)], col)] = ring.one
            elif kind == "d":
                dm = C.d(m)
                for y in range(C.rank(m - 1)):
                    v = dm[y, x]
                    if v != 0:
                        entries[(index[n_tgt][(m - 1, Jn, y)], col)] = v
        return Matrix.from_sparse(ring, len(bases[n_tgt]), len(bases[n_src]), entries)

    faces = {(n, i): structure(n, n - 1, face_theta(n, i))
             for n in range(1, bound + 1) for i in range(n + 1)}
    degens = {(n, i): structure(n, n + 1, degeneracy_theta(n, i))
              for n in range(bound) for i in range(n + 1)}
    return SimplicialModule(ring, [len(bases[n]) for n in range(bound + 1)], faces, degens)


def normalize(A: SimplicialModule) -> ChainComplex:
    """N(A): ``N_n = ∩_{i=1}^n ker d_i`` with differential induced by ``d_0``."""
    ring = A.ring
    K = []
    for n in range(A.bound + 1):
        if n == 0:
            K.append(Matrix.identity(ring, A.ranks[0]))
            continue
        stacked = vstack(ring, [A.d(n, i) for i in range(1, n + 1)], A.ranks[n])
        K.append(kernel_basis(stacked))
    diffs = []
    for n in range(1, A.bound + 1):
        img = A.d(n, 0) @ K[n]
        X = solve(K[n - 1], img)
        if X is None:
            raise ConsistencyError(f"d_0 does not preserve N at level {n}")
        diffs.append(X)
    return ChainComplex(ring, [k.cols for k in K], diffs)


def levelwise_tensor(A: SimplicialModule, B: SimplicialModule) -> SimplicialModule:
    """Diagonal of the bisimplicial tensor product."""
    L = min(A.bound, B.bound)
    faces = {(n, i): kronecker(A.d(n, i), B.d(n, i)) for n in range(1, L + 1) for i in range(n + 1)}
    degens = {(n, i): kronecker(A.s(n, i), B.s(n, i)) for n in range(L) for i in range(n + 1)}
    return SimplicialModule(A.ring, [A.ranks[n] * B.ranks[n] for n in range(L + 1)], faces,
                            degens, check=False)


def levelwise_exterior(A: SimplicialModule, k: int, functor: str = "exterior") -> SimplicialModule:
    fn = exterior_power_matrix if functor == "exterior" else symmetric_power_matrix
    return A.map_levels(lambda M: fn(M, k))


# ---------------------------------------------------------------------------
# Moore-quotient computation of powers

@dataclass
class PowerData:
    """A power complex together with the labels of its basis in every degree.

    A label is a sorted tuple of Γ-basis elements ``(m, J, x)``.
    """
    complex: ChainComplex
    labels: list = field(default_factory=list)

    def index(self, n):
        return {lab: i for i, lab in enumerate(self.labels[n])}


def _covers(elems, n: int) -> bool:
    mask = 0
    for (_, J, _) in elems:
        for j in J:
            mask |= 1 << j
    return mask == (1 << n) - 1


def _hall_ok(levels_sorted) -> bool:
    return all(lv <= pos for pos, lv in enumerate(levels_sorted, start=1))


def nondegenerate_labels(ranks, n: int, k: int, level_of=None, functor: str = "exterior"):
    """Nondegenerate (and admissible) k-element labels at level ``n``.

    ``level_of(m, x)`` gives the filtration position of basis vector x of
    degree m (all 1 when ``None``); a label is admissible when its sorted
    levels l_(1) <= … satisfy l_(t) <= t.
    """
    basis = gamma_basis(ranks, n)
    top = len(ranks) - 1
    full = (1 << n) - 1
    masks = []
    for (m, J, x) in basis:
        mk = 0
        for j in J:
            mk |= 1 << j
        masks.append(mk)
    repeat = functor == "symmetric"
    out = []

    def rec(start, chosen, mask, left):
        if left == 0:
            if mask == full:
                elems = tuple(basis[i] for i in chosen)
                if level_of is None or _hall_ok(sorted(level_of(m, x) for (m, _, x) in elems)):
                    out.append(elems)
            return
        if bin(full & ~mask).count("1") > left * top:
            return
        for i in range(start, len(basis)):
            rec(i if repeat else i + 1, chosen + [i], mask | masks[i], left - 1)

    rec(0, [], 0, k)
    return out


def _expand(vectors, ring: RingTag, functor: str):
    if functor == "exterior":
        return wedge_vectors(vectors, ring)
    acc = {(): ring.one}
    for v in vectors:
        nxt = {}
        for S, c in acc.items():
            for i, a in v.items():
                T = tuple(sorted(S + (i,)))
                nxt[T] = nxt.get(T, 0) + c * a
        acc = {S: c for S, c in nxt.items() if c}
    if ring.kind == "Fp":
        acc = {S: c % ring.p for S, c in acc.items() if c % ring.p}
    return acc


def _face_image(C: ChainComplex, elem, n: int, i: int):
    m, J, x = elem
    kind, Jn = _act(J, n, face_theta(n, i))
    if kind == "id":
        return {(m, Jn, x): C.ring.one}
    if kind == "d":
        dm = C.d(m)
        return {(m - 1, Jn, y): dm[y, x] for y in range(C.rank(m - 1)) if dm[y, x] != 0}
    return {}


def power_data(C: ChainComplex, k: int, *, level_of=None, functor: str = "exterior",
               slack: int = 2) -> PowerData:
    """The k-th power of C (exterior or symmetric) on nondegenerate labels."""
    if k < 1:
        raise ValueError("k must be positive")
    if functor not in ("exterior", "symmetric"):
        raise ValueError(f"unknown functor {functor!r}")
    C = C.trimmed()
    ring = C.ring
    top = k * C.top
    labels = [nondegenerate_labels(C.ranks, n, k, level_of, functor) for n in range(top + 1)]
    for n in range(top + 1, top + slack + 1):
        extra = nondegenerate_labels(C.ranks, n, k, level_of, functor)
        if extra:
            raise ConsistencyError(f"power has {len(extra)} basis elements at level {n} > {top}")
    diffs = []
    for n in range(1, top + 1):
        tgt_index = {lab: r for r, lab in enumerate(labels[n - 1])}
        face_cache = {}
        entries = {}
        for col, lab in enumerate(labels[n]):
            for i in range(n + 1):
                vecs = []
                for e in lab:
                    key = (e, i)
                    if key not in face_cache:
                        face_cache[key] = _face_image(C, e, n, i)
                    vecs.append(face_cache[key])
                if functor == "exterior" and any(not v for v in vecs):
                    continue
                sign = -1 if i % 2 else 1
                for T, c in _expand(vecs, ring, functor).items():
                    if not _covers(T, n - 1):
                        continue
                    row = tgt_index.get(T)
                    if row is None:
                        raise ConsistencyError(f"face image {T} is not an admissible label")
                    entries[(row, col)] = entries.get((row, col), 0) + sign * c
        diffs.append(Matrix.from_sparse(ring, len(labels[n - 1]), len(labels[n]),
                                        {key: v for key, v in entries.items() if v}))
    cx = ChainComplex(ring, [len(l) for l in labels], diffs)
    return PowerData(cx, labels)


def dold_puppe_power(C: ChainComplex, k: int, *, functor: str = "exterior",
                     slack: int = 2) -> ChainComplex:
    """⋀^k C = N(Λ^k Γ C), supported in ``[0, k·top(C)]``; ⋀^1 C = C."""
    return power_data(C, k, functor=functor, slack=slack).complex


def power_map(f: ChainMap, k: int, src: PowerData, tgt: PowerData,
              functor: str = "exterior") -> ChainMap:
    """⋀^k f between already computed power complexes."""
    ring = f.ring
    comps = []
    for n in range(len(src.labels)):
        tindex = tgt.index(n) if n < len(tgt.labels) else {}
        rows = len(tgt.labels[n]) if n < len(tgt.labels) else 0
        entries = {}
        for col, lab in enumerate(src.labels[n]):
            vecs = []
            for (m, J, x) in lab:
                fm = f.f(m)
                vecs.append({(m, J, y): fm[y, x] for y in range(fm.rows) if fm[y, x] != 0})
            for T, c in _expand(vecs, ring, functor).items():
                row = tindex.get(T)
                if row is None:
                    raise ConsistencyError(f"image label {T} missing from target power")
                entries[(row, col)] = entries.get((row, col), 0) + c
        comps.append(Matrix.from_sparse(ring, rows, len(src.labels[n]),
                                        {key: v for key, v in entries.items() if v}))
    return ChainMap(src.complex, tgt.complex, comps)


def dold_puppe_power_map(f: ChainMap, k: int, *, functor: str = "exterior") -> ChainMap:
    src = power_data(f.source, k, functor=functor)
    tgt = power_data(f.target, k, functor=functor)
    return power_map(f, k, src, tgt, functor)


def simplicial_tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """C ⊗_Δ D = N(ΓC ⊗ ΓD) on the diagonal, via nondegenerate pairs."""
    if C.ring != D.ring:
        raise RingError(f"ring mismatch: {C.ring} vs {D.ring}")
    C, D = C.trimmed(), D.trimmed()
    ring = C.ring
    top = C.top + D.top
    labels = []
    for n in range(top + 1):
        bc, bd = gamma_basis(C.ranks, n), gamma_basis(D.ranks, n)
        labels.append([(a, b) for a in bc for b in bd if _covers((a, b), n)])
    diffs = []
    for n in range(1, top + 1):
        tindex = {lab: r for r, lab in enumerate(labels[n - 1])}
        entries = {}
        for col, (a, b) in enumerate(labels[n]):
            for i in range(n + 1):
                va, vb = _face_image(C, a, n, i), _face_image(D, b, n, i)
                sign = -1 if i % 2 else 1
                for ea, ca in va.items():
                    for eb, cb in vb.items():
                        if not _covers((ea, eb), n - 1):
                            continue
                        row = tindex[(ea, eb)]
                        entries[(row, col)] = entries.get((row, col), 0) + sign * ca * cb
        diffs.append(Matrix.from_sparse(ring, len(labels[n - 1]), len(labels[n]),
                                        {key: v for key, v in entries.items() if v}))
    return ChainComplex(ring, [len(l) for l in labels], diffs)


# ---------------------------------------------------------------------------
# sequences of admissible monomorphisms

def complete_basis(Y: Matrix) -> Matrix:
    """Extend the columns of Y (injective, free cokernel) to an invertible matrix [Y | Z]."""
    ring = Y.ring
    r, s = Y.shape
    snf = smith_normal_form(Y)
    if snf.rank != s or any(not ring.is_unit(x) for x in snf.diag):
        raise ComplexError("columns do not span a direct summand")
    Linv = inverse(snf.left)
    Z = Linv.submatrix(range(r), range(s, r))
    return Y.hstack(Z)


@dataclass
class MonoSequenceOfComplexes:
    """``V_1 ↣ V_2 ↣ … ↣ V_k`` given by complexes and the inclusion chain maps."""
    complexes: list
    inclusions: list

    def __post_init__(self):
        if len(self.inclusions) != len(self.complexes) - 1:
            raise ComplexError("need exactly one inclusion between consecutive complexes")
        for t, f in enumerate(self.inclusions):
            if f.source != self.complexes[t] or f.target != self.complexes[t + 1]:
                raise ComplexError(f"inclusion {t + 1} has wrong source or target")
            if not is_admissible_mono(f):
                raise ComplexError(f"inclusion {t + 1} is not an admissible monomorphism")

    @property
    def length(self) -> int:
        return len(self.complexes)

    def embeddings(self):
        """Composite chain maps ``V_t -> V_k``."""
        last = self.complexes[-1]
        emb = [ChainMap.identity(last)]
        for f in reversed(self.inclusions):
            emb.insert(0, emb[0].compose(f))
        return emb

    def adapted(self):
        """Rebase ``V_k`` so every ``V_t`` is spanned by basis vectors.

        Returns ``(complex, levels, bases)``: ``levels[n][x]`` is the least t
        with basis vector x of degree n in ``V_t`` and ``bases[n]`` holds the
        new basis in old coordinates.
        """
        last = self.complexes[-1]
        ring = last.ring
        emb = self.embeddings()
        bases, levels = [], []
        for n in range(last.top + 1):
            B = emb[0].f(n)
            lv = [1] * B.cols
            for t in range(1, len(emb)):
                E = emb[t].f(n)
                Y = solve(E, B)
                if Y is None:
                    raise ConsistencyError("sequence is not nested")
                full = complete_basis(Y)
                extra = E @ full.submatrix(range(full.rows), range(Y.cols, full.cols))
                B = B.hstack(extra)
                lv += [t + 1] * extra.cols
            bases.append(B)
            levels.append(lv)
        return last.rebased(bases), levels, bases


def wedge_data(S: MonoSequenceOfComplexes, *, slack: int = 2) -> PowerData:
    cx, levels, _ = S.adapted()
    return power_data(cx, S.length, level_of=lambda m, x: levels[m][x], slack=slack)


def wedge_of_sequence(S: MonoSequenceOfComplexes) -> ChainComplex:
    """V_1 ∧ … ∧ V_k: image of V_1 ⊗ … ⊗ V_k in Λ^k V_k, levelwise on Γ, then N."""
    if S.length == 1:
        return S.complexes[0]
    return wedge_data(S).complex
