"""Instance checks of the axioms (E1)–(E5) for the standard exterior assembly.

Module level: a chain ``V_1 ↣ … ↣ V_k`` of based free modules is held through
its embeddings into the last module ``M = V_k = R^N``.  The wedge
``V_1 ∧ … ∧ V_k`` is the image lattice of all ``v_1 ∧ … ∧ v_k`` (``v_t`` a basis
vector of ``V_t``) inside ``Λ^k M`` with the lexicographic subset basis.  The
product (E1) is ``x ⊗ y ↦ x ∧ y``; the map (E2) is the coproduct
``Λ^{a+b} M → Λ^a M ⊗ Λ^b M`` followed by ``Λ^b`` of a quotient map
``M → M/W``.  Commutativity (E3, E4) holds on the wedge submodules only,
so every comparison is made after restricting to them.

Complex level: :func:`check_complex_E5` realizes
``0 → V ∧ W → ⋀²W → ⋀²(W/V) → 0`` with the Dold-Puppe machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .complexes import ChainComplex, ChainMap, ComplexError
from .linalg import (
    Matrix, exterior_power_matrix, image_basis, inverse, invariant_factors, kronecker,
    solve, wedge_vectors,
)
from .rings import RingTag
from .simplicial import MonoSequenceOfComplexes, complete_basis, power_data, power_map


class AxiomError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleChain:
    """``V_1 ↣ … ↣ V_k``: ranks and inclusion matrices ``V_t -> V_{t+1}``."""
    ring: RingTag
    ranks: tuple
    inclusions: tuple

    def __post_init__(self):
        if len(self.inclusions) != len(self.ranks) - 1:
            raise AxiomError("need one inclusion between consecutive modules")
        for t, inc in enumerate(self.inclusions):
            if inc.shape != (self.ranks[t + 1], self.ranks[t]):
                raise AxiomError(f"inclusion {t + 1} has shape {inc.shape}")
            if not _is_split_mono(inc):
                raise AxiomError(f"inclusion {t + 1} is not an admissible monomorphism")

    @property
    def length(self) -> int:
        return len(self.ranks)

    @property
    def ambient(self) -> int:
        return self.ranks[-1]

    def embeddings(self) -> list:
        out = [Matrix.identity(self.ring, self.ranks[-1])]
        for inc in reversed(self.inclusions):
            out.insert(0, out[0] @ inc)
        return out


def _is_split_mono(A: Matrix) -> bool:
    inv = invariant_factors(A)
    return len(inv) == A.cols and all(A.ring.is_unit(x) for x in inv)


# ---------------------------------------------------------------------------
# multilinear building blocks in the lexicographic subset bases

@lru_cache(maxsize=None)
def _subsets(n: int, k: int) -> tuple:
    return tuple(combinations(range(n), k))


def _ext(A: Matrix, k: int) -> Matrix:
    if k == 0:
        return Matrix.identity(A.ring, 1)
    return exterior_power_matrix(A, k)


def _merge_sign(S, T) -> int:
    """Sign of the shuffle putting S followed by T into increasing order."""
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


def mu_matrix(ring: RingTag, n: int, a: int, b: int) -> Matrix:
    """Λ^a R^n ⊗ Λ^b R^n → Λ^{a+b} R^n, ``e_S ⊗ e_T ↦ e_S ∧ e_T``."""
    rows = {S: i for i, S in enumerate(_subsets(n, a + b))}
    tb = _subsets(n, b)
    entries = {}
    for i, S in enumerate(_subsets(n, a)):
        for j, T in enumerate(tb):
            if set(S) & set(T):
                continue
            U = tuple(sorted(S + T))
            entries[(rows[U], i * len(tb) + j)] = _merge_sign(S, T)
    return Matrix.from_sparse(ring, len(rows), len(_subsets(n, a)) * len(tb), entries)


def delta_matrix(ring: RingTag, n: int, a: int, b: int) -> Matrix:
    """Coproduct Λ^{a+b} R^n → Λ^a R^n ⊗ Λ^b R^n."""
    sa = {S: i for i, S in enumerate(_subsets(n, a))}
    tb = {T: j for j, T in enumerate(_subsets(n, b))}
    entries = {}
    for col, U in enumerate(_subsets(n, a + b)):
        for S in combinations(U, a):
            T = tuple(x for x in U if x not in S)
            entries[(sa[S] * len(tb) + tb[T], col)] = _merge_sign(S, T)
    return Matrix.from_sparse(ring, len(sa) * len(tb), len(_subsets(n, a + b)), entries)


def wedge_module(embs, ring: RingTag, n: int) -> Matrix:
    """Basis (columns) of the image of E_1 ⊗ … ⊗ E_a in Λ^a R^n."""
    a = len(embs)
    if a == 0:
        return Matrix.identity(ring, 1)
    index = {S: i for i, S in enumerate(_subsets(n, a))}
    cols = []
    for choice in product(*[range(E.cols) for E in embs]):
        vecs = [{i: E[i, c] for i in range(n) if E[i, c] != 0} for E, c in zip(embs, choice)]
        w = wedge_vectors(vecs, ring)
        if w:
            col = [ring.zero] * len(index)
            for S, c in w.items():
                col[index[S]] = c
            cols.append(col)
    if not cols:
        return Matrix.zeros(ring, len(index), 0)
    return image_basis(Matrix.from_columns(ring, cols, len(index)))


def quotient_map(E: Matrix):
    """``(q, s)``: a quotient ``M -> M/W`` for W = image of E, and a section of it."""
    ring = E.ring
    n, r = E.shape
    P = complete_basis(E)
    Pinv = inverse(P)
    q = Pinv.submatrix(range(r, n), range(n))
    s = P.submatrix(range(n), range(r, n))
    return q, s


def restrict(F: Matrix, src: Matrix, tgt: Matrix):
    """Coordinates of F restricted to span(src), landing in span(tgt), or None."""
    return solve(tgt, F @ src)


def _id(ring, n):
    return Matrix.identity(ring, n)


def e2_matrix(ring: RingTag, n: int, a: int, b: int, q: Matrix) -> Matrix:
    """(id ⊗ Λ^b q) ∘ Δ_{a,b}: Λ^{a+b} M → Λ^a M ⊗ Λ^b (M/W)."""
    return kronecker(_id(ring, len(_subsets(n, a))), _ext(q, b)) @ delta_matrix(ring, n, a, b)


# ---------------------------------------------------------------------------
# axiom checks on one chain

@dataclass
class AxiomReport:
    name: str
    ok: bool
    detail: str = ""


def check_E1(chain: ModuleChain, a: int) -> AxiomReport:
    """The product lands in the wedge of the concatenated chain."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    b = chain.length - a
    src = kronecker(wedge_module(embs[:a], ring, n), wedge_module(embs[a:], ring, n))
    tgt = wedge_module(embs, ring, n)
    ok = restrict(mu_matrix(ring, n, a, b), src, tgt) is not None
    return AxiomReport(f"E1[{a},{b}]", ok)


def check_E2(chain: ModuleChain, a: int) -> AxiomReport:
    """The coproduct followed by the quotient lands in V∧…∧W ⊗ X/W∧…∧Y/W."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    b = chain.length - a
    q, _ = quotient_map(embs[a - 1])
    src = wedge_module(embs, ring, n)
    tgt = kronecker(wedge_module(embs[:a], ring, n),
                    wedge_module([q @ E for E in embs[a:]], ring, q.rows))
    ok = restrict(e2_matrix(ring, n, a, b, q), src, tgt) is not None
    return AxiomReport(f"E2[{a},{b}]", ok)


def check_E3(chain: ModuleChain, a: int, b: int) -> AxiomReport:
    """Product then split at V equals split then product in the quotient by V."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    c = chain.length - a - b
    q, _ = quotient_map(embs[a - 1])
    nq = q.rows
    src = kronecker(wedge_module(embs[: a + b], ring, n), wedge_module(embs[a + b:], ring, n))
    path1 = e2_matrix(ring, n, a, b + c, q) @ mu_matrix(ring, n, a + b, c)
    first = kronecker(e2_matrix(ring, n, a, b, q), _ext(q, c))
    path2 = kronecker(_id(ring, len(_subsets(n, a))), mu_matrix(ring, nq, b, c)) @ first
    ok = path1 @ src == path2 @ src
    tgt = kronecker(wedge_module(embs[:a], ring, n),
                    wedge_module([q @ E for E in embs[a:]], ring, nq))
    ok = ok and restrict(path1, src, tgt) is not None
    return AxiomReport(f"E3[{a},{b},{c}]", ok)


def check_E4(chain: ModuleChain, a: int, b: int) -> AxiomReport:
    """Product then split at X equals split at X then product."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    c = chain.length - a - b
    q, _ = quotient_map(embs[a + b - 1])
    src = kronecker(wedge_module(embs[:a], ring, n), wedge_module(embs[a:], ring, n))
    path1 = e2_matrix(ring, n, a + b, c, q) @ mu_matrix(ring, n, a, b + c)
    first = kronecker(_id(ring, len(_subsets(n, a))), e2_matrix(ring, n, b, c, q))
    path2 = kronecker(mu_matrix(ring, n, a, b), _id(ring, len(_subsets(q.rows, c)))) @ first
    ok = path1 @ src == path2 @ src
    tgt = kronecker(wedge_module(embs[: a + b], ring, n),
                    wedge_module([q @ E for E in embs[a + b:]], ring, q.rows))
    ok = ok and restrict(path1, src, tgt) is not None
    return AxiomReport(f"E4[{a},{b},{c}]", ok)


def check_associativity(chain: ModuleChain, a: int, b: int) -> AxiomReport:
    """μ(μ ⊗ id) = μ(id ⊗ μ) on the three wedge factors."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    c = chain.length - a - b
    src = kronecker(kronecker(wedge_module(embs[:a], ring, n),
                              wedge_module(embs[a:a + b], ring, n)),
                    wedge_module(embs[a + b:], ring, n))
    na, nb, nc = (len(_subsets(n, t)) for t in (a, b, c))
    left = mu_matrix(ring, n, a + b, c) @ kronecker(mu_matrix(ring, n, a, b), _id(ring, nc))
    right = mu_matrix(ring, n, a, b + c) @ kronecker(_id(ring, na), mu_matrix(ring, n, b, c))
    return AxiomReport(f"assoc[{a},{b},{c}]", left @ src == right @ src)


def check_coassociativity(chain: ModuleChain, a: int, b: int) -> AxiomReport:
    """Splitting at X then at V agrees with splitting at V then at X/V."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    c = chain.length - a - b
    qv, _ = quotient_map(embs[a - 1])
    qrel, _ = quotient_map(image_basis(qv @ embs[a + b - 1]))
    qx = qrel @ qv
    src = wedge_module(embs, ring, n)
    path1 = kronecker(e2_matrix(ring, n, a, b, qv), _id(ring, len(_subsets(qx.rows, c)))) \
        @ e2_matrix(ring, n, a + b, c, qx)
    path2 = kronecker(_id(ring, len(_subsets(n, a))), e2_matrix(ring, qv.rows, b, c, qrel)) \
        @ e2_matrix(ring, n, a, b + c, qv)
    return AxiomReport(f"coassoc[{a},{b},{c}]", path1 @ src == path2 @ src)


def adapted_basis(chain: ModuleChain):
    """Invertible P whose first ranks[t] columns span V_t, for every t."""
    embs = chain.embeddings()
    B = embs[0]
    for E in embs[1:]:
        Y = solve(E, B)
        full = complete_basis(Y)
        B = B.hstack(E @ full.submatrix(range(full.rows), range(Y.cols, full.cols)))
    return B


def filtration_endomorphism(chain: ModuleChain, rng) -> Matrix:
    """A random endomorphism of M mapping every V_t into itself."""
    ring, n = chain.ring, chain.ambient
    P = adapted_basis(chain)
    level = []
    for t, r in enumerate(chain.ranks):
        level += [t] * (r - len(level))
    T = Matrix.from_rows(ring, [[ring.coerce(rng.randint(-3, 3)) if level[i] <= level[j] else 0
                                 for j in range(n)] for i in range(n)], n)
    return P @ T @ inverse(P)


def check_naturality(chain: ModuleChain, a: int, phi: Matrix) -> AxiomReport:
    """The (E1) and (E2) maps commute with a filtration-preserving φ."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    b = chain.length - a
    ok = True
    for m in range(1, chain.length + 1):
        W = wedge_module(embs[:m], ring, n)
        if solve(W, _ext(phi, m) @ W) is None:
            ok = False
    src = kronecker(wedge_module(embs[:a], ring, n), wedge_module(embs[a:], ring, n))
    mu = mu_matrix(ring, n, a, b)
    ok = ok and (_ext(phi, a + b) @ mu @ src == mu @ kronecker(_ext(phi, a), _ext(phi, b)) @ src)
    q, s = quotient_map(embs[a - 1])
    phibar = q @ phi @ s
    ok = ok and q @ phi == phibar @ q
    whole = wedge_module(embs, ring, n)
    F = e2_matrix(ring, n, a, b, q)
    ok = ok and (kronecker(_ext(phi, a), _ext(phibar, b)) @ F @ whole == F @ _ext(phi, a + b) @ whole)
    return AxiomReport(f"natural[{a},{b}]", ok)


@dataclass
class E5Data:
    alpha: Matrix
    beta: Matrix
    dims: tuple


def e5_sequence(chain: ModuleChain, p: int) -> E5Data:
    """0 → …∧W'∧… → …∧W∧… → (…) ⊗ W/W'∧… → 0 with W' = V_{p+1}, W = V_{p+2}."""
    ring, n, embs = chain.ring, chain.ambient, chain.embeddings()
    if not 0 <= p <= chain.length - 2:
        raise AxiomError("position out of range")
    prefix, wp, w, suffix = embs[:p], embs[p], embs[p + 1], embs[p + 2:]
    k = chain.length - 1
    A1 = wedge_module(prefix + [wp] + suffix, ring, n)
    A2 = wedge_module(prefix + [w] + suffix, ring, n)
    q, _ = quotient_map(wp)
    A3 = kronecker(wedge_module(prefix, ring, n),
                   wedge_module([q @ E for E in [w] + suffix], ring, q.rows))
    alpha = solve(A2, A1)
    beta = restrict(e2_matrix(ring, n, p, k - p, q), A2, A3)
    if alpha is None or beta is None:
        raise AxiomError("E5 maps do not land in the expected terms")
    return E5Data(alpha, beta, (A1.cols, A2.cols, A3.cols))


def short_exact(alpha: Matrix, beta: Matrix) -> bool:
    """0 → A' →α A →β A'' → 0 is split exact over a PID, decided by invariant factors."""
    ring = alpha.ring
    if alpha.rows != beta.cols:
        return False
    if not (beta @ alpha).is_zero():
        return False
    inj = invariant_factors(alpha)
    sur = invariant_factors(beta)
    return (len(inj) == alpha.cols and all(ring.is_unit(x) for x in inj)
            and len(sur) == beta.rows and all(ring.is_unit(x) for x in sur)
            and alpha.cols + beta.rows == alpha.rows)


def check_E5(chain: ModuleChain, p: int) -> AxiomReport:
    data = e5_sequence(chain, p)
    return AxiomReport(f"E5[{p}]", short_exact(data.alpha, data.beta), f"dims {data.dims}")


def check_chain(chain: ModuleChain, rng=None) -> list:
    """Every applicable axiom instance for a chain (E5 treats it as W' ↣ W inserted)."""
    out = []
    k = chain.length
    for a in range(1, k):
        out.append(check_E1(chain, a))
        out.append(check_E2(chain, a))
        if rng is not None:
            out.append(check_naturality(chain, a, filtration_endomorphism(chain, rng)))
    for a in range(1, k):
        for b in range(1, k - a):
            out.append(check_E3(chain, a, b))
            out.append(check_E4(chain, a, b))
            out.append(check_associativity(chain, a, b))
            out.append(check_coassociativity(chain, a, b))
    for p in range(0, k - 1):
        out.append(check_E5(chain, p))
    return out


# ---------------------------------------------------------------------------
# complex level

def check_complex_E5(f: ChainMap) -> AxiomReport:
    """0 → V∧W → ⋀²W → ⋀²(W/V) → 0 for an admissible mono f: V ↣ W, degreewise."""
    seq = MonoSequenceOfComplexes([f.source, f.target], [f])
    cx, levels, _ = seq.adapted()
    ring = cx.ring
    sub = power_data(cx, 2, level_of=lambda m, x: levels[m][x])
    whole = power_data(cx, 2)
    keep = [[x for x in range(cx.rank(n)) if levels[n][x] == 2] for n in range(cx.top + 1)]
    qranks = [len(kp) for kp in keep]
    qdiffs = [cx.d(n).submatrix(keep[n - 1], keep[n]) for n in range(1, cx.top + 1)]
    try:
        Q = ChainComplex(ring, qranks, qdiffs)
    except ComplexError:
        return AxiomReport("complex-E5", False, "quotient differential is not square-zero")
    proj = ChainMap(cx, Q, [Matrix.from_sparse(ring, qranks[n], cx.rank(n),
                                               {(i, x): ring.one for i, x in enumerate(keep[n])})
                            for n in range(cx.top + 1)])
    quot = power_data(Q, 2)
    alpha = power_map(ChainMap.identity(cx), 2, sub, whole)
    beta = power_map(proj, 2, whole, quot)
    ok = True
    for n in range(len(whole.labels)):
        if not short_exact(alpha.f(n), beta.f(n)):
            ok = False
    dims = tuple((sub.complex.rank(n), whole.complex.rank(n), quot.complex.rank(n))
                 for n in range(len(whole.labels)))
    return AxiomReport("complex-E5", ok, f"ranks {dims}")
