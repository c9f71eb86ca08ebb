"""Representations of finite groups over ℚ and the representation ring.

Group elements are ``0 … n-1`` with ``0`` the identity.  A representation
stores one invertible matrix per element.  Classes in K_0 are compared by
characters, which is complete over ℚ because the group algebra is semisimple;
prime-field coefficients are refused for that comparison since traces mod p
forget multiplicities.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, prod

from .lambda_ring import LambdaPoint, check_composition_axiom, check_sum_rule
from .symfun import universal_P_compose
from .linalg import Matrix, direct_sum, exterior_power_matrix, kronecker, solve
from .rings import QQ, RingError, RingTag


class GroupError(ValueError):
    pass


class RepError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, table, name: str = "table"):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise GroupError("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for row in table for x in row):
            raise GroupError("table entries must be element indices")
        if any(table[0][g] != g or table[g][0] != g for g in range(n)):
            raise GroupError("element 0 must be the identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise GroupError(f"associativity fails at ({a}, {b}, {c})")
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if table[g][h] == 0]
            if len(hs) != 1 or table[hs[0]][g] != 0:
                raise GroupError(f"element {g} has no two-sided inverse")
            inv.append(hs[0])
        self.table = table
        self.inverse = tuple(inv)
        self.name = name
        seen = set()
        classes = []
        for g in range(n):
            if g in seen:
                continue
            cls = sorted({table[table[h][g]][inv[h]] for h in range(n)})
            seen.update(cls)
            classes.append(tuple(cls))
        self.classes = tuple(classes)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, g: int, j: int) -> int:
        out = 0
        for _ in range(j):
            out = self.table[out][g]
        return out

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # presets -------------------------------------------------------------
    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise GroupError("cyclic group needs n >= 1")
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}")

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        perms = list(permutations(range(3)))
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
        group = cls(table, "S3")
        group.perms = perms
        return group

    @classmethod
    def klein4(cls) -> "FiniteGroup":
        return cls([[a ^ b for b in range(4)] for a in range(4)], "C2xC2")

    @classmethod
    def preset(cls, name: str) -> "FiniteGroup":
        text = name.strip().lower().replace(" ", "")
        m = re.fullmatch(r"(?:c|cyclic)(\d+)", text)
        if m:
            return cls.cyclic(int(m.group(1)))
        if text in ("s3", "symmetric3", "sym3"):
            return cls.symmetric3()
        if text in ("klein4", "v4", "c2xc2"):
            return cls.klein4()
        raise GroupError(f"unknown group preset {name!r}")


# ---------------------------------------------------------------------------

class GRep:
    """ρ: G -> GL_n(R), one matrix per group element."""

    __slots__ = ("group", "ring", "rank", "matrices")

    def __init__(self, group: FiniteGroup, ring: RingTag, matrices, *, check: bool = True):
        mats = tuple(matrices)
        if len(mats) != group.order:
            raise RepError(f"need {group.order} matrices, got {len(mats)}")
        n = mats[0].rows
        if ring.characteristic and group.order % ring.characteristic == 0:
            raise RepError(f"characteristic {ring.characteristic} divides the group order")
        for g, M in enumerate(mats):
            if M.ring != ring or M.shape != (n, n):
                raise RepError(f"matrix of element {g} has wrong ring or shape")
        self.group = group
        self.ring = ring
        self.rank = n
        self.matrices = mats
        if check:
            bad = self.homomorphism_violations()
            if bad:
                raise RepError(f"not a representation: ρ({bad[0][0]})ρ({bad[0][1]}) != ρ(product)")

    def homomorphism_violations(self) -> list:
        G = self.group
        out = []
        if self.matrices[0] != Matrix.identity(self.ring, self.rank):
            out.append((0, 0))
        for a in range(G.order):
            for b in range(G.order):
                if self.matrices[a] @ self.matrices[b] != self.matrices[G.mul(a, b)]:
                    out.append((a, b))
        return out

    @classmethod
    def from_generators(cls, group: FiniteGroup, ring: RingTag, gens: dict) -> "GRep":
        """Extend ``{element: matrix}`` multiplicatively; the result is verified."""
        if not gens:
            raise RepError("need at least one generator")
        n = next(iter(gens.values())).rows
        mats = {0: Matrix.identity(ring, n)}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g, M in gens.items():
                    b = group.mul(a, g)
                    img = mats[a] @ M
                    if b in mats:
                        if mats[b] != img:
                            raise RepError(f"generators are inconsistent at element {b}")
                    else:
                        mats[b] = img
                        nxt.append(b)
            frontier = nxt
        if len(mats) != group.order:
            raise RepError("generators do not generate the group")
        return cls(group, ring, [mats[g] for g in range(group.order)])

    def __eq__(self, other):
        return isinstance(other, GRep) and (self.group, self.ring, self.matrices) == \
            (other.group, other.ring, other.matrices)

    def __hash__(self):
        return hash((self.group, self.ring, self.matrices))

    def __repr__(self):
        return f"GRep({self.group.name}, rank={self.rank})"


def trivial_rep(G: FiniteGroup, n: int = 1, ring: RingTag = QQ) -> GRep:
    return GRep(G, ring, [Matrix.identity(ring, n)] * G.order, check=False)


def zero_rep(G: FiniteGroup, ring: RingTag = QQ) -> GRep:
    return trivial_rep(G, 0, ring)


def permutation_rep(G: FiniteGroup, action, ring: RingTag = QQ) -> GRep:
    """``action[g]`` is a permutation of points; ρ(g) e_x = e_{action[g][x]}."""
    mats = []
    for g in range(G.order):
        perm = action[g]
        n = len(perm)
        mats.append(Matrix.from_sparse(ring, n, n, {(perm[x], x): ring.one for x in range(n)}))
    return GRep(G, ring, mats)


def regular_rep(G: FiniteGroup, ring: RingTag = QQ) -> GRep:
    return permutation_rep(G, [[G.mul(g, x) for x in range(G.order)] for g in range(G.order)], ring)


def one_dim_rep(G: FiniteGroup, values, ring: RingTag = QQ) -> GRep:
    return GRep(G, ring, [Matrix.from_rows(ring, [[ring.coerce(v)]]) for v in values])


def sign_rep(G: FiniteGroup, ring: RingTag = QQ) -> GRep:
    """Sign of S3 (elements are permutations in lexicographic order)."""
    perms = getattr(G, "perms", None)
    if perms is None:
        raise RepError("sign representation needs a symmetric group preset")

    def sgn(p):
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return -1 if inv % 2 else 1

    return one_dim_rep(G, [sgn(p) for p in perms], ring)


def s3_permutation_rep(G: FiniteGroup, ring: RingTag = QQ) -> GRep:
    return permutation_rep(G, G.perms, ring)


def s3_standard_rep(G: FiniteGroup, ring: RingTag = QQ) -> GRep:
    """The 2-dimensional irreducible: sum-zero vectors, basis e0-e1, e1-e2."""
    P = s3_permutation_rep(G, ring)
    B = Matrix.from_rows(ring, [[1, 0], [-1, 1], [0, -1]], 2)
    mats = [solve(B, M @ B) for M in P.matrices]
    return GRep(G, ring, mats)


def c3_two_dim_rep(G: FiniteGroup, ring: RingTag = QQ) -> GRep:
    """The rational 2-dimensional irreducible of C3: generator ↦ [[0,-1],[1,-1]]."""
    if G.order != 3:
        raise RepError("needs the cyclic group of order 3")
    return GRep.from_generators(G, ring, {1: Matrix.from_rows(ring, [[0, -1], [1, -1]])})


def klein4_characters(G: FiniteGroup, ring: RingTag = QQ) -> list:
    """The four one-dimensional representations of C2 × C2 (elements as bit pairs)."""
    out = []
    for a in range(2):
        for b in range(2):
            vals = [(-1) ** ((a * (g & 1)) + (b * (g >> 1 & 1))) for g in range(4)]
            out.append(one_dim_rep(G, vals, ring))
    return out


def rational_irreducibles(G: FiniteGroup) -> list:
    """All ℚ-irreducibles for the preset groups."""
    if G.name == "C2":
        return [trivial_rep(G), one_dim_rep(G, [1, -1])]
    if G.name == "C3":
        return [trivial_rep(G), c3_two_dim_rep(G)]
    if G.name == "C2xC2":
        return klein4_characters(G)
    if G.name == "S3":
        return [trivial_rep(G), sign_rep(G), s3_standard_rep(G)]
    raise RepError(f"no irreducible list for {G.name}")


# ---------------------------------------------------------------------------

def _same(V: GRep, W: GRep):
    if V.group != W.group:
        raise RepError("representations of different groups")
    if V.ring != W.ring:
        raise RingError(f"ring mismatch: {V.ring} vs {W.ring}")


def direct_sum_rep(V: GRep, W: GRep) -> GRep:
    _same(V, W)
    return GRep(V.group, V.ring, [direct_sum(a, b) for a, b in zip(V.matrices, W.matrices)],
                check=False)


def tensor_rep(V: GRep, W: GRep) -> GRep:
    _same(V, W)
    return GRep(V.group, V.ring, [kronecker(a, b) for a, b in zip(V.matrices, W.matrices)],
                check=False)


def exterior_rep(V: GRep, k: int) -> GRep:
    if k < 0:
        raise RepError("k must be non-negative")
    if k == 0:
        return trivial_rep(V.group, 1, V.ring)
    if k > V.rank:
        return zero_rep(V.group, V.ring)
    return GRep(V.group, V.ring, [exterior_power_matrix(M, k) for M in V.matrices], check=False)


@dataclass(frozen=True)
class Character:
    group: FiniteGroup
    values: tuple  # one trace per conjugacy class

    def __add__(self, other):
        return Character(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, int):
            return Character(self.group, tuple(a * other for a in self.values))
        return Character(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1


def _trace(M: Matrix):
    return sum((M[i, i] for i in range(M.rows)), M.ring.zero)


def character(V: GRep) -> Character:
    return Character(V.group, tuple(_trace(V.matrices[cls[0]]) for cls in V.group.classes))


def class_function(V: GRep) -> list:
    """Traces on every element (not just class representatives)."""
    return [_trace(M) for M in V.matrices]


# ---------------------------------------------------------------------------
# virtual representations

class VirtualRep:
    """Formal ℤ-combination ``Σ c_i [V_i]``."""

    __slots__ = ("group", "ring", "terms")

    def __init__(self, group: FiniteGroup, ring: RingTag, terms=()):
        self.group = group
        self.ring = ring
        self.terms = tuple((int(c), V) for c, V in terms if c)

    @classmethod
    def of(cls, V: GRep) -> "VirtualRep":
        return cls(V.group, V.ring, [(1, V)])

    def __add__(self, other):
        if isinstance(other, int):
            other = VirtualRep(self.group, self.ring, [(other, trivial_rep(self.group, 1, self.ring))])
        return VirtualRep(self.group, self.ring, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return VirtualRep(self.group, self.ring, [(-c, V) for c, V in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return VirtualRep(self.group, self.ring, [(c * other, V) for c, V in self.terms])
        return VirtualRep(self.group, self.ring,
                          [(c * d, tensor_rep(V, W)) for c, V in self.terms for d, W in other.terms])

    __rmul__ = __mul__

    def character(self) -> Character:
        vals = [self.ring.zero] * len(self.group.classes)
        out = Character(self.group, tuple(vals))
        for c, V in self.terms:
            out = out + character(V) * c
        return out

    def rank(self) -> int:
        return sum(c * V.rank for c, V in self.terms)

    def __repr__(self):
        return " + ".join(f"{c}*{V!r}" for c, V in self.terms) or "0"


def k0_equal(x, y) -> bool:
    """Equality of (virtual) classes in K_0 by characters; characteristic 0 only."""
    x = VirtualRep.of(x) if isinstance(x, GRep) else x
    y = VirtualRep.of(y) if isinstance(y, GRep) else y
    if x.group != y.group:
        raise RepError("classes of different groups")
    for r in (x.ring, y.ring):
        if r.characteristic:
            raise RingError("k0_equal is only supported in characteristic 0")
    return x.character() == y.character()


class RepPoint(LambdaPoint):
    """The class of an actual representation in R_G, with λ^i = [Λ^i V]."""

    kind = "representation"

    def __init__(self, V: GRep):
        self.V = V

    def one(self):
        return VirtualRep.of(trivial_rep(self.V.group, 1, self.V.ring))

    def zero(self):
        return VirtualRep(self.V.group, self.V.ring)

    def equal(self, a, b) -> bool:
        return k0_equal(a, b)

    def _coordinate(self, i):
        return VirtualRep.of(exterior_rep(self.V, i))

    def __add__(self, other):
        return RepPoint(direct_sum_rep(self.V, other.V))

    def __mul__(self, other):
        return RepPoint(tensor_rep(self.V, other.V))

    def apply_lambda(self, l):
        return RepPoint(exterior_rep(self.V, l))


MAX_RANK = 2000


def verify_composition_RG(V: GRep, k: int, l: int) -> bool:
    """λ^k(λ^l[V]) = P_{k,l}(λ^1[V], …, λ^{kl}[V]) in R_G, decided by characters."""
    n = V.rank
    sizes = [comb(comb(n, l), k)]
    for a in universal_P_compose(k, l).terms:
        sizes.append(prod(comb(n, i + 1) ** e for i, e in enumerate(a)))
    if max(sizes) > MAX_RANK:
        raise RepError(f"modules of rank {max(sizes)} needed; limit is {MAX_RANK}")
    return check_composition_axiom(RepPoint(V), k, l)


def verify_sum_rule_RG(V: GRep, W: GRep, k: int) -> bool:
    return check_sum_rule(RepPoint(V), RepPoint(W), k)


# ---------------------------------------------------------------------------
# class-function λ-operations (independent oracle)

def class_function_lambda(values, group: FiniteGroup, k: int) -> list:
    """λ^k of a class function via ψ^j(χ)(g) = χ(g^j) and Newton's identities."""
    lam = [[Fraction(1)] * group.order]
    for m in range(1, k + 1):
        row = []
        for g in range(group.order):
            total = Fraction(0)
            for j in range(1, m + 1):
                term = Fraction(values[group.power(g, j)]) * lam[m - j][g]
                total += term if j % 2 else -term
            row.append(total / m)
        lam.append(row)
    return lam[k]


# ---------------------------------------------------------------------------
# polynomial functors: words over ⊕, ⊗ and Λ^k

class WordError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(V)|(L|Λ)\s*(\d+)|([+*()⊕⊗]))")


def _tokenize(word: str):
    pos = 0
    out = []
    word = word.rstrip()
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m:
            raise WordError(f"unexpected input at column {pos + 1}: {word[pos:]!r}")
        if m.group(1):
            out.append(("V", None, pos))
        elif m.group(2):
            out.append(("L", int(m.group(3)), pos))
        else:
            sym = {"⊕": "+", "⊗": "*"}.get(m.group(4), m.group(4))
            out.append((sym, None, pos))
        pos = m.end()
    return out


def parse_word(word: str):
    """Parse into a tree: ``("V",)``, ``("L", k, t)``, ``("+", a, b)``, ``("*", a, b)``."""
    toks = _tokenize(word)
    i = 0

    def peek():
        return toks[i][0] if i < len(toks) else None

    def take(kind):
        nonlocal i
        if peek() != kind:
            col = toks[i][2] + 1 if i < len(toks) else len(word) + 1
            raise WordError(f"expected {kind!r} at column {col}")
        i += 1
        return toks[i - 1]

    def expr():
        node = term()
        while peek() == "+":
            take("+")
            node = ("+", node, term())
        return node

    def term():
        node = factor()
        while peek() == "*":
            take("*")
            node = ("*", node, factor())
        return node

    def factor():
        kind = peek()
        if kind == "V":
            take("V")
            return ("V",)
        if kind == "L":
            k = take("L")[1]
            if k < 1:
                raise WordError("exterior power index must be positive")
            take("(")
            inner = expr()
            take(")")
            return ("L", k, inner)
        if kind == "(":
            take("(")
            inner = expr()
            take(")")
            return inner
        col = toks[i][2] + 1 if i < len(toks) else len(word) + 1
        raise WordError(f"expected V, L<k>( or ( at column {col}")

    if not toks:
        raise WordError("empty word")
    tree = expr()
    if i != len(toks):
        raise WordError(f"trailing input at column {toks[i][2] + 1}")
    return tree


def apply_polynomial_functor(word, V: GRep) -> GRep:
    tree = parse_word(word) if isinstance(word, str) else word

    def ev(node):
        if node[0] == "V":
            return V
        if node[0] == "L":
            return exterior_rep(ev(node[2]), node[1])
        a, b = ev(node[1]), ev(node[2])
        return direct_sum_rep(a, b) if node[0] == "+" else tensor_rep(a, b)

    return ev(tree)


def word_class_function(word, V: GRep) -> list:
    """The same word evaluated on class functions (the character oracle)."""
    tree = parse_word(word) if isinstance(word, str) else word
    G = V.group
    base = class_function(V)

    def ev(node):
        if node[0] == "V":
            return [Fraction(x) for x in base]
        if node[0] == "L":
            return class_function_lambda(ev(node[2]), G, node[1])
        a, b = ev(node[1]), ev(node[2])
        if node[0] == "+":
            return [x + y for x, y in zip(a, b)]
        return [x * y for x, y in zip(a, b)]

    return ev(tree)
