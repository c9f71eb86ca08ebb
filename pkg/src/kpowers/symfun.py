"""Symmetric functions in elementary generators.

Symmetric polynomials are handled in the monomial basis ``m_λ`` (one
coefficient per partition), which keeps the reduction to elementary
generators small: the coefficient of ``m_ν`` in ``e_μ`` is the number of 0-1
matrices with row sums μ and column sums ν.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations


class SymmetryError(ValueError):
    pass


class SymPoly:
    """Integer polynomial in named generators (``e1, e2, …`` and optionally ``f1, …``).

    ``terms`` maps exponent tuples (one entry per generator) to nonzero ints.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names, terms=None):
        self.names = tuple(names)
        self.terms = {tuple(a): int(c) for a, c in (terms or {}).items() if c}
        for a in self.terms:
            if len(a) != len(self.names):
                raise ValueError("exponent length does not match generator count")

    @classmethod
    def generator(cls, names, i: int) -> "SymPoly":
        a = [0] * len(names)
        a[i] = 1
        return cls(names, {tuple(a): 1})

    @classmethod
    def constant(cls, names, c: int) -> "SymPoly":
        return cls(names, {(0,) * len(names): c})

    @staticmethod
    def elementary_names(n: int, letter: str = "e"):
        return tuple(f"{letter}{i}" for i in range(1, n + 1))

    def _coerce(self, other):
        if isinstance(other, SymPoly):
            if other.names != self.names:
                raise ValueError(f"generator mismatch {self.names} vs {other.names}")
            return other
        if isinstance(other, int):
            return SymPoly.constant(self.names, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return SymPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.names, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return SymPoly(self.names, {a: c * other for a, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, 0) + c * d
        return SymPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = SymPoly.constant(self.names, 1)
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, n: int) -> "SymPoly":
        for c in self.terms.values():
            if c % n:
                raise ArithmeticError(f"coefficient {c} not divisible by {n}")
        return SymPoly(self.names, {a: c // n for a, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = SymPoly.constant(self.names, other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.names, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def weights(self):
        return tuple(int(name[1:]) for name in self.names)

    def weighted_degrees(self) -> set:
        w = self.weights()
        return {sum(x * y for x, y in zip(a, w)) for a in self.terms}

    def is_homogeneous(self, degree: int) -> bool:
        return self.weighted_degrees() <= {degree}

    def sorted_terms(self):
        """Terms in graded lexicographic order (by weighted degree, then exponents)."""
        w = self.weights()
        return sorted(self.terms.items(),
                      key=lambda t: (-sum(x * y for x, y in zip(t[0], w)), tuple(-x for x in t[0])))

    def monomials_with_factors(self, count: int):
        """Terms whose monomial is a product of exactly ``count`` generators."""
        return {a: c for a, c in self.terms.items() if sum(a) == count}

    def evaluate(self, values, one=1):
        """Substitute ``values[i]`` for generator i; works in any ring with + and *."""
        if len(values) < len(self.names):
            raise ValueError(f"need {len(self.names)} values, got {len(values)}")
        total = None
        powers = {}
        for a, c in self.sorted_terms():
            term = None
            for i, e in enumerate(a):
                if e == 0:
                    continue
                key = (i, e)
                if key not in powers:
                    p = values[i]
                    for _ in range(e - 1):
                        p = p * values[i]
                    powers[key] = p
                term = powers[key] if term is None else term * powers[key]
            if term is None:
                term = one
            term = term * c if c != 1 else term
            total = term if total is None else total + term
        return total if total is not None else one * 0

    def rename(self, names) -> "SymPoly":
        return SymPoly(names, self.terms)

    def embed(self, names) -> "SymPoly":
        """Re-express over a larger generator list containing all current names."""
        pos = [names.index(n) for n in self.names]
        out = {}
        for a, c in self.terms.items():
            b = [0] * len(names)
            for i, e in zip(pos, a):
                b[i] = e
            out[tuple(b)] = c
        return SymPoly(names, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.sorted_terms():
            mono = "*".join(f"{n}^{e}" if e > 1 else n for n, e in zip(self.names, a) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __repr__ = __str__

    def to_records(self):
        """Sorted ``[exponents, coefficient]`` pairs for serialization."""
        return [[list(a), c] for a, c in self.sorted_terms()]


# ---------------------------------------------------------------------------
# partitions and the e -> m transition

def partitions(total: int, max_parts: int, max_part: int | None = None):
    """Partitions of ``total`` with at most ``max_parts`` parts, padded to length max_parts."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield (0,) * max_parts
        return
    if max_parts == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _count_01(rows: tuple, cols: tuple) -> int:
    """Number of 0-1 matrices with the given row sums and column sums."""
    if not rows:
        return int(all(c == 0 for c in cols))
    r, rest = rows[0], rows[1:]
    avail = [i for i, c in enumerate(cols) if c > 0]
    if len(avail) < r or sum(rest) + r != sum(cols):
        return 0
    total = 0
    for chosen in combinations(avail, r):
        nc = list(cols)
        for i in chosen:
            nc[i] -= 1
        total += _count_01(rest, tuple(sorted(nc, reverse=True)))
    return total


def e_in_m(mu: tuple, n: int) -> dict:
    """``e_μ`` (μ listed as parts) in the monomial basis of n variables."""
    mu = tuple(sorted((p for p in mu if p), reverse=True))
    total = sum(mu)
    out = {}
    for nu in partitions(total, n):
        c = _count_01(mu, tuple(p for p in nu))
        if c:
            out[nu] = c
    return out


def conjugate(lam: tuple) -> tuple:
    parts = [p for p in lam if p]
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


# ---------------------------------------------------------------------------
# full polynomials in variables

def is_symmetric(poly: dict, alphabets) -> bool:
    """Invariance under the adjacent transpositions of every alphabet."""
    offsets = []
    o = 0
    for size in alphabets:
        offsets.append((o, size))
        o += size
    for o, size in offsets:
        for i in range(size - 1):
            for a, c in poly.items():
                b = list(a)
                b[o + i], b[o + i + 1] = b[o + i + 1], b[o + i]
                if poly.get(tuple(b), 0) != c:
                    return False
    return True


def _split(a, alphabets):
    out = []
    o = 0
    for size in alphabets:
        out.append(tuple(a[o:o + size]))
        o += size
    return tuple(out)


def _sorted_desc(t):
    return all(t[i] >= t[i + 1] for i in range(len(t) - 1))


def reduce_monomial_basis(mcoeffs: dict, alphabets, letters=None) -> SymPoly:
    """Reduce ``Σ c · m_{λ1}(x) m_{λ2}(y) …`` to elementary generators.

    Keys of ``mcoeffs`` are tuples of partitions, one per alphabet, each
    padded to the alphabet size.
    """
    letters = letters or "efghij"[: len(alphabets)]
    names = sum((SymPoly.elementary_names(n, letter) for n, letter in zip(alphabets, letters)), ())
    work = {k: v for k, v in mcoeffs.items() if v}
    result = {}
    while work:
        lead = max(work)
        c = work[lead]
        exps = []
        mus = []
        for lam, n in zip(lead, alphabets):
            a = [lam[i] - (lam[i + 1] if i + 1 < n else 0) for i in range(n)]
            exps.extend(a)
            mus.append(conjugate(lam))
        result[tuple(exps)] = result.get(tuple(exps), 0) + c
        # subtract c * e_{mu_1}(x) e_{mu_2}(y) … in the monomial basis
        expansions = [e_in_m(mu, n) for mu, n in zip(mus, alphabets)]
        combos = [((), 1)]
        for exp in expansions:
            combos = [(key + (nu,), cc * d) for key, cc in combos for nu, d in exp.items()]
        for key, d in combos:
            work[key] = work.get(key, 0) - c * d
            if work[key] == 0:
                del work[key]
        if lead in work:
            raise ArithmeticError("reduction did not remove the leading term")
    return SymPoly(names, result)


def reduce_to_elementary(poly: dict, nvars: int | None = None, alphabets=None) -> SymPoly:
    """Express a symmetric integer polynomial through elementary symmetric generators.

    ``poly`` maps exponent tuples to coefficients.  With several alphabets
    (e.g. ``alphabets=(2, 2)``) the polynomial must be symmetric in each one
    separately and the result uses generators ``e1…`` and ``f1…``.
    """
    if alphabets is None:
        if nvars is None:
            nvars = len(next(iter(poly))) if poly else 0
        alphabets = (nvars,)
    alphabets = tuple(alphabets)
    poly = {tuple(a): c for a, c in poly.items() if c}
    if poly and any(len(a) != sum(alphabets) for a in poly):
        raise ValueError("exponent length does not match the alphabets")
    if not is_symmetric(poly, alphabets):
        raise SymmetryError("polynomial is not symmetric")
    mco = {}
    for a, c in poly.items():
        parts = _split(a, alphabets)
        if all(_sorted_desc(p) for p in parts):
            mco[parts] = c
    return reduce_monomial_basis(mco, alphabets)


def expand_elementary(sp: SymPoly, alphabets) -> dict:
    """Evaluate a polynomial in e's (and f's) as a full polynomial in variables."""
    nv = sum(alphabets)

    def pmul(p, q):
        out = {}
        for a, c in p.items():
            for b, d in q.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * d
        return {k: v for k, v in out.items() if v}

    gens = []
    o = 0
    for size in alphabets:
        for i in range(1, size + 1):
            poly = {}
            for S in combinations(range(o, o + size), i):
                a = [0] * nv
                for s in S:
                    a[s] = 1
                poly[tuple(a)] = 1
            gens.append(poly)
        o += size
    total = {}
    for a, c in sp.terms.items():
        term = {(0,) * nv: c}
        for g, e in zip(gens, a):
            for _ in range(e):
                term = pmul(term, g)
        for k, v in term.items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v}


# ---------------------------------------------------------------------------
# universal polynomials

_P_COMPOSE: dict = {}
_P_PRODUCT: dict = {}


def universal_P_compose(k: int, l: int) -> SymPoly:
    """P_{k,l}: e_k of the products over l-subsets of kl variables, in e_1…e_{kl}."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    key = (k, l)
    if key not in _P_COMPOSE:
        n = k * l
        subsets = list(combinations(range(n), l))
        mco = {}
        for chosen in combinations(subsets, k):
            a = [0] * n
            for S in chosen:
                for s in S:
                    a[s] += 1
            if _sorted_desc(a):
                t = (tuple(a),)
                mco[t] = mco.get(t, 0) + 1
        _P_COMPOSE[key] = reduce_monomial_basis(mco, (n,))
    return _P_COMPOSE[key]


def universal_P_product(k: int) -> SymPoly:
    """P_k with λ^k(xy) = P_k(λ^1 x, …, λ^k x; λ^1 y, …, λ^k y), generators e…, f…."""
    if k < 1:
        raise ValueError("k must be positive")
    if k not in _P_PRODUCT:
        pairs = [(i, j) for i in range(k) for j in range(k)]
        mco = {}
        for chosen in combinations(pairs, k):
            a = [0] * k
            b = [0] * k
            for i, j in chosen:
                a[i] += 1
                b[j] += 1
            if _sorted_desc(a) and _sorted_desc(b):
                t = (tuple(a), tuple(b))
                mco[t] = mco.get(t, 0) + 1
        _P_PRODUCT[k] = reduce_monomial_basis(mco, (k, k))
    return _P_PRODUCT[k]


def power_sum_in_elementary(j: int, n: int) -> SymPoly:
    """p_j = Σ x_i^j written in e_1…e_n (Newton's identities via the m-basis)."""
    lam = (j,) + (0,) * (n - 1)
    return reduce_monomial_basis({(lam,): 1}, (n,))


def adams_of_elementary(j: int, i: int, n: int) -> SymPoly:
    """ψ^j(e_i) = e_i(x_1^j, …, x_n^j) in e_1…e_n."""
    if i > n:
        return SymPoly(SymPoly.elementary_names(n), {})
    lam = (j,) * i + (0,) * (n - i)
    return reduce_monomial_basis({(lam,): 1}, (n,))
