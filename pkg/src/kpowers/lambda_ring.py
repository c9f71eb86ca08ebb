"""λ-ring points and the identity checks (sum, product and composition rules).

A :class:`LambdaPoint` is an element ``x`` of some λ-ring together with the
means of computing ``λ^i(x)``.  Three rings are provided: the binomial ring ℤ
(which is K_0 of a PID), the universal ring of symmetric functions, and the
representation ring of a finite group (see :mod:`kpowers.equivariant`).
"""

from __future__ import annotations

from math import comb

from .symfun import SymPoly, adams_of_elementary, universal_P_compose, universal_P_product


class CoordinateError(ValueError):
    """Raised when a point cannot supply λ^i for the requested i."""


def lambda_binomial(n: int, k: int) -> int:
    """Coefficient of t^k in (1+t)^n."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(-n + k - 1, k)


class LambdaPoint:
    """Abstract point; subclasses define the ring operations."""

    kind = "abstract"
    max_order: int | None = None

    def coordinate(self, i: int):
        if i < 0:
            raise ValueError("negative λ-index")
        if i == 0:
            return self.one()
        if self.max_order is not None and i > self.max_order:
            raise CoordinateError(f"{self.kind} point only knows λ^1..λ^{self.max_order}, asked λ^{i}")
        return self._coordinate(i)

    def coordinates(self, upto: int) -> list:
        return [self.coordinate(i) for i in range(1, upto + 1)]

    def lambda_t(self, order: int) -> list:
        """Truncation of λ_t(x) = Σ λ^k(x) t^k as a coefficient list."""
        return [self.coordinate(i) for i in range(order + 1)]

    # ring interface ------------------------------------------------------
    def one(self):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def equal(self, a, b) -> bool:
        return a == b

    def _coordinate(self, i):
        raise NotImplementedError

    def __add__(self, other):
        raise NotImplementedError

    def __mul__(self, other):
        raise NotImplementedError

    def apply_lambda(self, l: int) -> "LambdaPoint":
        raise NotImplementedError


class BinomialPoint(LambdaPoint):
    """An integer n in K_0 ≅ ℤ with λ^k(n) = coefficient of t^k in (1+t)^n."""

    kind = "binomial"

    def __init__(self, n: int):
        self.n = int(n)

    def one(self):
        return 1

    def zero(self):
        return 0

    def value(self):
        return self.n

    def _coordinate(self, i):
        return lambda_binomial(self.n, i)

    def __add__(self, other):
        return BinomialPoint(self.n + other.n)

    def __mul__(self, other):
        return BinomialPoint(self.n * other.n)

    def apply_lambda(self, l):
        return BinomialPoint(lambda_binomial(self.n, l))

    def __repr__(self):
        return f"BinomialPoint({self.n})"


class UniversalPoint(LambdaPoint):
    """Element of the universal λ-ring, truncated to finitely many generators.

    ``alphabets`` lists the sizes of independent generator families (``e…``,
    ``f…``).  The generator points have coordinates the free generators
    themselves; coordinates of any other element are computed from Adams
    operations through Newton's identities, independently of the symbolic
    reduction that produces P_k and P_{k,l}.  Identities are exact as long as
    every weighted degree involved stays at most the alphabet size.
    """

    kind = "universal"

    def __init__(self, element: SymPoly, alphabets, generator: int | None = None):
        self.element = element
        self.alphabets = tuple(alphabets)
        self.generator = generator  # index of the alphabet when this point is s_j itself
        self.max_order = self.alphabets[generator] if generator is not None else None
        self._cache = {}

    @staticmethod
    def names_for(alphabets):
        letters = "efghij"
        return sum((SymPoly.elementary_names(n, letters[a]) for a, n in enumerate(alphabets)), ())

    @classmethod
    def generators(cls, *alphabets):
        names = cls.names_for(alphabets)
        out = []
        offset = 0
        for a, n in enumerate(alphabets):
            out.append(cls(SymPoly.generator(names, offset), alphabets, generator=a))
            offset += n
        return out

    @property
    def names(self):
        return self.element.names

    def one(self):
        return SymPoly.constant(self.names, 1)

    def zero(self):
        return SymPoly(self.names, {})

    def _adams_images(self, j):
        key = ("psi", j)
        if key not in self._cache:
            images = []
            for a, n in enumerate(self.alphabets):
                letter = "efghij"[a]
                local = SymPoly.elementary_names(n, letter)
                for i in range(1, n + 1):
                    images.append(adams_of_elementary(j, i, n).rename(local).embed(self.names))
            self._cache[key] = images
        return self._cache[key]

    def adams(self, j: int, y: SymPoly) -> SymPoly:
        return y.evaluate(self._adams_images(j), one=self.one())

    def _coordinate(self, i):
        if self.generator is not None:
            offset = sum(self.alphabets[: self.generator])
            return SymPoly.generator(self.names, offset + i - 1)
        key = ("lam", i)
        if key not in self._cache:
            total = self.zero()
            for j in range(1, i + 1):
                term = self.adams(j, self.element) * self.coordinate(i - j)
                total = total + term if j % 2 else total - term
            self._cache[key] = total.exact_div(i)
        return self._cache[key]

    def __add__(self, other):
        return UniversalPoint(self.element + other.element, self.alphabets)

    def __mul__(self, other):
        return UniversalPoint(self.element * other.element, self.alphabets)

    def apply_lambda(self, l):
        return UniversalPoint(self.coordinate(l), self.alphabets)

    def __repr__(self):
        return f"UniversalPoint({self.element})"


# ---------------------------------------------------------------------------

def check_sum_rule(x: LambdaPoint, y: LambdaPoint, k: int) -> bool:
    lhs = (x + y).coordinate(k)
    rhs = None
    for i in range(k + 1):
        term = x.coordinate(i) * y.coordinate(k - i)
        rhs = term if rhs is None else rhs + term
    return x.equal(lhs, rhs)


def check_product_rule(x: LambdaPoint, y: LambdaPoint, k: int) -> bool:
    lhs = (x * y).coordinate(k)
    values = x.coordinates(k) + y.coordinates(k)
    rhs = universal_P_product(k).evaluate(values, one=x.one())
    return x.equal(lhs, rhs)


def check_composition_axiom(x: LambdaPoint, k: int, l: int) -> bool:
    """λ^k(λ^l(x)) = P_{k,l}(λ^1 x, …, λ^{kl} x)."""
    values = x.coordinates(k * l)
    lhs = x.apply_lambda(l).coordinate(k)
    rhs = universal_P_compose(k, l).evaluate(values, one=x.one())
    return x.equal(lhs, rhs)


def universal_composition_identity(k: int, l: int) -> bool:
    """The composition axiom for the generator s of ℤ[s, λ²(s), …], as polynomials."""
    (s,) = UniversalPoint.generators(k * l)
    return check_composition_axiom(s, k, l)


def universal_sum_identity(k: int) -> bool:
    s, t = UniversalPoint.generators(k, k)
    return check_sum_rule(s, t, k)


def universal_product_identity(k: int) -> bool:
    s, t = UniversalPoint.generators(k, k)
    return check_product_rule(s, t, k)


def single_factor_part(P: SymPoly):
    """Coefficients of the monomials of P consisting of exactly one generator."""
    return {P.names[a.index(1)]: c for a, c in P.monomials_with_factors(1).items()}


def is_multiple_of_top(P: SymPoly, top_index: int) -> bool:
    """After discarding monomials with ≥ 2 factors, only a multiple of e_top remains."""
    part = single_factor_part(P)
    return set(part) <= {P.names[top_index - 1]}
