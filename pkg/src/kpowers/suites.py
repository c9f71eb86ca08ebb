"""The acceptance suites as lists of independent, seeded cases.

Every case builds its own ``random.Random`` from ``(seed, suite, index)``, so
results do not depend on scheduling; :func:`run_suite` returns them in case
order whatever the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .axioms import check_chain, check_complex_E5
from .binary import (
    diag, is_biacyclic, binary_power, k1_class, lambda2_unit_experiment, random_biacyclic,
    sample_contraction, torsion,
)
from .complexes import euler_characteristic, is_acyclic, is_quasi_iso
from .equivariant import (
    FiniteGroup, permutation_rep, rational_irreducibles, regular_rep, s3_permutation_rep,
    verify_composition_RG,
)
from .lambda_ring import (
    BinomialPoint, check_composition_axiom, check_sum_rule, lambda_binomial,
    universal_composition_identity,
)
from .random_gen import (
    case_rng, random_acyclic, random_admissible_mono, random_complex, random_module_chain,
    random_quasi_iso,
)
from .rings import GF, QQ, ZZ
from .simplicial import dold_puppe_power, dold_puppe_power_map, gamma, normalize
from .symfun import universal_P_compose


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    ok: bool
    detail: str = ""


@dataclass
class Suite:
    name: str
    title: str
    cases: list  # (case_id, fn(seed) -> (ok, detail))
    gating: bool = True


@dataclass
class SuiteReport:
    name: str
    title: str
    gating: bool
    results: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.results)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.ok]


def _run_case(case, seed) -> CaseResult:
    case_id, fn = case
    try:
        ok, detail = fn(seed)
    except Exception as exc:  # a crash is a failed case, reported with its message
        return CaseResult(case_id, False, f"error: {type(exc).__name__}: {exc}")
    return CaseResult(case_id, bool(ok), detail)


def run_suite(suite: Suite, seed: int, threads: int = 1) -> SuiteReport:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _run_case(c, seed), suite.cases))
    else:
        results = [_run_case(c, seed) for c in suite.cases]
    return SuiteReport(suite.name, suite.title, suite.gating, results)


def _ring_for(i: int, rings):
    return rings[i % len(rings)]


def _cid(prefix: str, i: int, ring) -> str:
    return f"{prefix}-{i:03d}-{ring.name}"


# ---------------------------------------------------------------------------
# 1. Dold-Kan

def _dold_kan_case(i, ring):
    def run(seed):
        C = random_complex(ring, case_rng(seed, "dold-kan", i), max_top=3, max_rank=3)
        back = normalize(gamma(C, C.top + 1))
        return back.trimmed() == C.trimmed(), f"ranks {list(C.ranks)}"
    return run


def dold_kan_suite(count: int = 200) -> Suite:
    rings = (ZZ, GF(2))
    cases = [(_cid("dk", i, _ring_for(i, rings)), _dold_kan_case(i, _ring_for(i, rings)))
             for i in range(count)]
    return Suite("dold-kan", "N(Γ C) = C on random complexes over Z and F2", cases)


# ---------------------------------------------------------------------------
# 2. quasi-isomorphisms

def _quasi_iso_case(i, ring):
    def run(seed):
        f = random_quasi_iso(ring, case_rng(seed, "quasi-iso", i))
        if not is_quasi_iso(f):
            return False, "generated map is not a quasi-isomorphism"
        flags = [is_quasi_iso(dold_puppe_power_map(f, k)) for k in (2, 3)]
        return all(flags), f"ranks {list(f.source.ranks)} -> {list(f.target.ranks)}, k=2,3 {flags}"
    return run


def quasi_iso_suite(count: int = 200) -> Suite:
    rings = (ZZ, GF(2), GF(3), QQ)
    cases = [(_cid("qi", i, _ring_for(i, rings)), _quasi_iso_case(i, _ring_for(i, rings)))
             for i in range(count)]
    return Suite("quasi-iso", "⋀^2 and ⋀^3 preserve quasi-isomorphisms", cases)


# ---------------------------------------------------------------------------
# 3. Euler characteristic

def _euler_case(i, ring, negative):
    def run(seed):
        rng = case_rng(seed, "euler", i)
        while True:
            C = random_complex(ring, rng, max_top=2, max_rank=3)
            chi = euler_characteristic(C).value
            if not negative or chi < 0:
                break
        got = [euler_characteristic(dold_puppe_power(C, k)).value for k in (2, 3)]
        want = [lambda_binomial(chi, k) for k in (2, 3)]
        return got == want, f"chi {chi}, chi(⋀^2, ⋀^3) {got}, expected {want}"
    return run


def euler_suite(count: int = 100) -> Suite:
    rings = (ZZ, GF(2))
    cases = [(_cid("eu", i, _ring_for(i, rings)), _euler_case(i, _ring_for(i, rings), i % 3 == 0))
             for i in range(count)]
    return Suite("euler", "χ(⋀^k C) = λ^k(χ C) for k = 2, 3", cases)


# ---------------------------------------------------------------------------
# 4. acyclicity

def _acyclic_case(i, ring):
    def run(seed):
        C = random_acyclic(ring, case_rng(seed, "acyclic", i), max_top=2, max_rank=3)
        if not is_acyclic(C):
            return False, "generated complex is not acyclic"
        flags = [is_acyclic(dold_puppe_power(C, k)) for k in (2, 3)]
        return all(flags), f"ranks {list(C.ranks)}, k=2,3 {flags}"
    return run


def acyclic_suite(count: int = 100) -> Suite:
    rings = (ZZ, GF(2), QQ)
    cases = [(_cid("ac", i, _ring_for(i, rings)), _acyclic_case(i, _ring_for(i, rings)))
             for i in range(count)]
    return Suite("acyclic", "⋀^k of acyclic complexes is acyclic (k = 2, 3)", cases)


# ---------------------------------------------------------------------------
# 5. axioms

def _axiom_case(i, ring, length):
    def run(seed):
        rng = case_rng(seed, "axioms", i)
        chain = random_module_chain(ring, rng, length, max_rank=4)
        reports = check_chain(chain, rng)
        bad = [r.name for r in reports if not r.ok]
        detail = f"ranks {list(chain.ranks)}, {len(reports)} checks"
        return not bad, detail + (f", failed {bad}" if bad else "")
    return run


def _complex_e5_case(i, ring):
    def run(seed):
        f = random_admissible_mono(ring, case_rng(seed, "axioms-complex", i))
        rep = check_complex_E5(f)
        return rep.ok, rep.detail
    return run


def axioms_suite(count: int = 100, complex_count: int = 20) -> Suite:
    rings = (ZZ, GF(2))
    cases = []
    for i in range(count):
        ring = _ring_for(i, rings)
        length = 2 + (i // 2) % 2
        cases.append((_cid(f"ax-k{length}", i, ring), _axiom_case(i, ring, length)))
    for i in range(complex_count):
        ring = _ring_for(i, rings)
        cases.append((_cid("ax-cx", i, ring), _complex_e5_case(i, ring)))
    return Suite("axioms", "(E1)-(E5) instances for the standard assembly", cases)


# ---------------------------------------------------------------------------
# 6. λ-ring identities

def _lambda_cases():
    def sum_rule(seed):
        bad = [(n, m, k) for n, m in product(range(-8, 9), repeat=2) for k in range(1, 4)
               if not check_sum_rule(BinomialPoint(n), BinomialPoint(m), k)]
        return not bad, f"{17 * 17 * 3} instances" + (f", failed {bad[:5]}" if bad else "")

    def composition(seed):
        bad = [(n, k, l) for n in range(-8, 9) for k in range(1, 4) for l in range(1, 4)
               if not check_composition_axiom(BinomialPoint(n), k, l)]
        return not bad, f"{17 * 9} instances" + (f", failed {bad[:5]}" if bad else "")

    def p22_value(seed):
        values = [lambda_binomial(4, i) for i in range(1, 5)]
        got = universal_P_compose(2, 2).evaluate(values)
        return got == 15 == lambda_binomial(lambda_binomial(4, 2), 2), f"P22(λ(4)) = {got}"

    def p22_poly(seed):
        text = str(universal_P_compose(2, 2))
        return text == "e1*e3 - e4", f"P22 = {text}"

    cases = [("lam-sum-binomial", sum_rule), ("lam-compose-binomial", composition),
             ("lam-p22-at-4", p22_value), ("lam-p22-polynomial", p22_poly)]
    for k, l in ((2, 2), (2, 3), (3, 2)):
        cases.append((f"lam-universal-{k}{l}",
                      lambda seed, k=k, l=l: (universal_composition_identity(k, l),
                                              f"λ^{k}λ^{l} = P_{k},{l} in the universal ring")))
    return cases


def lambda_suite() -> Suite:
    return Suite("lambda", "sum rule and composition axiom; P_{k,l} identities", _lambda_cases())


# ---------------------------------------------------------------------------
# 7. equivariant

EQUIVARIANT_GROUPS = ("C2", "C3", "C2xC2", "S3")
EQUIVARIANT_KL = ((2, 2), (1, 1), (1, 2), (1, 3), (2, 1), (3, 1))


def equivariant_reps(G: FiniteGroup) -> list:
    """(label, representation) pairs checked for G."""
    reps = [(f"irr{j}", V) for j, V in enumerate(rational_irreducibles(G))]
    reps.append(("regular", regular_rep(G)))
    if G.name == "S3":
        reps.append(("perm", s3_permutation_rep(G)))
    elif G.name == "C2xC2":
        # the permutation action on the two cosets of the subgroup {0, 1}
        reps.append(("perm", permutation_rep(G, [[0, 1], [0, 1], [1, 0], [1, 0]])))
    return reps


def _equivariant_case(G, V, k, l):
    def run(seed):
        return verify_composition_RG(V, k, l), f"rank {V.rank}"
    return run


def equivariant_suite() -> Suite:
    cases = []
    for name in EQUIVARIANT_GROUPS:
        G = FiniteGroup.preset(name)
        for label, V in equivariant_reps(G):
            for k, l in EQUIVARIANT_KL:
                cases.append((f"eq-{name}-{label}-{k}{l}", _equivariant_case(G, V, k, l)))
    return Suite("equivariant", "λ^k λ^l = P_{k,l} in R(G) by characters", cases)


# ---------------------------------------------------------------------------
# 8. binary layer

CONTRACTIONS = 5


def _torsion_case(i, ring):
    def run(seed):
        rng = case_rng(seed, "binary", i)
        C = random_acyclic(ring, rng, max_top=3, max_rank=3)
        values = [torsion(C, rng) for _ in range(CONTRACTIONS)]
        values.append(torsion(C, contraction=sample_contraction(C)))
        same = len({v.value for v in values}) == 1
        unit = k1_class(diag(C), rng).value == ring.one
        return same and unit, f"ranks {list(C.ranks)}, torsion {values[0]}, k1(diag) = 1: {unit}"
    return run


def _biacyclic_case(i, ring):
    def run(seed):
        B = random_biacyclic(ring, case_rng(seed, "binary-power", i))
        out = []
        for k in (2, 3):
            P = binary_power(B, k)
            out.append(is_biacyclic(P))
        return all(out), f"ranks {list(B.ranks)}, powers biacyclic {out}"
    return run


def binary_suite(count: int = 100, power_count: int = 50) -> Suite:
    rings = (GF(5), QQ)
    cases = [(_cid("bin-torsion", i, _ring_for(i, rings)), _torsion_case(i, _ring_for(i, rings)))
             for i in range(count)]
    cases += [(_cid("bin-power", i, _ring_for(i, rings)), _biacyclic_case(i, _ring_for(i, rings)))
              for i in range(power_count)]
    return Suite("binary", "torsion, k1_class and binary powers", cases)


# ---------------------------------------------------------------------------
# 9. K1 experiment (reported only)

def _k1_case(u):
    def run(seed):
        exp = lambda2_unit_experiment(QQ, u)
        verdict = "match" if exp.match else "mismatch"
        return exp.match, f"observed {exp.observed}, predicted {exp.predicted}: {verdict}"
    return run


def k1_suite() -> Suite:
    cases = [(f"k1-lambda2-u{u}", _k1_case(u)) for u in (2, 3, 5)]
    return Suite("k1-experiment", "k1_class(⋀² of the standard unit complex) vs u^-1",
                 cases, gating=False)


# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[], Suite]] = {
    "dold-kan": dold_kan_suite,
    "quasi-iso": quasi_iso_suite,
    "euler": euler_suite,
    "acyclic": acyclic_suite,
    "axioms": axioms_suite,
    "lambda": lambda_suite,
    "equivariant": equivariant_suite,
    "binary": binary_suite,
    "k1-experiment": k1_suite,
}


def build_suite(name: str) -> Suite:
    try:
        return SUITES[name]()
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
