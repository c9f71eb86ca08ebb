from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from kpowers.complexes import (
    ChainComplex, ChainMap, cone_of_identity, euler_characteristic, homology, is_acyclic,
    is_quasi_iso, tensor_total,
)
from kpowers.linalg import Matrix, exterior_power_matrix, symmetric_power_matrix
from kpowers.random_gen import (
    random_acyclic, random_admissible_mono, random_chain_map, random_complex, random_quasi_iso,
)
from kpowers.rings import GF, QQ, ZZ
from kpowers.simplicial import (
    ConsistencyError, MonoSequenceOfComplexes, SimplicialError, dold_puppe_power,
    dold_puppe_power_map, gamma, levelwise_exterior, levelwise_tensor, normalize, power_data,
    simplicial_tensor, wedge_of_sequence,
)

from strategies import rings, rng_for, seeds

small_rings = st.sampled_from([ZZ, GF(2), GF(3)])


def homology_list(C):
    return [homology(C, n) for n in range(C.top + 1)]


def trimmed_homology(C):
    out = homology_list(C)
    while out and out[-1] == (0, []):
        out.pop()
    return out


def generic_power(C, k, functor="exterior"):
    """Oracle: levelwise Λ^k (or S^k) of the full Γ(C), then N."""
    L = k * C.top + 1
    A = gamma(C, L)
    if functor == "exterior":
        return normalize(levelwise_exterior(A, k))
    return normalize(A.map_levels(lambda M: symmetric_power_matrix(M, k)))


def two_term(ring, a):
    return ChainComplex(ring, [1, 1], [Matrix.from_rows(ring, [[a]])])


# -- Γ and N -----------------------------------------------------------------------

def test_gamma_of_a_point_is_constant():
    A = gamma(ChainComplex.concentrated(ZZ, 1, 0), 3)
    assert A.ranks == (1, 1, 1, 1)
    assert normalize(A).trimmed() == ChainComplex.concentrated(ZZ, 1, 0)


def test_gamma_ranks_of_degree_one_generator():
    A = gamma(ChainComplex.concentrated(ZZ, 1, 1), 3)
    assert A.ranks == (0, 1, 2, 3)


@given(rings, seeds)
def test_gamma_satisfies_simplicial_identities(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=2, max_rank=2)
    assert gamma(C, C.top + 1).identity_violations() == []


@given(rings, seeds)
def test_dold_kan_roundtrip(ring, seed):
    C = random_complex(ring, rng_for(seed))
    assert normalize(gamma(C, C.top + 1)).trimmed() == C.trimmed()


def test_gamma_bound_below_top_is_rejected():
    with pytest.raises(SimplicialError):
        gamma(ChainComplex.concentrated(ZZ, 1, 2), 1)


@given(small_rings, seeds)
def test_eilenberg_zilber_homology(ring, seed):
    rng = rng_for(seed)
    C = random_complex(ring, rng, max_top=1, max_rank=2)
    D = random_complex(ring, rng, max_top=1, max_rank=2)
    S = simplicial_tensor(C, D)
    assert trimmed_homology(S) == trimmed_homology(tensor_total(C, D))
    assert euler_characteristic(S).value == euler_characteristic(C).value * euler_characteristic(D).value


def test_diagonal_tensor_with_unit():
    C = two_term(ZZ, 2)
    unit = ChainComplex.concentrated(ZZ, 1, 0)
    assert trimmed_homology(simplicial_tensor(C, unit)) == trimmed_homology(C)
    L = 3
    N = normalize(levelwise_tensor(gamma(C, L), gamma(unit, L)))
    assert trimmed_homology(N) == trimmed_homology(C)


# -- powers ------------------------------------------------------------------------------

@given(rings, seeds)
def test_first_power_is_identity(ring, seed):
    C = random_complex(ring, rng_for(seed))
    assert dold_puppe_power(C, 1) == C.trimmed()


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_power_of_degree_zero_module_is_ordinary_exterior_power(k):
    P = dold_puppe_power(ChainComplex.concentrated(ZZ, 4, 0), k)
    assert P.ranks == (comb(4, k),)


def test_square_of_multiplication_by_two():
    P = dold_puppe_power(two_term(ZZ, 2), 2)
    want = trimmed_homology(generic_power(two_term(ZZ, 2), 2))
    assert trimmed_homology(P) == want == [(0, []), (0, [2])]


@settings(max_examples=20)
@given(small_rings, st.integers(2, 3), seeds)
def test_fast_power_matches_generic_pipeline(ring, k, seed):
    C = random_complex(ring, rng_for(seed), max_top=1, max_rank=2)
    fast, slow = dold_puppe_power(C, k), generic_power(C, k)
    assert fast.ranks == slow.trimmed().ranks
    assert trimmed_homology(fast) == trimmed_homology(slow)


def test_fast_power_matches_generic_pipeline_in_degree_two():
    d1 = Matrix.from_rows(ZZ, [[2]])
    C = ChainComplex(ZZ, [1, 1, 1], [d1, Matrix.zeros(ZZ, 1, 1)])
    fast, slow = dold_puppe_power(C, 2), generic_power(C, 2)
    assert fast.ranks == slow.trimmed().ranks
    assert trimmed_homology(fast) == trimmed_homology(slow)


@given(small_rings, seeds)
def test_fast_symmetric_power_matches_generic_pipeline(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=1, max_rank=2)
    fast = dold_puppe_power(C, 2, functor="symmetric")
    assert trimmed_homology(fast) == trimmed_homology(generic_power(C, 2, "symmetric"))


@given(rings, seeds)
def test_power_support_bound(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=2, max_rank=2)
    for k in (2, 3):
        assert dold_puppe_power(C, k).top <= k * C.trimmed().top


@given(small_rings, seeds)
def test_power_of_identity_is_identity(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=2, max_rank=2)
    f = dold_puppe_power_map(ChainMap.identity(C), 2)
    assert f == ChainMap.identity(f.source)


@given(small_rings, seeds)
def test_power_is_functorial(ring, seed):
    rng = rng_for(seed)
    C, D, E = (random_complex(ring, rng, max_top=1, max_rank=2) for _ in range(3))
    top = max(C.top, D.top, E.top)
    C, D, E = (X.truncate(top) for X in (C, D, E))
    f, g = random_chain_map(C, D, rng), random_chain_map(D, E, rng)
    for k in (2, 3):
        lhs = dold_puppe_power_map(g.compose(f), k)
        rhs = dold_puppe_power_map(g, k).compose(dold_puppe_power_map(f, k))
        assert lhs == rhs


@given(rings, seeds)
def test_powers_of_acyclic_complexes_are_acyclic(ring, seed):
    C = random_acyclic(ring, rng_for(seed), max_top=2, max_rank=2)
    assert all(is_acyclic(dold_puppe_power(C, k)) for k in (2, 3))


@given(rings, seeds)
def test_powers_preserve_quasi_isomorphisms(ring, seed):
    f = random_quasi_iso(ring, rng_for(seed), caps=(2, 1, 1))
    assert is_quasi_iso(dold_puppe_power_map(f, 2))


def test_square_of_zero_into_contractible():
    cone = cone_of_identity(ChainComplex.concentrated(ZZ, 1, 0))
    f = ChainMap.zero(ChainComplex.zero(ZZ).truncate(1), cone)
    assert is_quasi_iso(dold_puppe_power_map(f, 2))


@given(rings, seeds)
def test_euler_characteristic_of_powers(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=2, max_rank=2)
    chi = euler_characteristic(C).value
    for k in (2, 3):
        want = comb(chi, k) if chi >= 0 else (-1) ** k * comb(-chi + k - 1, k)
        assert euler_characteristic(dold_puppe_power(C, k)).value == want


def test_slack_detects_levels_above_the_bound():
    # with slack 0 nothing is checked; the default slack finds nothing for genuine input
    C = two_term(ZZ, 2)
    assert power_data(C, 2, slack=0).complex == power_data(C, 2).complex


def test_labels_only_depend_on_ranks():
    a, b = two_term(ZZ, 2), two_term(ZZ, 5)
    assert power_data(a, 3).labels == power_data(b, 3).labels


# -- wedges of sequences ----------------------------------------------------------------------

def test_wedge_of_length_one():
    C = two_term(ZZ, 2)
    assert wedge_of_sequence(MonoSequenceOfComplexes([C], [])) == C


@given(small_rings, seeds)
def test_wedge_of_identity_sequence_is_square(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=1, max_rank=2)
    S = MonoSequenceOfComplexes([C, C], [ChainMap.identity(C)])
    assert wedge_of_sequence(S) == dold_puppe_power(C, 2)


@given(small_rings, seeds)
def test_wedge_with_zero_first_term_vanishes(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=1, max_rank=2)
    Z = ChainComplex.zero(ring).truncate(C.top)
    S = MonoSequenceOfComplexes([Z, C], [ChainMap.zero(Z, C)])
    assert sum(wedge_of_sequence(S).ranks) == 0


@given(small_rings, seeds)
def test_wedge_is_a_subcomplex_of_the_square(ring, seed):
    f = random_admissible_mono(ring, rng_for(seed))
    W = wedge_of_sequence(MonoSequenceOfComplexes([f.source, f.target], [f]))
    P = dold_puppe_power(f.target, 2)
    assert all(W.rank(n) <= P.rank(n) for n in range(W.top + 1))


def test_non_mono_sequence_is_rejected():
    C = ChainComplex.concentrated(ZZ, 1, 0)
    with pytest.raises(Exception):
        MonoSequenceOfComplexes([C, C], [ChainMap(C, C, [Matrix.from_rows(ZZ, [[2]])])])
