import pytest
from hypothesis import given, strategies as st

from kpowers.complexes import (
    ChainComplex, ChainMap, ComplexError, cone, cone_of_identity, direct_sum_map,
    euler_characteristic, homology, is_acyclic, is_admissible_mono, is_quasi_iso, shift_left,
    tensor_total,
)
from kpowers.linalg import Matrix
from kpowers.random_gen import (
    random_acyclic, random_admissible_mono, random_chain_map, random_complex, random_quasi_iso,
)
from kpowers.rings import GF, QQ, ZZ

from strategies import rings, rng_for, seeds


def two_term(ring, a):
    """R --a--> R in degrees 1, 0."""
    return ChainComplex(ring, [1, 1], [Matrix.from_rows(ring, [[a]])])


def point(ring, rank=1, degree=0):
    return ChainComplex.concentrated(ring, rank, degree)


def all_homology(C):
    return [homology(C, n) for n in range(C.top + 1)]


def test_square_zero_is_enforced():
    d = Matrix.from_rows(ZZ, [[1]])
    with pytest.raises(ComplexError, match="d_1"):
        ChainComplex(ZZ, [1, 1, 1], [d, d])


def test_homology_of_multiplication_by_two():
    assert homology(two_term(ZZ, 2), 0) == (0, [2])
    assert homology(two_term(ZZ, 2), 1) == (0, [])
    assert homology(two_term(GF(2), 2), 0) == (1, [])


def test_homology_of_zero_complex():
    assert homology(ChainComplex.zero(ZZ), 0) == (0, [])


@given(rings, seeds)
def test_cone_of_identity_is_acyclic(ring, seed):
    C = random_complex(ring, rng_for(seed))
    K = cone_of_identity(C)
    assert is_acyclic(K)
    assert euler_characteristic(K).value == 0


def test_cone_of_identity_of_a_point():
    K = cone_of_identity(point(ZZ))
    assert K.ranks == (1, 1) and K.d(1) == Matrix.identity(ZZ, 1)


@given(rings, seeds)
def test_cone_of_zero_map_is_shift(ring, seed):
    C = random_complex(ring, rng_for(seed))
    f = ChainMap.zero(C, ChainComplex.zero(ring).truncate(C.top))
    assert cone(f).trimmed() == shift_left(C).trimmed()


def test_shift_of_zero_and_of_two_term():
    assert shift_left(ChainComplex.zero(ZZ)).trimmed() == ChainComplex.zero(ZZ)
    S = shift_left(two_term(ZZ, 2))
    assert homology(S, 1) == (0, [2])


@given(rings, seeds)
def test_shift_negates_euler_characteristic(ring, seed):
    C = random_complex(ring, rng_for(seed))
    assert euler_characteristic(shift_left(C)).value == -euler_characteristic(C).value


def test_euler_characteristic_examples():
    assert euler_characteristic(point(ZZ, 2)).value == 2
    assert euler_characteristic(two_term(ZZ, 2)).value == 0


@given(rings, seeds)
def test_acyclic_complexes_have_zero_euler_characteristic(ring, seed):
    C = random_acyclic(ring, rng_for(seed))
    assert is_acyclic(C) and euler_characteristic(C).value == 0


@given(rings, seeds)
def test_euler_characteristic_is_additive_on_cones(ring, seed):
    rng = rng_for(seed)
    C, D = random_complex(ring, rng), random_complex(ring, rng)
    f = random_chain_map(C, D, rng)
    # 0 -> D -> cone(f) -> C[-1] -> 0 is degreewise split
    assert euler_characteristic(cone(f)).value == \
        euler_characteristic(D).value - euler_characteristic(C).value


def test_quasi_iso_examples():
    C = two_term(ZZ, 2)
    assert is_quasi_iso(ChainMap.identity(C))
    contractible = cone_of_identity(point(ZZ))
    assert is_quasi_iso(ChainMap.zero(ChainComplex.zero(ZZ).truncate(1), contractible))
    twice = ChainMap(C, C, [Matrix.from_rows(ZZ, [[2]])] * 2)
    assert not is_quasi_iso(twice)


def test_chain_map_condition_is_enforced():
    C, D = two_term(ZZ, 2), two_term(ZZ, 3)
    with pytest.raises(ComplexError):
        ChainMap(C, D, [Matrix.identity(ZZ, 1)] * 2)


@given(rings, seeds)
def test_generated_quasi_isos_induce_homology_isomorphisms(ring, seed):
    f = random_quasi_iso(ring, rng_for(seed))
    assert is_quasi_iso(f)
    assert all_homology(f.source) == all_homology(f.target)


def test_tensor_with_unit_and_kuenneth():
    C = two_term(ZZ, 2)
    assert tensor_total(C, point(ZZ)) == C
    T = tensor_total(two_term(ZZ, 2), two_term(ZZ, 4))
    # Künneth: H_0 = Z/2 ⊗ Z/4, H_1 = Tor(Z/2, Z/4)
    assert all_homology(T) == [(0, [2]), (0, [2]), (0, [])]
    assert is_acyclic(tensor_total(two_term(ZZ, 2), two_term(ZZ, 3)))


@given(rings, seeds)
def test_tensor_euler_characteristic_is_multiplicative(ring, seed):
    rng = rng_for(seed)
    C, D = random_complex(ring, rng, max_top=2), random_complex(ring, rng, max_top=2)
    assert euler_characteristic(tensor_total(C, D)).value == \
        euler_characteristic(C).value * euler_characteristic(D).value


@given(st.sampled_from([ZZ, GF(2), QQ]), seeds)
def test_generated_monos_are_admissible(ring, seed):
    f = random_admissible_mono(ring, rng_for(seed))
    assert is_admissible_mono(f)


def test_multiplication_by_two_is_not_admissible():
    C = point(ZZ)
    assert not is_admissible_mono(ChainMap(C, C, [Matrix.from_rows(ZZ, [[2]])]))


@given(rings, seeds)
def test_direct_sum_of_quasi_isos(ring, seed):
    rng = rng_for(seed)
    f, g = random_quasi_iso(ring, rng), random_quasi_iso(ring, rng)
    assert is_quasi_iso(direct_sum_map(f, g))
