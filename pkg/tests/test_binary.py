from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kpowers.binary import (
    BinaryComplex, BinaryError, UnitClass, binary_power, bottom, diag, is_biacyclic, k1_class,
    lambda2_unit_experiment, random_biacyclic, sample_contraction, standard_unit_complex, top,
    torsion,
)
from kpowers.complexes import ChainComplex, ComplexError, cone_of_identity
from kpowers.linalg import Matrix
from kpowers.random_gen import random_acyclic, random_complex
from kpowers.rings import GF, QQ, ZZ, RingError
from kpowers.simplicial import dold_puppe_power

from strategies import rng_for, seeds

fields = st.sampled_from([GF(5), QQ, GF(7)])


def test_top_bottom_and_diag():
    C = random_complex(QQ, rng_for(1))
    assert top(diag(C)) == C and bottom(diag(C)) == C
    Z = ChainComplex.zero(QQ)
    assert diag(Z) == BinaryComplex(QQ, Z.ranks, [], [])


@given(fields, seeds)
def test_diag_of_acyclic_is_biacyclic(ring, seed):
    assert is_biacyclic(diag(random_acyclic(ring, rng_for(seed))))


def test_diag_of_non_acyclic_is_not_biacyclic():
    assert not is_biacyclic(diag(ChainComplex.concentrated(QQ, 1, 0)))


def test_standard_unit_complex():
    B = standard_unit_complex(QQ, 3)
    assert is_biacyclic(B)
    assert k1_class(B).value == 3
    with pytest.raises(RingError):
        standard_unit_complex(ZZ, 2)


def test_mismatched_differentials_are_rejected():
    d = Matrix.from_rows(QQ, [[1]])
    with pytest.raises(BinaryError):
        BinaryComplex(QQ, (1, 1, 1), [d, Matrix.zeros(QQ, 1, 1)], [d, d])


@given(fields, seeds)
def test_binary_power_of_diagonal(ring, seed):
    C = random_complex(ring, rng_for(seed), max_top=2, max_rank=2)
    assert binary_power(diag(C), 1) == diag(C)
    for k in (2, 3) if C.top <= 1 else (2,):
        assert binary_power(diag(C), k) == diag(dold_puppe_power(C, k))


@given(fields, seeds)
def test_first_binary_power_is_identity(ring, seed):
    B = random_biacyclic(ring, rng_for(seed))
    assert binary_power(B, 1) == B


@given(fields, seeds)
def test_binary_powers_stay_biacyclic(ring, seed):
    B = random_biacyclic(ring, rng_for(seed))
    assert is_biacyclic(B)
    assert is_biacyclic(binary_power(B, 2))


def test_torsion_of_two_term_complex():
    C = ChainComplex(QQ, [1, 1], [Matrix.from_rows(QQ, [[Fraction(7, 2)]])])
    assert torsion(C).value == Fraction(7, 2)


@given(fields, seeds)
def test_torsion_of_cone_of_identity_is_one(ring, seed):
    C = random_complex(ring, rng_for(seed))
    assert torsion(cone_of_identity(C), rng_for(seed, "h")).value == ring.one


@given(fields, seeds)
def test_torsion_does_not_depend_on_the_contraction(ring, seed):
    rng = rng_for(seed)
    C = random_acyclic(ring, rng)
    values = {torsion(C, rng).value for _ in range(5)}
    assert len(values) == 1


@given(fields, seeds)
def test_sampled_contractions_satisfy_the_identity(ring, seed):
    rng = rng_for(seed)
    C = random_acyclic(ring, rng)
    h = sample_contraction(C, rng)
    for n in range(C.top + 1):
        lhs = C.d(n + 1) @ h[n]
        if n:
            lhs = lhs + h[n - 1] @ C.d(n)
        assert lhs == Matrix.identity(ring, C.rank(n))


def test_torsion_rejects_non_acyclic_input():
    with pytest.raises(ComplexError):
        torsion(ChainComplex.concentrated(QQ, 1, 0))


@given(fields, seeds)
def test_k1_class_of_diagonal_is_one(ring, seed):
    assert k1_class(diag(random_acyclic(ring, rng_for(seed)))).value == ring.one


@given(fields, seeds)
def test_k1_class_is_multiplicative_on_direct_sums(ring, seed):
    rng = rng_for(seed)
    A, B = random_biacyclic(ring, rng), random_biacyclic(ring, rng)
    assert k1_class(A.direct_sum(B)) == k1_class(A) * k1_class(B)


def test_k1_class_of_sum_of_unit_complexes():
    B = standard_unit_complex(QQ, 2).direct_sum(standard_unit_complex(QQ, 5))
    assert k1_class(B).value == 10


def test_k1_class_needs_biacyclic_field_input():
    with pytest.raises(BinaryError):
        k1_class(diag(ChainComplex.concentrated(QQ, 1, 0)))
    with pytest.raises(RingError):
        k1_class(diag(random_acyclic(ZZ, rng_for(0))))


def test_unit_class_arithmetic():
    u = UnitClass(QQ, Fraction(2))
    assert (u * u.inverse()).value == 1
    assert (u / UnitClass(QQ, Fraction(4))).value == Fraction(1, 2)
    with pytest.raises(RingError):
        UnitClass(QQ, Fraction(0))


@pytest.mark.parametrize("u", [2, 3, 5])
def test_second_power_of_unit_complex_gives_inverse(u):
    exp = lambda2_unit_experiment(QQ, u)
    assert exp.observed.value == Fraction(1, u)
    assert exp.match
