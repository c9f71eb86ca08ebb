from math import comb

import pytest
from hypothesis import given, strategies as st

from kpowers.lambda_ring import (
    BinomialPoint, CoordinateError, UniversalPoint, check_composition_axiom, check_product_rule,
    check_sum_rule, is_multiple_of_top, lambda_binomial, single_factor_part,
    universal_composition_identity, universal_product_identity, universal_sum_identity,
)
from kpowers.symfun import universal_P_compose, universal_P_product

small = st.integers(-8, 8)
orders = st.integers(1, 3)


def test_binomial_values():
    assert lambda_binomial(4, 2) == 6
    assert lambda_binomial(-1, 2) == 1 and lambda_binomial(-1, 3) == -1
    assert all(lambda_binomial(n, 1) == n for n in range(-5, 6))


@given(small, st.integers(0, 6))
def test_negative_binomial_series(n, k):
    # (1+t)^n (1+t)^{-n} = 1
    conv = sum(lambda_binomial(n, i) * lambda_binomial(-n, k - i) for i in range(k + 1))
    assert conv == (1 if k == 0 else 0)


@given(small, small, orders)
def test_sum_rule_is_vandermonde(m, n, k):
    assert check_sum_rule(BinomialPoint(m), BinomialPoint(n), k)


@given(small, orders)
def test_sum_rule_with_zero(n, k):
    assert check_sum_rule(BinomialPoint(n), BinomialPoint(0), k)


@given(small, small, orders)
def test_product_rule(m, n, k):
    assert check_product_rule(BinomialPoint(m), BinomialPoint(n), k)


@given(small, orders, orders)
def test_composition_axiom_on_binomial_points(n, k, l):
    assert check_composition_axiom(BinomialPoint(n), k, l)


def test_composition_at_four():
    # λ^2(λ^2(4)) = λ^2(6) = 15 and P_{2,2}(4, 6, 4, 1) = 4·4 - 1
    assert universal_P_compose(2, 2).evaluate([4, 6, 4, 1]) == 15 == comb(6, 2)
    assert check_composition_axiom(BinomialPoint(4), 2, 2)


@pytest.mark.parametrize("k,l", [(1, 3), (3, 1), (2, 2), (2, 3), (3, 2)])
def test_universal_composition_identity(k, l):
    assert universal_composition_identity(k, l)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_universal_sum_and_product(k):
    assert universal_sum_identity(k)
    assert universal_product_identity(k)


def test_generator_coordinates_are_bounded():
    (s,) = UniversalPoint.generators(2)
    assert str(s.coordinate(2)) == "e2"
    with pytest.raises(CoordinateError):
        s.coordinate(3)


def test_universal_square_of_generator():
    (s,) = UniversalPoint.generators(4)
    e1, e2 = (s.coordinate(i) for i in (1, 2))
    # P_2 with both alphabets specialized to s: 2 e1^2 e2 - 2 e2^2
    want = universal_P_product(2).evaluate([e1, e2, e1, e2], one=s.one())
    assert (s * s).coordinate(2) == want
    assert str(want) == "2*e1^2*e2 - 2*e2^2"


@pytest.mark.parametrize("k,l", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_single_factor_part_is_multiple_of_top(k, l):
    P = universal_P_compose(k, l)
    assert is_multiple_of_top(P, k * l)
    assert set(single_factor_part(P)) <= {f"e{k * l}"}
