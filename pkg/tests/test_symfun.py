from itertools import combinations, product
from math import prod

import pytest
from hypothesis import given, strategies as st

from kpowers.symfun import (
    SymmetryError, SymPoly, conjugate, e_in_m, expand_elementary, partitions,
    power_sum_in_elementary, reduce_to_elementary, universal_P_compose, universal_P_product,
)


def elementary_values(xs, n):
    """e_1..e_n of the numbers xs (zeros beyond len(xs))."""
    return [sum(prod(c) for c in combinations(xs, i)) for i in range(1, n + 1)]


def monomial(exps):
    return {tuple(exps): 1}


def test_power_sum_of_two_variables():
    p = reduce_to_elementary({(2, 0): 1, (0, 2): 1})
    assert str(p) == "e1^2 - 2*e2"


def test_elementary_and_product_reduce_to_generators():
    assert str(reduce_to_elementary({(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})) == "e2"
    assert str(reduce_to_elementary({(1, 1, 1): 1})) == "e3"


def test_non_symmetric_input_is_rejected():
    with pytest.raises(SymmetryError):
        reduce_to_elementary({(1, 0): 1})


def test_third_power_sum():
    assert str(power_sum_in_elementary(3, 3)) == "e1^3 - 3*e1*e2 + 3*e3"


def test_e_in_m_small_cases():
    # e_1^2 = m_2 + 2 m_11 and e_2 = m_11
    # partitions are padded with zeros to the number of variables
    assert e_in_m((1, 1), 2) == {(2, 0): 1, (1, 1): 2}
    assert e_in_m((2,), 2) == {(1, 1): 1}


def test_partitions_and_conjugates():
    assert sorted(partitions(4, 4)) == sorted([(4, 0, 0, 0), (3, 1, 0, 0), (2, 2, 0, 0),
                                               (2, 1, 1, 0), (1, 1, 1, 1)])
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(conjugate((4, 2, 2, 1))) == (4, 2, 2, 1)


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_reduce_then_expand_roundtrip(exps):
    # symmetrize a monomial in three variables
    from itertools import permutations
    poly = {}
    for perm in set(permutations(exps)):
        poly[perm] = poly.get(perm, 0) + 1
    sp = reduce_to_elementary(poly)
    assert expand_elementary(sp, (3,)) == poly


def test_compose_trivial_cases():
    for l in (1, 2, 3):
        assert str(universal_P_compose(1, l)) == f"e{l}"
    for k in (1, 2, 3):
        assert str(universal_P_compose(k, 1)) == f"e{k}"


def test_compose_two_two():
    assert str(universal_P_compose(2, 2)) == "e1*e3 - e4"


def test_compose_frozen_values():
    assert str(universal_P_compose(2, 3)) == "-e1*e5 + e2*e4 + e6"
    assert str(universal_P_compose(3, 2)) == "e1^2*e4 - e1*e5 - 2*e2*e4 + e3^2 + e6"


@pytest.mark.parametrize("k,l", [(2, 2), (2, 3), (3, 2)])
@given(xs=st.lists(st.integers(-3, 3), min_size=1, max_size=6))
def test_compose_agrees_with_numeric_oracle(k, l, xs):
    n = k * l
    xs = (xs + [0] * n)[:n]
    # e_k of the products over l-subsets, evaluated numerically
    products = [prod(S) for S in combinations(xs, l)]
    want = elementary_values(products, k)[k - 1]
    assert universal_P_compose(k, l).evaluate(elementary_values(xs, n)) == want


def test_product_polynomials():
    assert str(universal_P_product(1)) == "e1*f1"
    assert str(universal_P_product(2)) == "e1^2*f2 + e2*f1^2 - 2*e2*f2"


@pytest.mark.parametrize("k", [1, 2, 3])
@given(xs=st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       ys=st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_product_agrees_with_numeric_oracle(k, xs, ys):
    xs, ys = xs[:k], ys[:k]
    want = elementary_values([a * b for a, b in product(xs, ys)], k)[k - 1]
    values = elementary_values(xs, k) + elementary_values(ys, k)
    assert universal_P_product(k).evaluate(values) == want


@pytest.mark.parametrize("k", [1, 2, 3])
def test_product_on_binomial_points(k):
    from math import comb
    for m, n in product(range(0, 5), repeat=2):
        values = [comb(m, i) for i in range(1, k + 1)] + [comb(n, i) for i in range(1, k + 1)]
        assert universal_P_product(k).evaluate(values) == comb(m * n, k)


def test_polynomial_arithmetic():
    names = SymPoly.elementary_names(2)
    e1, e2 = SymPoly.generator(names, 0), SymPoly.generator(names, 1)
    p = (e1 + e2) * (e1 - e2)
    assert p == e1 ** 2 - e2 ** 2
    assert (p * 6).exact_div(3) == p * 2
    assert p.is_homogeneous(2) is False
    assert (e1 * e1 - e2).weighted_degrees() == {2}
