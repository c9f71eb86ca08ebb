from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from kpowers.linalg import (
    Matrix, MatrixError, det, exterior_power_matrix, image_basis, in_span, invariant_factors,
    inverse, kernel_basis, kronecker, rank, saturate, smith_normal_form, solve,
)
from kpowers.random_gen import random_invertible
from kpowers.rings import GF, QQ, ZZ, RingError, ring_from_name

from strategies import matrices, rng_for, seeds


def M(ring, rows, cols=None):
    return Matrix.from_rows(ring, rows, cols)


def brute_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    return sum((-1) ** j * rows[0][j] * brute_det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(n) if rows[0][j])


def determinantal_factors(rows, m, n):
    """Invariant factors from gcds of minors: s_k = D_k / D_{k-1}."""
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for I in combinations(range(m), k):
            for J in combinations(range(n), k):
                g = gcd(g, brute_det([[rows[i][j] for j in J] for i in I]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


# -- rings --------------------------------------------------------------------

def test_ring_names_and_parsing():
    assert ring_from_name("Z") is not None and ring_from_name("F7").p == 7
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert GF(5).parse("1/2") == 3
    with pytest.raises(RingError):
        ring_from_name("F4")
    with pytest.raises(RingError):
        ZZ.parse("1/2")


# -- Smith normal form ----------------------------------------------------------

def test_snf_identity():
    assert smith_normal_form(M(ZZ, [[1, 0], [0, 1]])).diag == (1, 1)


def test_snf_two_by_two():
    assert smith_normal_form(M(ZZ, [[2, 4], [6, 8]])).diag == (2, 4)


def test_snf_zero_matrix():
    assert smith_normal_form(Matrix.zeros(ZZ, 2, 3)).diag == ()


@given(matrices(ring=ZZ))
def test_snf_matches_determinantal_divisors(A):
    assert invariant_factors(A) == determinantal_factors(A.tolist(), A.rows, A.cols)


@given(matrices(ring=ZZ))
def test_snf_transforms(A):
    S = smith_normal_form(A)
    D = Matrix.diagonal(ZZ, S.diag, A.rows, A.cols)
    assert S.left @ A @ S.right == D
    assert abs(det(S.left)) == 1 and abs(det(S.right)) == 1
    assert all(b % a == 0 for a, b in zip(S.diag, S.diag[1:]))
    assert S.diag == invariant_factors(A)


@given(matrices())
def test_field_snf_is_rank_ones(A):
    S = smith_normal_form(A)
    assert len(S.diag) == rank(A)
    assert S.left @ A @ S.right == Matrix.diagonal(A.ring, S.diag, A.rows, A.cols)


def test_sparse_unit_elimination_on_large_permutation_like_matrix():
    n = 60
    A = Matrix.from_sparse(ZZ, n, n, {**{(i, i): 1 for i in range(n)},
                                      **{(i, (i + 1) % n): -1 for i in range(n)}})
    # the cyclic difference operator has one zero invariant factor
    assert invariant_factors(A) == (1,) * (n - 1)
    assert rank(Matrix.from_rows(GF(2), A.tolist())) == n - 1


# -- kernel, image, solve --------------------------------------------------------

def test_kernel_of_identity_is_empty():
    assert kernel_basis(Matrix.identity(ZZ, 3)).cols == 0


def test_image_of_two():
    assert image_basis(M(ZZ, [[2]])) == M(ZZ, [[2]])


def test_kernel_and_image_rank_over_q():
    A = M(QQ, [[1, 1], [1, 1]])
    assert kernel_basis(A).cols == 1 and image_basis(A).cols == 1


@given(matrices())
def test_kernel_is_saturated_and_complete(A):
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    assert K.cols == A.cols - rank(A)
    if A.ring == ZZ:
        assert saturate(K).cols == K.cols
        assert all(x == 1 for x in invariant_factors(K))


@given(matrices(), seeds)
def test_solve_recovers_combinations(A, seed):
    rng = rng_for(seed)
    X = Matrix.from_rows(A.ring, [[rng.randint(-2, 2) for _ in range(2)] for _ in range(A.cols)], 2)
    B = A @ X
    Y = solve(A, B)
    assert Y is not None and A @ Y == B
    assert in_span(A, B)


def test_solve_detects_index_two_sublattice():
    assert solve(M(ZZ, [[2]]), M(ZZ, [[1]])) is None
    assert solve(M(QQ, [[2]]), M(QQ, [[1]])) == M(QQ, [[Fraction(1, 2)]])


# -- determinants and inverses ------------------------------------------------------

@given(st.integers(0, 4).flatmap(lambda n: matrices(ring=ZZ, shape=(n, n))))
def test_det_matches_cofactor_expansion(A):
    assert det(A) == brute_det(A.tolist())


@given(st.sampled_from([ZZ, QQ, GF(5)]), st.integers(0, 4), seeds)
def test_inverse_of_random_invertible(ring, n, seed):
    U = random_invertible(ring, n, rng_for(seed))
    assert U @ inverse(U) == Matrix.identity(ring, n)


def test_inverse_rejects_non_unit_determinant():
    with pytest.raises((MatrixError, ZeroDivisionError, ValueError)):
        inverse(M(ZZ, [[2]]))


# -- exterior powers and Kronecker products ---------------------------------------------

def test_exterior_power_of_identity():
    assert exterior_power_matrix(Matrix.identity(ZZ, 4), 2) == Matrix.identity(ZZ, 6)


def test_exterior_square_of_diagonal_is_determinant():
    assert exterior_power_matrix(M(ZZ, [[2, 0], [0, 5]]), 2) == M(ZZ, [[10]])


@given(matrices(ring=ZZ, shape=(3, 3)))
def test_exterior_square_is_matrix_of_minors(A):
    pairs = list(combinations(range(3), 2))
    want = [[brute_det([[A[i, j] for j in J] for i in I]) for J in pairs] for I in pairs]
    assert exterior_power_matrix(A, 2).tolist() == want


@given(matrices(ring=ZZ, shape=(3, 4)), matrices(ring=ZZ, shape=(4, 3)))
def test_exterior_power_is_functorial(A, B):
    for k in (1, 2, 3):
        assert exterior_power_matrix(A @ B, k) == exterior_power_matrix(A, k) @ exterior_power_matrix(B, k)


def test_kronecker_identities():
    assert kronecker(Matrix.identity(ZZ, 2), Matrix.identity(ZZ, 3)) == Matrix.identity(ZZ, 6)
    assert kronecker(M(ZZ, [[2]]), M(ZZ, [[3]])) == M(ZZ, [[6]])


@given(*[matrices(ring=ZZ, shape=(2, 2))] * 4)
def test_kronecker_mixed_product(A, B, C, D):
    assert kronecker(A, B) @ kronecker(C, D) == kronecker(A @ C, B @ D)


def test_shape_mismatch_raises():
    with pytest.raises(MatrixError):
        M(ZZ, [[1, 2]]) @ M(ZZ, [[1, 2]])
