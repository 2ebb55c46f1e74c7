import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from cubicfm.intmat import (
    IntMatrix,
    determinant,
    elementary_divisors,
    hermite_normal_form,
    is_unimodular,
    kernel_basis,
    rank,
    saturate,
    smith_normal_form,
)

A2 = IntMatrix.from_rows([[2, -1], [-1, 2]])
U = IntMatrix.from_rows([[0, 1], [1, 0]])


def random_matrix(rng, max_dim=12, bound=20):
    r = rng.randint(1, max_dim)
    c = rng.randint(1, max_dim)
    return IntMatrix(r, c, [rng.randint(-bound, bound) for _ in range(r * c)])


def assert_snf_contract(A):
    Um, S, V = smith_normal_form(A)
    assert Um @ A @ V == S
    assert is_unimodular(Um) and is_unimodular(V)
    assert S.shape == A.shape
    for i in range(S.rows):
        for j in range(S.cols):
            if i != j:
                assert S[i, j] == 0
    d = S.diag()
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[: len(nz)] == tuple(nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return Um, S, V


def test_construct_and_shape():
    M = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert M.shape == (2, 3)
    assert M[1, 2] == 6
    assert M.T.shape == (3, 2)
    assert M.row(0) == (1, 2, 3)
    assert M.col(1) == (2, 5)
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [1, 2, 3])


def test_snf_identity():
    I = IntMatrix.identity(2)
    assert smith_normal_form(I) == (I, I, I)


def test_snf_examples():
    assert smith_normal_form(A2)[1] == IntMatrix.diagonal([1, 3])
    assert smith_normal_form(U)[1] == IntMatrix.diagonal([1, 1])


def test_snf_rectangular_and_zero():
    assert_snf_contract(IntMatrix.from_rows([[2, 4, 6], [4, 8, 12]]))
    _, S, _ = assert_snf_contract(IntMatrix.zeros(3, 2))
    assert S == IntMatrix.zeros(3, 2)


def test_snf_random_contract():
    rng = random.Random(20261014)
    for _ in range(600):
        assert_snf_contract(random_matrix(rng))


def test_snf_deterministic():
    rng = random.Random(7)
    A = random_matrix(rng)
    assert smith_normal_form(A) == smith_normal_form(A)


def test_divisors_match_sympy():
    rng = random.Random(3)
    for _ in range(60):
        A = random_matrix(rng, max_dim=6, bound=9)
        ours = tuple(x for x in elementary_divisors(A) if x)
        theirs = sympy_invariant_factors(sympy.Matrix(A.tolist()))
        assert ours == tuple(abs(int(x)) for x in theirs if x)


def test_determinant_examples():
    assert determinant(U) == -1
    assert determinant(IntMatrix.from_rows([[-2, 1], [1, -2]])) == 3
    assert determinant(IntMatrix.from_rows([[5]])) == 5
    with pytest.raises(ValueError):
        determinant(IntMatrix.from_rows([[1, 2]]))


def test_determinant_against_sympy_and_snf():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 7)
        A = IntMatrix(n, n, [rng.randint(-20, 20) for _ in range(n * n)])
        det = determinant(A)
        assert det == sympy.Matrix(A.tolist()).det()
        if det:
            d = smith_normal_form(A)[1].diag()
            prod = 1
            for x in d:
                prod *= x
            assert prod == abs(det)


def test_determinant_multiplicative():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 6)
        A = IntMatrix(n, n, [rng.randint(-9, 9) for _ in range(n * n)])
        B = IntMatrix(n, n, [rng.randint(-9, 9) for _ in range(n * n)])
        assert determinant(A @ B) == determinant(A) * determinant(B)


def test_large_entries_stay_exact():
    A = IntMatrix.from_rows([[10**30, 1], [1, 10**30 + 7]])
    assert determinant(A) == 10**30 * (10**30 + 7) - 1
    assert_snf_contract(A)


def test_kernel_examples():
    assert kernel_basis(IntMatrix.identity(3)).rows == 0
    assert kernel_basis(IntMatrix.from_rows([[1, 1]])) == IntMatrix.from_rows([[1, -1]])
    assert kernel_basis(IntMatrix.from_rows([[2, 4]])) == IntMatrix.from_rows([[2, -1]])


def test_kernel_properties_random():
    rng = random.Random(13)
    for _ in range(150):
        A = random_matrix(rng, max_dim=7, bound=6)
        K = kernel_basis(A)
        assert K.rows == A.cols - rank(A)
        if K.rows:
            assert A @ K.T == IntMatrix.zeros(A.rows, K.rows)
            assert saturate(K) == hermite_normal_form(K)


def test_saturate_examples():
    assert saturate(IntMatrix.from_rows([[2, 0]])) == IntMatrix.from_rows([[1, 0]])
    assert saturate(IntMatrix.identity(3)) == IntMatrix.identity(3)
    assert saturate(IntMatrix.from_rows([[2, -1]])) == hermite_normal_form(IntMatrix.from_rows([[2, -1]]))
    with pytest.raises(ValueError):
        saturate(IntMatrix.from_rows([[1, 2], [2, 4]]))


def test_saturate_contains_input():
    # sublattice: B = X * saturate(B) with X integral of full rank
    rng = random.Random(17)
    for _ in range(50):
        B = IntMatrix(2, 4, [rng.randint(-5, 5) for _ in range(8)])
        if rank(B) < 2:
            continue
        Sat = saturate(B)
        assert hermite_normal_form(IntMatrix.from_rows(B.tolist() + Sat.tolist())) == Sat
        assert all(x == 1 for x in elementary_divisors(Sat))


def test_hnf_canonical():
    B = IntMatrix.from_rows([[2, 4, 1], [0, 3, 3]])
    V = IntMatrix.from_rows([[1, 1], [2, 3]])  # unimodular row change
    assert hermite_normal_form(V @ B) == hermite_normal_form(B)
    H = hermite_normal_form(B)
    piv_prev = -1
    for r in range(H.rows):
        piv = next(j for j in range(H.cols) if H[r, j])
        assert piv > piv_prev and H[r, piv] > 0
        for i in range(r):
            assert 0 <= H[i, piv] < H[r, piv]
        piv_prev = piv


small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.integers(-30, 30), min_size=r * c, max_size=r * c).map(
            lambda e: IntMatrix(r, c, e))))


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_snf_hypothesis(A):
    assert_snf_contract(A)
