from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from khturaev.errors import NotAComplex
from khturaev.intlinalg import HomologySummand, SparseIntMat, homology_pair, rank_over_rationals, smith_normal_form


def dense(rows):
    return SparseIntMat.from_dense(rows)


def sympy_factors(rows) -> list[int]:
    if not rows or not rows[0]:
        return []
    S = sympy_snf(Matrix(rows), domain=ZZ)
    diag = [abs(int(S[i, i])) for i in range(min(S.shape))]
    return sorted(d for d in diag if d)


small_matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def unimodular(n: int, rng: random.Random) -> list[list[int]]:
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if a == b:
            M = [[-x for x in row] if i == 0 else row for i, row in enumerate(M)]
            continue
        k = rng.randint(-2, 2)
        M[a] = [x + k * y for x, y in zip(M[a], M[b])]
    return M


def mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


class TestSparse:
    def test_no_zeros_stored(self):
        M = SparseIntMat(2, 2, {(0, 0): 0, (1, 1): 3})
        assert M.entries == {(1, 1): 3}

    def test_duplicate(self):
        with pytest.raises(ValueError):
            SparseIntMat(2, 2, [(0, 0, 1), (0, 0, 2)])

    def test_bounds(self):
        with pytest.raises(IndexError):
            SparseIntMat(1, 1, {(1, 0): 1})

    def test_product(self):
        A, B = dense([[1, 2], [0, 1]]), dense([[0, 1], [1, 0]])
        assert (A @ B) == dense([[2, 1], [1, 0]])


class TestSNF:
    def test_identity(self):
        assert smith_normal_form(dense([[1, 0], [0, 1]])) == [1, 1]

    def test_rank_one(self):
        M = dense([[2, 4], [4, 8]])
        assert smith_normal_form(M) == [2]
        assert rank_over_rationals(M) == 1

    def test_coprime_diagonal(self):
        assert smith_normal_form(dense([[2, 0], [0, 3]])) == [1, 6]

    def test_zero_and_identity_rank(self):
        assert rank_over_rationals(SparseIntMat(3, 4)) == 0
        assert rank_over_rationals(dense([[int(i == j) for j in range(5)] for i in range(5)])) == 5

    def test_big_entries(self):
        big = 10**30
        assert smith_normal_form(dense([[big, 0], [0, big * 3]])) == [big, 3 * big]

    @given(small_matrices)
    def test_against_sympy(self, rows):
        assert smith_normal_form(dense(rows)) == sympy_factors(rows)

    @given(small_matrices)
    def test_divisibility_chain(self, rows):
        f = smith_normal_form(dense(rows))
        assert all(b % a == 0 for a, b in zip(f, f[1:]))
        assert len(f) == rank_over_rationals(dense(rows)) == Matrix(rows).rank()

    @given(small_matrices, st.integers(0, 10**6))
    def test_unimodular_invariance(self, rows, seed):
        rng = random.Random(seed)
        U, V = unimodular(len(rows), rng), unimodular(len(rows[0]), rng)
        assert smith_normal_form(dense(mul(mul(U, rows), V))) == smith_normal_form(dense(rows))


class TestHomologyPair:
    def test_zero_maps(self):
        assert homology_pair(SparseIntMat(3, 0), SparseIntMat(0, 3)) == HomologySummand(3, ())

    def test_doubling(self):
        assert homology_pair(dense([[2]]), SparseIntMat(0, 1)) == HomologySummand(0, (2,))

    def test_not_a_complex(self):
        with pytest.raises(NotAComplex):
            homology_pair(dense([[1]]), dense([[1]]))

    @given(small_matrices)
    def test_rank_nullity(self, rows):
        # d_out = 0 after a surjection-free map: homology of C -> Z^n -> 0
        M = dense(rows)
        h = homology_pair(M, SparseIntMat(0, M.n_rows))
        f = smith_normal_form(M)
        assert h.free_rank == M.n_rows - len(f)
        assert h.torsion == tuple(d for d in f if d > 1)
