from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ihcyc.exactalg import (
    DENSE_LIMIT,
    ComplexError,
    GradedComplex,
    RationalMatrix,
    Subspace,
    block_matrix,
    image_basis,
    induced_rank,
    kernel_basis,
    rank,
    rref,
    smith_normal_form,
    solve,
)


def matrices(max_rows=7, max_cols=7, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_small_rank_and_kernel():
    M = RationalMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M) == 2
    ker = kernel_basis(M)
    assert len(ker) == 1
    assert M.apply(ker[0]) == {}


def test_fraction_entries():
    M = RationalMatrix.from_dense([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(M) == 1


def test_rref_pivots_and_leading_ones():
    M = RationalMatrix.from_dense([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    rows, piv = rref(M)
    assert piv == [0, 1]
    for r, p in zip(rows, piv):
        assert r[p] == 1
        assert min(r) == p


def test_solve():
    M = RationalMatrix.from_dense([[1, 1], [1, -1]])
    x = solve(M, {0: Fraction(3), 1: Fraction(1)})
    assert x == {0: 2, 1: 1}
    assert solve(RationalMatrix.from_dense([[1], [1]]), {0: 1, 1: 2}) is None


def test_block_matrix_and_shapes():
    A = RationalMatrix.identity(2)
    B = block_matrix([2, 1], [2, 1], {(0, 0): A, (1, 1): RationalMatrix.from_dense([[5]])})
    assert B.shape == (3, 3)
    assert B.to_dense()[2][2] == 5
    with pytest.raises(ValueError):
        A @ RationalMatrix.zeros(3, 1)


def test_subspace_coordinates():
    S = Subspace.from_vectors(3, [{0: 1, 1: 1}, {2: 1}])
    assert S.dim == 2
    c = S.coordinates({0: 2, 1: 2, 2: -1})
    assert c is not None
    assert S.coordinates({0: 1}) is None
    assert S.contains_subspace(Subspace.from_vectors(3, [{0: 1, 1: 1, 2: 1}]))


def test_graded_complex_shape_error():
    with pytest.raises(ComplexError):
        GradedComplex({0: 2, 1: 3}, {1: RationalMatrix.zeros(3, 3)})


def test_graded_complex_rejects_nonzero_square():
    d1 = RationalMatrix.from_dense([[1]])
    d2 = RationalMatrix.from_dense([[1]])
    C = GradedComplex({0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})
    with pytest.raises(ComplexError):
        C.betti()


def test_sparse_path_large_matrix():
    n = DENSE_LIMIT + 10
    M = RationalMatrix.from_dense([[1 if j in (i, (i + 1) % n) else 0 for j in range(n)] for i in range(n)])
    # circulant I + shift with even n has a one-dimensional kernel
    assert rank(M) == n - 1
    assert len(kernel_basis(M)) == 1


def test_induced_rank_identity():
    C = RationalMatrix.identity(3)
    assert induced_rank(C, [{0: 1}, {1: 1}], RationalMatrix.zeros(3, 0)) == 2


def test_smith_known():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == (2, 6, 12)
    assert smith_normal_form([[0, 0], [0, 0]]) == ()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_plus_nullity(rows):
    M = RationalMatrix.from_dense(rows)
    r = rank(M)
    ker = kernel_basis(M)
    assert r + len(ker) == M.cols
    for v in ker:
        assert M.apply(v) == {}
    assert len(image_basis(M)) == r
    assert len(rref(M)[1]) == r


@settings(max_examples=100, deadline=None)
@given(matrices(6, 6, -9, 9))
def test_rank_against_smith_and_sympy(rows):
    M = RationalMatrix.from_dense(rows)
    snf = smith_normal_form(rows)
    assert rank(M) == len(snf) == sympy.Matrix(rows).rank()
    for a, b in zip(snf, snf[1:]):
        assert b % a == 0


@settings(max_examples=60, deadline=None)
@given(matrices(5, 5, -6, 6))
def test_smith_against_sympy(rows):
    from sympy.matrices.normalforms import smith_normal_form as snf_ref

    ref = snf_ref(sympy.Matrix(rows), domain=sympy.ZZ)
    want = tuple(sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0))
    assert smith_normal_form(rows) == want


@settings(max_examples=80, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_rank_permutation_invariant(rows, rnd):
    M = RationalMatrix.from_dense(rows)
    r_idx = list(range(M.rows))
    c_idx = list(range(M.cols))
    rnd.shuffle(r_idx)
    rnd.shuffle(c_idx)
    assert rank(M.select_rows(r_idx).select_columns(c_idx)) == rank(M)
    assert rank(M.transpose()) == rank(M)
