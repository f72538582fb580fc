import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from affcanon import exactla
from affcanon.exactla import (FrameSolver, affine_rank, coords_wrt_frame, det,
                              hnf_with_transform, in_affine_span, is_hnf, rank)
from affcanon.oracle import random_unimodular
from helpers import int_matrices


def naive_det(M):
    # cofactor expansion, independent of the Bareiss routine
    if not M:
        return 1
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * naive_det([r[:j] + r[j + 1:] for r in M[1:]])
               for j in range(len(M)))


def test_hnf_identity():
    H, U = hnf_with_transform([[1, 0], [0, 1]])
    assert H == [[1, 0], [0, 1]] and U == [[1, 0], [0, 1]]


def test_hnf_single_column():
    H, U = hnf_with_transform([[2], [4]])
    assert H == [[2], [0]]
    assert U == [[1, 0], [-2, 1]]
    assert det(U) == 1


def test_hnf_2x2():
    M = [[1, 2], [3, 4]]
    H, U = hnf_with_transform(M)
    assert H == [[1, 0], [0, 2]]
    assert exactla.matmul(U, M) == H
    assert abs(det(U)) == 1


def test_hnf_empty_matrix():
    H, U = hnf_with_transform([[], []])
    assert U == [[1, 0], [0, 1]]


def test_hnf_big_entries_exact():
    big = 2**200 + 7
    M = [[big, 3], [big * 2 + 1, 5]]
    H, U = hnf_with_transform(M)
    assert exactla.matmul(U, M) == H and is_hnf(H)


@settings(max_examples=200, deadline=None)
@given(int_matrices(), st.integers(0, 10**6))
def test_hnf_contract(M, seed):
    H, U = hnf_with_transform(M)
    assert exactla.matmul(U, M) == H
    assert abs(det(U)) == 1
    assert is_hnf(H)
    V = random_unimodular(len(M), random.Random(seed), 12, 3)
    assert hnf_with_transform(exactla.matmul(V, M)).H == H


def test_is_hnf_rejects():
    assert not is_hnf([[0, 1], [1, 0]])
    assert not is_hnf([[-1, 0], [0, 1]])
    assert not is_hnf([[1, 3], [0, 2]])
    assert not is_hnf([[0, 0], [1, 0]])
    assert is_hnf([[2, 1], [0, 3]])


@settings(max_examples=200, deadline=None)
@given(int_matrices(max_rows=4, max_cols=4, bound=50).filter(lambda M: len(M) == len(M[0])))
def test_det_matches_cofactor(M):
    assert det(M) == naive_det(M)


@settings(max_examples=200, deadline=None)
@given(int_matrices(max_rows=6, max_cols=5, bound=5))
def test_rank_matches_fraction_rref(M):
    assert rank(M) == len(exactla.rref(M)[0])


def test_xgcd():
    for a, b in [(0, 0), (12, 18), (-12, 18), (7, -3), (0, -5)]:
        g, x, y = exactla.xgcd(a, b)
        assert g >= 0 and x * a + y * b == g
        assert g == __import__("math").gcd(a, b)


def test_affine_rank_examples():
    assert affine_rank([]) == -1
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_rank([(0, 0), (2, 4), (1, 2)]) == 1
    assert affine_rank([(Fraction(1, 2), 0), (1, 0)]) == 1


def test_in_affine_span_examples():
    F = [(0, 0), (1, 1)]
    assert in_affine_span((0, 0), F)
    assert not in_affine_span((0, 0), [])
    assert in_affine_span((2, 2), F)
    assert not in_affine_span((2, 3), F)
    with pytest.raises(ValueError):
        in_affine_span((1, 2, 3), F)


def test_coords_examples():
    assert coords_wrt_frame((1, 1), [(1, 1), (3, 1), (1, 5)]) == (0, 0)
    assert coords_wrt_frame((3, 5), [(0, 0), (1, 0), (0, 1)]) == (3, 5)
    assert coords_wrt_frame((2, 3), [(1, 1), (3, 1), (1, 5)]) == (Fraction(1, 2), Fraction(1, 2))


def test_coords_errors():
    with pytest.raises(ValueError):
        coords_wrt_frame((1, 0), [(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        coords_wrt_frame((1, 0), [])
    with pytest.raises(ValueError):
        FrameSolver([(0, 0), (1, 1), (2, 2)])


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.just(d),
    st.lists(st.tuples(*[st.integers(-9, 9)] * d), min_size=1, max_size=d + 1),
    st.lists(st.integers(-5, 5), min_size=d + 1, max_size=d + 1),
    st.integers(1, 4))))
def test_coords_reconstruct(args):
    # a point built from known coordinates is recovered exactly
    d, F, c, den = args
    F = [tuple(Fraction(x, den) for x in q) for q in F]
    assume(affine_rank(F) == len(F) - 1)
    coeffs = [Fraction(v, 3) for v in c[: len(F) - 1]]
    p = tuple(F[0][i] + sum(a * (q[i] - F[0][i]) for a, q in zip(coeffs, F[1:])) for i in range(d))
    assert in_affine_span(p, F)
    assert list(coords_wrt_frame(p, F)) == coeffs


def test_solve_rational():
    assert exactla.solve_rational([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    with pytest.raises(ValueError):
        exactla.solve_rational([[1, 2], [2, 4]], [1, 1])
