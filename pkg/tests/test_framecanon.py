import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from affcanon.core import Affinity, PointSet, WeightedPointSet, apply_affinity
from affcanon.exactla import affine_rank
from affcanon.oracle import random_unimodular
from affcanon.framecanon import SetData, canonical_form_with_frame, complete_frame
from helpers import FIG1_A, FIG1_B, affinities, point_sets

FIG1_PHI = Affinity([[-1, -1], [0, 1]], [13, 0])


def test_singleton():
    pair, psi = canonical_form_with_frame(PointSet([(4, -7)]), [(4, -7)])
    assert pair.omega == PointSet([(0, 0)])
    assert pair.frame == ((0, 0),)
    assert psi == Affinity.translation((-4, 7))


def test_standard_simplex_fixed():
    L = PointSet([(0, 0), (1, 0), (0, 1)])
    pair, psi = canonical_form_with_frame(L, [(0, 0), (1, 0), (0, 1)])
    assert pair.omega == L
    assert pair.frame == ((0, 0), (1, 0), (0, 1))
    assert psi == Affinity.identity(2)


def test_fig1_with_mapped_frame():
    L1, L2 = PointSet(FIG1_A), PointSet(FIG1_B)
    for Q in [((3, 0), (5, 0), (8, 2)), ((0, 4), (2, 7), (3, 2)), ((8, 5), (3, 0), (5, 8))]:
        a, psi1 = canonical_form_with_frame(L1, Q)
        b, psi2 = canonical_form_with_frame(L2, apply_affinity(FIG1_PHI, Q))
        assert a == b
        assert apply_affinity(psi1, L1) == a.omega


def test_frame_completion_uses_q_coordinates():
    # Q covers but misses L; T is the two points with smallest Q-coordinates
    L = PointSet([(2, 0), (4, 0), (6, 0)])
    Q = ((Fraction(13, 2), 0), (0, 0))
    T = complete_frame(SetData(L.points), Q)
    assert T == ((6, 0), (4, 0))


def test_errors():
    L = PointSet([(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        canonical_form_with_frame(L, [(0, 0)])
    with pytest.raises(ValueError):
        canonical_form_with_frame(L, [])
    with pytest.raises(ValueError):
        canonical_form_with_frame(PointSet([], dim=2), [(0, 0)])
    with pytest.raises(ValueError):
        canonical_form_with_frame(L, [(0, 0, 0), (1, 1, 1)])


@st.composite
def sets_with_frames(draw):
    L = draw(point_sets(dims=(1, 2, 3), max_n=10, bound=12))
    d = L.dim
    # rational covering frame: base point plus scaled rows of a unimodular matrix
    V = random_unimodular(d, random.Random(draw(st.integers(0, 10**6))), 8, 2)
    den = draw(st.integers(1, 3))
    scale = Fraction(draw(st.integers(1, 5)), den)
    q0 = tuple(Fraction(draw(st.integers(-8, 8)), den) for _ in range(d))
    Q = (q0,) + tuple(tuple(a + scale * v for a, v in zip(q0, row)) for row in V)
    return L, Q


@settings(max_examples=150, deadline=None)
@given(sets_with_frames(), st.data())
def test_weak_canonical_form_invariance(LQ, data):
    L, Q = LQ
    phi = data.draw(affinities(L.dim))
    a, psi = canonical_form_with_frame(L, Q)
    b, _ = canonical_form_with_frame(apply_affinity(phi, L), apply_affinity(phi, Q))
    assert a == b
    assert apply_affinity(psi, L) == a.omega
    T = a.frame
    assert set(T) <= set(a.omega.points)
    assert len(T) == affine_rank(L.points) + 1


@settings(max_examples=60, deadline=None)
@given(sets_with_frames(), st.data())
def test_weights_ride_along(LQ, data):
    L, Q = LQ
    ws = data.draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(L), max_size=len(L)))
    W = WeightedPointSet(list(zip(L.points, ws)), dim=L.dim)
    pw, psi = canonical_form_with_frame(W, Q)
    pu, psi_u = canonical_form_with_frame(L, Q)
    assert pw.omega.points == pu.omega.points and psi == psi_u
    assert apply_affinity(psi, W) == pw.omega
