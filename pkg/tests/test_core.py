from fractions import Fraction

import pytest
from hypothesis import given, settings

from affcanon.core import (Affinity, CanonPair, PointSet, WeightedPointSet, apply_affinity,
                           as_rational_point, cmp_canon_pairs, cmp_points, cmp_sets,
                           compose, invert, partition_mod2)
from affcanon.exactla import det
from helpers import FIG1_A, FIG1_B, affinities, point_sets

FIG1_PHI = Affinity([[-1, -1], [0, 1]], [13, 0])


def test_pointset_sorted_dedup():
    L = PointSet([(1, 0), (0, 5), (1, 0)])
    assert L.points == ((0, 5), (1, 0))
    assert len(L) == 2 and (0, 5) in L


def test_pointset_rejects_bad_input():
    with pytest.raises(ValueError):
        PointSet([(1, 2), (3,)])
    with pytest.raises(ValueError):
        PointSet([(1.5, 2)])
    with pytest.raises(ValueError):
        PointSet([])
    assert len(PointSet([], dim=3)) == 0


def test_weighted_aggregation():
    W = WeightedPointSet([((0, 0), 2), ((0, 0), -2), ((1, 1), 3), ((1, 1), 1)])
    assert W.items == (((1, 1), 4),)
    assert (-W).items == (((1, 1), -4),)
    with pytest.raises(ValueError):
        WeightedPointSet([((0, 0), 0.5)])


def test_affinity_requires_unimodular():
    with pytest.raises(ValueError):
        Affinity([[2, 0], [0, 1]], [0, 0])
    with pytest.raises(ValueError):
        Affinity([[1, 0], [0, 1]], [0])


def test_apply_identity_and_translation():
    L = PointSet(FIG1_A)
    assert apply_affinity(Affinity.identity(2), L) == L
    assert apply_affinity(Affinity.translation((1, 1, 1)), PointSet([(0, 0, 0)])) == PointSet([(1, 1, 1)])


def test_fig1_affinity_maps_set_a_onto_b():
    assert apply_affinity(FIG1_PHI, PointSet(FIG1_A)) == PointSet(FIG1_B)


def test_apply_to_frame_keeps_order_and_fractions():
    Q = ((Fraction(1, 2), 0), (0, 1))
    img = apply_affinity(FIG1_PHI, Q)
    assert img == ((Fraction(25, 2), 0), (12, 1))


def test_compose_invert():
    I = Affinity.identity(2)
    assert invert(I) == I
    inv = invert(FIG1_PHI)
    # this affinity is an involution
    assert compose(FIG1_PHI, FIG1_PHI) == I
    assert inv == FIG1_PHI
    u, v = Affinity.translation((1, 2)), Affinity.translation((-5, 7))
    assert compose(u, v) == Affinity.translation((-4, 9))


@settings(max_examples=100, deadline=None)
@given(point_sets(dims=(2,)), affinities(2), affinities(2))
def test_compose_is_composition(L, f, g):
    assert apply_affinity(compose(g, f), L) == apply_affinity(g, apply_affinity(f, L))
    assert apply_affinity(invert(f), apply_affinity(f, L)) == L
    assert abs(det([list(r) for r in f.A])) == 1


def test_cmp_points():
    assert cmp_points((0, 1), (1, 0)) == -1
    assert cmp_points((1, 0), (1, 0)) == 0
    assert cmp_points((-3, 5), (-3, 4)) == 1


def test_cmp_sets():
    assert cmp_sets(PointSet([], dim=1), PointSet([(0,)])) == -1
    assert cmp_sets(PointSet([(0, 0), (1, 0)]), PointSet([(0, 0), (0, 1)])) == 1
    assert cmp_sets(WeightedPointSet([((0, 0), -1)]), WeightedPointSet([((0, 0), 1)])) == -1


def test_cmp_canon_pairs():
    om = PointSet([(0, 0), (1, 0)])
    a = CanonPair(om, ((0, 0),))
    b = CanonPair(om, ((0, 0), (1, 0)))
    assert cmp_canon_pairs(a, a) == 0
    assert cmp_canon_pairs(a, b) == -1
    c = CanonPair(PointSet([(0, 0), (2, 0)]), ((0, 0),))
    assert cmp_canon_pairs(b, c) == -1 and cmp_canon_pairs(c, a) == 1


def test_partition_mod2():
    assert len(partition_mod2(PointSet([(0, 0), (2, 4), (6, 0)]))) == 1
    parts = partition_mod2(PointSet([(0, 0), (1, 0)]))
    assert parts == {(0, 0): PointSet([(0, 0)]), (1, 0): PointSet([(1, 0)])}
    with pytest.raises(ValueError):
        partition_mod2(PointSet([], dim=2))


def test_partition_fig1_residues():
    # residues worked out by hand
    parts = partition_mod2(PointSet(FIG1_A))
    assert parts == {
        (1, 0): PointSet([(3, 0), (5, 0), (5, 8), (3, 2)]),
        (0, 0): PointSet([(8, 2), (0, 4)]),
        (0, 1): PointSet([(8, 5), (2, 7)]),
    }


def test_as_rational_point_normalises():
    assert as_rational_point((Fraction(4, 2), 1)) == (2, 1)
    assert type(as_rational_point((Fraction(4, 2),))[0]) is int
