import pytest
from hypothesis import given, settings, strategies as st

from affcanon.canon import (are_equivalent, canonical_form, canonical_form_with_witness)
from affcanon.core import Affinity, PointSet, WeightedPointSet, apply_affinity, compose, invert
from affcanon.eqframes import FrameStats
from affcanon.exactla import det
from affcanon.oracle import brute_force_equivalent
from helpers import FIG1_A, FIG1_B, affinities, point_sets

# regression value; equivalence to the figure set is re-checked by brute force below
FIG1_CANON = [(-16, 5), (-11, 3), (-2, 2), (0, 0), (0, 2), (8, 0), (15, -3), (18, -3)]


def test_empty_and_singleton():
    E = PointSet([], dim=3)
    assert canonical_form(E) == E
    for p in [(5,), (3, -4), (1, 2, 3)]:
        assert canonical_form(PointSet([p])) == PointSet([(0,) * len(p)])
        om, psi = canonical_form_with_witness(PointSet([p]))
        assert apply_affinity(psi, PointSet([p])) == om
    with pytest.raises(ValueError):
        canonical_form_with_witness(E)


def test_fig1_golden():
    a, b = canonical_form(PointSet(FIG1_A)), canonical_form(PointSet(FIG1_B))
    assert a == b == PointSet(FIG1_CANON)
    assert brute_force_equivalent(PointSet(FIG1_A), a) is not None
    smaller = canonical_form(PointSet([p for p in FIG1_A if p != (3, 0)]))
    assert smaller != a


def test_fig1_equivalence_witness():
    L1, L2 = PointSet(FIG1_A), PointSet(FIG1_B)
    phi = are_equivalent(L1, L2)
    assert phi is not None and apply_affinity(phi, L1) == L2


def test_inequivalent_pair():
    assert are_equivalent(PointSet([(0, 0), (1, 0)]), PointSet([(0, 0), (2, 0)])) is None
    assert are_equivalent(PointSet([(0, 0)]), PointSet([(0, 0), (1, 0)])) is None
    with pytest.raises(ValueError):
        are_equivalent(PointSet([(0,)]), PointSet([(0, 0)]))


def test_self_equivalence():
    L = PointSet(FIG1_A)
    phi = are_equivalent(L, L)
    assert apply_affinity(phi, L) == L
    assert are_equivalent(PointSet([], dim=2), PointSet([], dim=2)) == Affinity.identity(2)


def test_reference_frames_option():
    L = PointSet(FIG1_A)
    r = canonical_form(L, frames="reference")
    assert r == canonical_form(PointSet(FIG1_B), frames="reference")
    with pytest.raises(ValueError):
        canonical_form(L, frames="bogus")


@settings(max_examples=150, deadline=None)
@given(point_sets(dims=(1, 2, 3, 4), max_n=16, bound=40), st.data())
def test_invariance_witness_idempotence(L, data):
    phi = data.draw(affinities(L.dim))
    om, psi = canonical_form_with_witness(L)
    assert canonical_form(L) == om
    assert canonical_form(apply_affinity(phi, L)) == om
    assert apply_affinity(psi, L) == om
    assert abs(det([list(r) for r in psi.A])) == 1
    assert canonical_form(om) == om


@settings(max_examples=80, deadline=None)
@given(point_sets(dims=(1, 2, 3), max_n=10, bound=10), st.data())
def test_reference_variant_invariant(L, data):
    phi = data.draw(affinities(L.dim))
    assert canonical_form(apply_affinity(phi, L), frames="reference") == canonical_form(
        L, frames="reference")


@settings(max_examples=80, deadline=None)
@given(point_sets(dims=(2, 3), max_n=12, bound=20), st.data())
def test_composed_witness(L, data):
    phi = data.draw(affinities(L.dim))
    L2 = apply_affinity(phi, L)
    _, psi1 = canonical_form_with_witness(L)
    _, psi2 = canonical_form_with_witness(L2)
    assert apply_affinity(compose(invert(psi2), psi1), L) == L2
    found = are_equivalent(L, L2)
    assert found is not None and apply_affinity(found, L) == L2


@settings(max_examples=60, deadline=None)
@given(point_sets(dims=(2,), max_n=10, bound=10), st.data())
def test_weighted_invariance(L, data):
    ws = data.draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(L), max_size=len(L)))
    W = WeightedPointSet(list(zip(L.points, ws)), dim=2)
    phi = data.draw(affinities(2))
    om, psi = canonical_form_with_witness(W)
    assert canonical_form(apply_affinity(phi, W)) == om
    assert apply_affinity(psi, W) == om


def test_stats_collected():
    st_ = FrameStats()
    canonical_form(PointSet(FIG1_A), stats=st_)
    assert st_.calls > 0 and 1 <= st_.max_frameset <= 12
