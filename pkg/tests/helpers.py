"""Shared hypothesis strategies and small fixtures."""

import random

from hypothesis import strategies as st

from affcanon.core import PointSet
from affcanon.oracle import random_affinity

FIG1_A = [(3, 0), (5, 0), (8, 2), (8, 5), (5, 8), (2, 7), (0, 4), (3, 2)]
FIG1_B = [(10, 0), (8, 0), (3, 2), (0, 5), (0, 8), (4, 7), (9, 4), (8, 2)]


def int_matrices(max_rows=5, max_cols=5, bound=30):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                min_size=m, max_size=m)))


@st.composite
def point_sets(draw, dims=(1, 2, 3), max_n=12, bound=20):
    d = draw(st.sampled_from(dims))
    pts = draw(st.lists(st.tuples(*[st.integers(-bound, bound)] * d), min_size=1, max_size=max_n))
    return PointSet(pts, dim=d)


@st.composite
def affinities(draw, d):
    seed = draw(st.integers(0, 2**32 - 1))
    steps = draw(st.integers(0, 40))
    return random_affinity(d, random.Random(seed), steps, 3)
