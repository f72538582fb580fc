"""Canonical form of a point set relative to a covering frame.

Given ``(L, Q)`` with ``L`` inside the span of ``Q``, pick a complete
``L``-frame ``T`` (starting from ``Q & L`` and greedily adding the point with
the smallest ``Q``-coordinates), then move ``T[0]`` to the origin and the
differences ``T[i] - T[0]`` into Hermite normal form.  The result is
invariant under any integer affinity applied to both ``L`` and ``Q``.
"""

from typing import List, Optional, Sequence, Tuple

from . import exactla
from .core import Affinity, CanonPair, PointSet, WeightedPointSet, as_rational_point


class SetData:
    """A point set prepared for repeated frame-canonicalisation.

    ``points`` is sorted; ``weights`` is an aligned tuple or ``None``.
    """

    __slots__ = ("points", "weights", "dim", "pset", "_rank", "_extreme")

    def __init__(self, points, weights=None, dim=None):
        self.points = points
        self.weights = weights
        self.dim = dim if dim is not None else len(points[0])
        self.pset = frozenset(points)
        self._rank = None
        self._extreme = None

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = exactla.affine_rank(self.points)
        return self._rank

    @property
    def extreme(self):
        """Indices of a superset of the convex-hull vertices.

        The lexicographic minimum of any injective affine image of the set is
        the image of a hull vertex, so comparing minima only needs these.
        """
        if self._extreme is None:
            self._extreme = _hull_indices(self.points, self.dim)
        return self._extreme


def _hull_indices(points, d):
    n = len(points)
    if n <= 2:
        return tuple(range(n))
    if d == 1:
        return (0, n - 1)
    if d != 2:
        return tuple(range(n))

    def cross(o, a, b):
        return (points[a][0] - points[o][0]) * (points[b][1] - points[o][1]) - (
            points[a][1] - points[o][1]
        ) * (points[b][0] - points[o][0])

    lower: List[int] = []
    for i in range(n):
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: List[int] = []
    for i in range(n - 1, -1, -1):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return tuple(sorted(set(lower[:-1] + upper[:-1])))


def complete_frame(data: SetData, frame) -> Tuple[tuple, ...]:
    """The complete frame ``T`` built from ``frame`` (initialisation + greedy)."""
    pset = data.pset
    T = [q for q in frame if q in pset]
    k = data.rank
    if len(T) >= k + 1:
        return tuple(tuple(int(c) for c in q) for q in T)
    T = [tuple(int(c) for c in q) for q in T]
    solver = exactla.FrameSolver(frame)
    keyed = sorted((solver.coord_key(p), p) for p in data.points)
    for (a, _), (b, _) in zip(keyed, keyed[1:]):
        assert a != b, "distinct points must have distinct frame coordinates"
    span = exactla.FrameSolver(T) if T else None
    for _, p in keyed:
        if span is not None and span.contains(p):
            continue
        T.append(p)
        if len(T) == k + 1:
            break
        span = exactla.FrameSolver(T)
    return tuple(T)


def frame_transform(T) -> Tuple[list, tuple]:
    """Linear part ``A`` and base point ``p0`` of ``x -> A (x - p0)``."""
    p0 = T[0]
    d = len(p0)
    if len(T) == 1:
        return exactla.identity(d), p0
    M = [[T[j][i] - p0[i] for j in range(1, len(T))] for i in range(d)]
    return exactla.hnf_with_transform(M).U, p0


def _mapper(A, p0):
    d = len(p0)
    if d == 2:
        (a, b), (c, e) = A
        x0, y0 = p0
        bx = -(a * x0 + b * y0)
        by = -(c * x0 + e * y0)
        return lambda p: (a * p[0] + b * p[1] + bx, c * p[0] + e * p[1] + by)
    if d == 1:
        a = A[0][0]
        s = -a * p0[0]
        return lambda p: (a * p[0] + s,)
    off = [-sum(r * x for r, x in zip(row, p0)) for row in A]
    return lambda p: tuple(sum(r * x for r, x in zip(row, p)) + o for row, o in zip(A, off))


def omega_of(data: SetData, f) -> tuple:
    if data.weights is None:
        return tuple(sorted(map(f, data.points)))
    return tuple(sorted(zip(map(f, data.points), data.weights)))


def _min_image(data: SetData, f):
    pts = data.points
    if data.weights is None:
        return min(f(pts[i]) for i in data.extreme)
    w = data.weights
    return min((f(pts[i]), w[i]) for i in data.extreme)


class FrameResult:
    __slots__ = ("tag", "T", "A", "p0", "omega", "frame_image")

    def __init__(self, tag, T, A, p0, omega, frame_image):
        self.tag = tag
        self.T = T
        self.A = A
        self.p0 = p0
        self.omega = omega
        self.frame_image = frame_image

    @property
    def key(self):
        return (self.omega, self.frame_image)

    def affinity(self) -> Affinity:
        b = [-sum(a * x for a, x in zip(row, self.p0)) for row in self.A]
        return Affinity(self.A, b)


def evaluate(data: SetData, frame, tag=None) -> FrameResult:
    T = complete_frame(data, frame)
    A, p0 = frame_transform(T)
    f = _mapper(A, p0)
    return FrameResult(tag, T, A, p0, omega_of(data, f), tuple(f(t) for t in T))


def minimal_frames(data: SetData, candidates) -> List[FrameResult]:
    """All candidates whose canonical pair is minimal.

    ``candidates`` yields ``(tag, frame)``.  Candidates are first screened by
    the smallest element of their image (cheap: hull vertices only); only
    survivors get their full image sorted and compared.
    """
    best_min = None
    survivors = []
    for tag, frame in candidates:
        T = complete_frame(data, frame)
        A, p0 = frame_transform(T)
        f = _mapper(A, p0)
        m = _min_image(data, f)
        if best_min is None or m < best_min:
            best_min = m
            survivors = [(tag, T, A, p0, f)]
        elif m == best_min:
            survivors.append((tag, T, A, p0, f))
    if len(survivors) == 1:
        tag, T, A, p0, f = survivors[0]
        return [FrameResult(tag, T, A, p0, omega_of(data, f), tuple(f(t) for t in T))]
    results = [
        FrameResult(tag, T, A, p0, omega_of(data, f), tuple(f(t) for t in T))
        for tag, T, A, p0, f in survivors
    ]
    best = min(r.key for r in results)
    return [r for r in results if r.key == best]


def _set_data(L) -> SetData:
    if isinstance(L, WeightedPointSet):
        return SetData(L.points, L.weights, L.dim)
    return SetData(L.points, None, L.dim)


def _wrap_omega(L, omega):
    if isinstance(L, WeightedPointSet):
        return WeightedPointSet._from_sorted(omega, L.dim)
    return PointSet._from_sorted(omega, L.dim)


def canonical_form_with_frame(L, Q) -> Tuple[CanonPair, Affinity]:
    """Weak canonical form of ``(L, Q)`` plus the affinity that realises it.

    ``Q`` must be an affinely independent sequence of rational points whose
    span contains ``L``.  Weights (for a WeightedPointSet) ride along.
    """
    if not len(L):
        raise ValueError("empty point set")
    Q = tuple(as_rational_point(q) for q in Q)
    if not Q:
        raise ValueError("frame does not cover the point set")
    if any(len(q) != L.dim for q in Q):
        raise ValueError("dimension mismatch between frame and point set")
    solver = exactla.FrameSolver(Q)
    if not all(solver.contains(p) for p in L.points):
        raise ValueError("frame does not cover the point set")
    r = evaluate(_set_data(L), Q)
    return CanonPair(_wrap_omega(L, r.omega), r.frame_image), r.affinity()
