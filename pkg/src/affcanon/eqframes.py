"""Equivariant selection of a small set of frames for a point set.

``equivariant_frames2`` is the production routine: it recurses on the
mod-2 congruence classes (halving when everything is congruent) and keeps,
among frames built from the points the sub-calls returned, exactly those
that minimise the frame-relative canonical form.  ``equivariant_frames_ref``
is the simpler variant without the extra frame argument; it can recurse
linearly deep and is only meant for cross-checking on small inputs.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, gcd, lcm
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from . import exactla
from .core import PointSet, WeightedPointSet, as_rational_point, parity
from .framecanon import SetData, minimal_frames

FrameSet = FrozenSet[tuple]

REF_MAX_POINTS = 16


@dataclass
class FrameStats:
    """Instrumentation collected over one or more top-level calls."""

    calls: int = 0
    max_frameset: int = 0
    candidates: int = 0
    # (parent, child) pairs of (size, diameter) where the measure failed to drop
    measure_violations: List[tuple] = field(default_factory=list)
    trace_measure: bool = False

    def record(self, size):
        self.calls += 1
        if size > self.max_frameset:
            self.max_frameset = size


def _pick_min(points):
    return points[0]


def _pick_max(points):
    return points[-1]


def _half(q, p):
    out = []
    for a, b in zip(q, p):
        v = Fraction(a - b, 2) if isinstance(a, Fraction) else (
            (a - b) // 2 if (a - b) % 2 == 0 else Fraction(a - b, 2))
        if isinstance(v, Fraction) and v.denominator == 1:
            v = v.numerator
        out.append(v)
    return tuple(out)


def _diameter(points):
    if len(points) < 2:
        return 0
    return max(max(c) - min(c) for c in zip(*points))


def enumerate_frames(pool, Q, cover_target) -> List[tuple]:
    """Ordered tuples ``R`` of distinct pool points with ``Q + R`` a frame covering ``cover_target``.

    Enumeration is deterministic: by length, then lexicographically over
    indices into the sorted pool.
    """
    pool = sorted(set(tuple(p) for p in pool))
    Q = tuple(Q)
    qset = set(Q)
    pool = [p for p in pool if p not in qset]
    cover = list(cover_target)
    if not cover:
        return [()]
    out = []
    if not pool and not Q:
        return out
    d = len((pool or list(Q))[0])
    base_rank = exactla.affine_rank(list(Q) + cover)
    need = base_rank + 1 - len(Q)
    max_len = min(d + 1 - len(Q), len(pool))
    for r in range(max(need, 0), max_len + 1):
        out.extend(_frames_of_length(pool, Q, cover, r))
    return out


def _frames_of_length(pool, Q, cover, r):
    found = []

    def rec(prefix, used, span):
        if len(prefix) == r:
            full = Q + tuple(prefix)
            if not full:
                return
            solver = span if span is not None else exactla.FrameSolver(full)
            if all(solver.contains(p) for p in cover):
                found.append(tuple(prefix))
            return
        for i, p in enumerate(pool):
            if i in used:
                continue
            if span is not None and span.contains(p):
                continue
            full = Q + tuple(prefix) + (p,)
            rec(prefix + [p], used | {i}, exactla.FrameSolver(full))

    start = exactla.FrameSolver(Q) if Q else None
    rec([], frozenset(), start)
    return found


def _fast_frames(pool, Q, cover, rank_cover):
    """Enumerate frames when ``pool`` lies inside ``cover`` (the common case).

    Then every covering frame has exactly ``rank(Q + cover) + 1 - |Q|``
    points and any independent tuple of that length covers.
    """
    d = len(pool[0])
    need = rank_cover + 1 - len(Q)
    if need <= 0:
        return [()]
    if not Q and d == 2 and need == 3:
        out = []
        for a, b in permutations(pool, 2):
            ux, uy = b[0] - a[0], b[1] - a[1]
            for c in pool:
                if (c[0] - a[0]) * uy - (c[1] - a[1]) * ux != 0:
                    out.append((a, b, c))
        return out
    out = []

    def rec(prefix, span):
        if len(prefix) == need:
            out.append(tuple(prefix))
            return
        for p in pool:
            if p in prefix:
                continue
            if span is not None and span.contains(p):
                continue
            full = Q + tuple(prefix) + (p,)
            rec(prefix + [p], exactla.FrameSolver(full) if len(prefix) + 1 < need else None)

    rec([], exactla.FrameSolver(Q) if Q else None)
    return out


class _Ctx:
    __slots__ = ("pick", "stats", "mode")

    def __init__(self, pick, stats, mode="classwise"):
        self.pick = pick
        self.stats = stats
        self.mode = mode


def _covers(Q, R, target_rank):
    return len(Q) + len(R) - 1 == target_rank


def _class_candidates(ctx, frame_sets, Q, points, weights, dim, measure):
    """Candidate frames built from the sub-call results.

    A sub-call frame ``R`` that already covers ``points`` (together with
    ``Q``) is a candidate as is; otherwise it is extended by every ``T`` of
    a recursive call on ``points`` with frame ``Q + R``.
    """
    target_rank = exactla.affine_rank(list(Q) + list(points))
    out = []
    for R in sorted(set().union(*frame_sets)):
        if _covers(Q, R, target_rank):
            out.append(R)
            continue
        for T in sorted(_ef2(points, weights, Q + R, ctx, dim, measure)):
            out.append(R + T)
    return out


# point colours use at most this many simplices per node
COLOR_BUDGET = 20000


def _int64_dets(M):
    """Exact determinants of a stack of small square integer matrices (cofactor expansion)."""
    k = M.shape[1]
    if k == 1:
        return M[:, 0, 0]
    if k == 2:
        return M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
    out = np.zeros(M.shape[0], dtype=M.dtype)
    rest = M[:, 1:, :]
    for c in range(k):
        minor = _int64_dets(np.delete(rest, c, axis=2))
        term = M[:, 0, c] * minor
        out = out - term if c % 2 else out + term
    return out


def _simplex_volumes(U, subsets, d):
    """Lattice volumes of the simplices ``U[S]`` for each row ``S`` of ``subsets``."""
    j = subsets.shape[1] - 1
    B = 2 * max(abs(c) for p in U for c in p)
    # every minor is a sum of at most j! products of j entries bounded by B;
    # past int64 range fall back to exact Python integers in object arrays
    dtype = np.int64 if factorial(j) * B ** j < 2 ** 62 else object
    A = np.array(U, dtype=dtype)
    V = A[subsets[:, 1:]] - A[subsets[:, :1]]
    if j == d:
        return np.abs(_int64_dets(V))
    g = np.zeros(len(subsets), dtype=dtype)
    for cols in combinations(range(d), j):
        g = np.gcd(g, _int64_dets(V[:, :, list(cols)]))
    return g


def _color_levels(points, Q=()):
    """Affine-invariant point colourings of ``points`` relative to the frame ``Q``,
    one per simplex size, cheapest first.

    At level ``j`` the colour of ``x`` is the sorted multiset, over
    ``j``-simplices with vertices in ``Q + points`` that contain ``x``, of
    (lattice volume, which ``Q`` vertices are used).  Levels stop at the
    affine dimension or when a level would exceed ``COLOR_BUDGET`` simplices;
    both limits depend only on invariants, so every level is equivariant.
    """
    n, m = len(points), len(Q)
    d = len(points[0])
    if Q and not all(type(c) is int for q in Q for c in q):
        # rescaling by the common denominator commutes with integer affinities
        D = lcm(*(Fraction(c).denominator for q in Q for c in q))
        U = [tuple(int(Fraction(c) * D) for c in q) for q in Q]
        U += [tuple(D * c for c in p) for p in points]
    else:
        U = [tuple(q) for q in Q] + list(points)
    k = exactla.affine_rank(U)
    j = 1
    while j <= k and comb(m + n, j + 1) <= COLOR_BUDGET:
        yield _colors_at(U, m, n, j, d)
        j += 1


def _point_colors(points, Q=()):
    """The finest affordable colouring from ``_color_levels``, or None."""
    last = None
    for last in _color_levels(points, Q):
        pass
    return last


def _colors_at(U, m, n, j, d):
    subsets = _subsets(m + n, j + 1, m)
    vols, codes = np.unique(_simplex_volumes(U, subsets, d), return_inverse=True)
    # which Q vertices a simplex uses, as a bitmask
    masks = np.where(subsets < m, np.left_shift(1, np.minimum(subsets, m)), 0).sum(axis=1)
    tags = np.stack([codes.reshape(-1).astype(np.int64), masks], axis=1)
    colors = []
    for i in range(m, m + n):
        rows, counts = np.unique(tags[(subsets == i).any(axis=1)], axis=0, return_counts=True)
        colors.append(tuple(zip((int(vols[c]) for c in rows[:, 0]), map(int, rows[:, 1]),
                                counts.tolist())))
    return colors


@lru_cache(maxsize=256)
def _subsets(size, k, m):
    """Index ``k``-subsets of ``range(size)`` meeting ``range(m, size)``."""
    arr = np.array([S for S in combinations(range(size), k) if S[-1] >= m], dtype=np.intp)
    arr.setflags(write=False)
    return arr.reshape(-1, k)


def _select_classes(parts, points, Q):
    """Classes whose frames are used: maximal rank with ``Q``, then smallest,
    then smallest multisets of point colours, level by level.

    All keys are affine invariants of ``(points, Q)``, so the selection is
    equivariant.
    """
    keyed = []
    for idx in parts:
        r = exactla.affine_rank(list(Q) + [points[i] for i in idx])
        keyed.append(((-r, len(idx)), idx))
    best = min(k for k, _ in keyed)
    chosen = [idx for k, idx in keyed if k == best]
    if len(chosen) > 1:
        # refine level by level; stopping once the tie is broken is itself invariant
        for colors in _color_levels(points, Q):
            ck = [(tuple(sorted(colors[i] for i in idx)), idx) for idx in chosen]
            cbest = min(k for k, _ in ck)
            chosen = [idx for k, idx in ck if k == cbest]
            if len(chosen) == 1:
                break
    return chosen


def _check_measure(ctx, parent, child):
    if parent is None:
        return
    if not child < parent:
        ctx.stats.measure_violations.append((parent, child))


def _ef2(points, weights, Q, ctx, dim, parent=None):
    """Core recursion.  ``points`` sorted, ``weights`` aligned or None."""
    stats = ctx.stats
    if Q:
        span = exactla.FrameSolver(Q)
        keep = [i for i, p in enumerate(points) if not span.contains(p)]
        if len(keep) != len(points):
            points = tuple(points[i] for i in keep)
            if weights is not None:
                weights = tuple(weights[i] for i in keep)
    n = len(points)
    measure = None
    if stats is not None and stats.trace_measure:
        measure = (n, _diameter(points))
        _check_measure(ctx, parent, measure)
    if n <= 1:
        if stats is not None:
            stats.record(1)
        return frozenset([tuple(points)])

    classes: Dict[tuple, list] = {}
    for i, p in enumerate(points):
        classes.setdefault(parity(p), []).append(i)

    if len(classes) == 1:
        p = ctx.pick(points)
        sub = tuple(tuple((a - b) >> 1 for a, b in zip(x, p)) for x in points)
        subQ = tuple(_half(q, p) for q in Q)
        S = _ef2(sub, weights, subQ, ctx, dim, measure)
        result = frozenset(tuple(tuple(2 * c + o for c, o in zip(x, p)) for x in R) for R in S)
        if stats is not None:
            stats.record(len(result))
        return result

    parts = sorted(classes.values(), key=lambda idx: (len(idx), points[idx[0]]))
    data = SetData(points, weights, dim)

    def restrict(idx):
        return (tuple(points[i] for i in idx),
                None if weights is None else tuple(weights[i] for i in idx))

    largest = parts[-1]
    balanced = 2 * len(largest) <= n
    used = parts if balanced else parts[:-1]
    if ctx.mode == "pool":
        subs = [_ef2(*restrict(idx), Q, ctx, dim, measure) for idx in used]
        pool = sorted(set().union(*(R for S in subs for R in S)))
    else:
        subs = [_ef2(*restrict(idx), Q, ctx, dim, measure) for idx in _select_classes(used, points, Q)]
    if balanced:
        if ctx.mode == "pool":
            cands = _fast_frames(pool, Q, points, _rank_with(Q, data))
        else:
            cands = _class_candidates(ctx, subs, Q, points, weights, dim, measure)
    else:
        rest_idx = sorted(i for idx in used for i in idx)
        rest, rest_w = restrict(rest_idx)
        if ctx.mode == "pool":
            E = _fast_frames(pool, Q, rest, exactla.affine_rank(list(Q) + list(rest)))
        else:
            E = _class_candidates(ctx, subs, Q, rest, rest_w, dim, measure)
        hp, hw = restrict(largest)
        cands = []
        for R in E:
            for T in sorted(_ef2(hp, hw, Q + R, ctx, dim, measure)):
                cands.append(R + T)
    if stats is not None:
        stats.candidates += len(cands)
    best = minimal_frames(data, ((R, Q + R) for R in cands))
    result = frozenset(r.tag for r in best)
    if stats is not None:
        stats.record(len(result))
    return result


def _rank_with(Q, data: SetData) -> int:
    if not Q:
        return data.rank
    return exactla.affine_rank(list(Q) + list(data.points))


def _unpack(L):
    if isinstance(L, WeightedPointSet):
        return L.points, L.weights, L.dim
    if isinstance(L, PointSet):
        return L.points, None, L.dim
    L = PointSet(L)
    return L.points, None, L.dim


def equivariant_frames2(L, Q=(), *, stats: FrameStats = None, pivot: str = "min",
                        candidates: str = "classwise") -> FrameSet:
    """Equivariant set of frames ``R`` with ``Q + R`` covering ``L``.

    Every returned ``R`` is a tuple of points of ``L`` disjoint from ``Q``.
    Always nonempty; the empty frame is returned when ``L`` already lies in
    the span of ``Q``.
    """
    points, weights, dim = _unpack(L)
    if not points:
        raise ValueError("empty point set")
    Q = tuple(as_rational_point(q) for q in Q)
    if Q and exactla.affine_rank(Q) != len(Q) - 1:
        raise ValueError("Q is not affinely independent")
    if candidates not in ("classwise", "pool"):
        raise ValueError(f"unknown candidate rule {candidates!r}")
    pick = {"min": _pick_min, "max": _pick_max}[pivot]
    return _ef2(points, weights, Q, _Ctx(pick, stats, candidates), dim)


def _ef_ref(points, weights, ctx, dim):
    n = len(points)
    if n == 1:
        return frozenset([tuple(points)])
    classes: Dict[tuple, list] = {}
    for i, p in enumerate(points):
        classes.setdefault(parity(p), []).append(i)
    if len(classes) == 1:
        p = ctx.pick(points)
        sub = tuple(tuple((a - b) >> 1 for a, b in zip(x, p)) for x in points)
        S = _ef_ref(sub, weights, ctx, dim)
        result = frozenset(tuple(tuple(2 * c + o for c, o in zip(x, p)) for x in R) for R in S)
    else:
        pooled = set()
        for idx in classes.values():
            sp = tuple(points[i] for i in idx)
            sw = None if weights is None else tuple(weights[i] for i in idx)
            for R in _ef_ref(sp, sw, ctx, dim):
                pooled.update(R)
        pool = sorted(pooled)
        data = SetData(points, weights, dim)
        cands = _fast_frames(pool, (), pool, exactla.affine_rank(pool))
        best = minimal_frames(data, ((R, R) for R in cands))
        result = frozenset(r.tag for r in best)
    if ctx.stats is not None:
        ctx.stats.record(len(result))
    return result


def equivariant_frames_ref(L, *, max_points: int = REF_MAX_POINTS, stats: FrameStats = None,
                           pivot: str = "min") -> FrameSet:
    """Equivariant set of complete ``L``-frames, simple recursion (reference only)."""
    points, weights, dim = _unpack(L)
    if not points:
        raise ValueError("empty point set")
    if len(points) > max_points:
        raise ValueError(f"reference frame search refuses more than {max_points} points")
    pick = {"min": _pick_min, "max": _pick_max}[pivot]
    return _ef_ref(points, weights, _Ctx(pick, stats), dim)
