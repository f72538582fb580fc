"""Independent checking machinery: random affinities and brute-force equivalence.

Nothing here uses the canonical-form code; the brute-force search only
solves small rational linear systems.
"""

import random
from itertools import permutations
from typing import Optional

from . import exactla
from .core import Affinity, PointSet, apply_affinity

BRUTE_MAX_POINTS = 10
BRUTE_MAX_DIM = 3


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_unimodular(d: int, seed, steps: int, max_shift: int):
    rng = _rng(seed)
    A = exactla.identity(d)
    for _ in range(steps):
        op = rng.randrange(3) if d > 1 else 2
        if op == 0:
            i, j = rng.sample(range(d), 2)
            c = rng.randint(-max_shift, max_shift)
            A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        elif op == 1:
            i, j = rng.sample(range(d), 2)
            A[i], A[j] = A[j], A[i]
        else:
            i = rng.randrange(d)
            A[i] = [-a for a in A[i]]
    return A


def random_affinity(d: int, seed, steps: int = 10, max_shift: int = 3) -> Affinity:
    """Product of ``steps`` elementary unimodular row operations plus a translation.

    ``seed`` may be an int or a ``random.Random`` (which is then advanced).
    """
    rng = _rng(seed)
    A = random_unimodular(d, rng, steps, max_shift)
    b = [rng.randint(-max_shift, max_shift) for _ in range(d)]
    return Affinity(A, b)


def random_point_set(d: int, n: int, bits: int, seed) -> PointSet:
    """``n`` distinct points with coordinates in ``[-2**(bits-1), 2**(bits-1))``."""
    rng = _rng(seed)
    lo, hi = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    if bits <= 1:
        lo, hi = 0, 1
    pts = set()
    cap = (hi - lo + 1) ** d
    n = min(n, cap)
    while len(pts) < n:
        pts.add(tuple(rng.randint(lo, hi) for _ in range(d)))
    return PointSet(pts, dim=d)


def _first_frame(points, d):
    frame = [points[0]]
    for p in points[1:]:
        if exactla.affine_rank(frame + [p]) == len(frame):
            frame.append(p)
            if len(frame) == d + 1:
                break
    return frame


def brute_force_equivalent(L1: PointSet, L2: PointSet) -> Optional[Affinity]:
    """Decide equivalence of small full-dimensional sets by trying every frame image."""
    d = L1.dim
    if L2.dim != d:
        raise ValueError("dimension mismatch")
    if len(L1) != len(L2):
        raise ValueError("brute force needs sets of equal size")
    if len(L1) > BRUTE_MAX_POINTS or d > BRUTE_MAX_DIM:
        raise ValueError("instance too large for brute force")
    if exactla.affine_rank(L1.points) != d or exactla.affine_rank(L2.points) != d:
        raise ValueError("brute force needs full-dimensional sets")
    P = _first_frame(list(L1.points), d)
    # rows of the (d+1)x(d+1) system: [p, 1] -> target
    src = [list(p) + [1] for p in P]
    target = set(L2.points)
    for tup in permutations(L2.points, d + 1):
        if exactla.affine_rank(list(tup)) != d:
            continue
        # unknown row i of [A | b]: solve src @ row = tup[:, i]
        rows = []
        ok = True
        for i in range(d):
            sol = exactla.solve_rational(src, [q[i] for q in tup])
            if any(x.denominator != 1 for x in sol):
                ok = False
                break
            rows.append([int(x) for x in sol])
        if not ok:
            continue
        A = [r[:d] for r in rows]
        if abs(exactla.det(A)) != 1:
            continue
        phi = Affinity(A, [r[d] for r in rows])
        if set(apply_affinity(phi, L1).points) == target:
            return phi
    return None
