"""Points, point sets, affinities and the orderings used everywhere.

Points are plain tuples (of ints, or of ints/Fractions for frame points), so
Python's tuple comparison *is* the lexicographic order we need: first
coordinate most significant, and a proper prefix sorts first.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Tuple, Union

from . import exactla

Point = Tuple[int, ...]
RationalPoint = Tuple[Union[int, Fraction], ...]
Frame = Tuple[RationalPoint, ...]


def as_point(p) -> Point:
    out = []
    for c in p:
        if isinstance(c, bool) or int(c) != c:
            raise ValueError(f"non-integer coordinate {c!r}")
        out.append(int(c))
    return tuple(out)


def as_rational_point(p) -> RationalPoint:
    out = []
    for c in p:
        c = Fraction(c)
        out.append(c.numerator if c.denominator == 1 else c)
    return tuple(out)


class PointSet:
    """Finite subset of Z^d, stored sorted ascending, without duplicates."""

    __slots__ = ("dim", "points")

    def __init__(self, points: Iterable = (), dim: int = None):
        pts = sorted({as_point(p) for p in points})
        if dim is None:
            if not pts:
                raise ValueError("dimension of an empty PointSet must be given")
            dim = len(pts[0])
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
        self.dim = dim
        self.points = tuple(pts)

    @classmethod
    def _from_sorted(cls, points, dim):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.points = points
        return obj

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in set(self.points)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self):
        return hash((self.dim, self.points))

    def __lt__(self, other):
        return cmp_sets(self, other) < 0

    def __repr__(self):
        return f"PointSet({list(self.points)!r}, dim={self.dim})"

    @property
    def weights(self):
        return None


class WeightedPointSet:
    """Finite subset of Z^d with a nonzero integer weight on every point.

    Repeated points have their weights summed; zero totals are dropped.
    """

    __slots__ = ("dim", "items")

    def __init__(self, items: Union[Iterable, Dict] = (), dim: int = None):
        if isinstance(items, dict):
            items = items.items()
        acc: Dict[Point, int] = {}
        for p, w in items:
            p = as_point(p)
            if isinstance(w, bool) or int(w) != w:
                raise ValueError(f"non-integer weight {w!r}")
            acc[p] = acc.get(p, 0) + int(w)
        its = sorted((p, w) for p, w in acc.items() if w != 0)
        if dim is None:
            if not acc:
                raise ValueError("dimension of an empty WeightedPointSet must be given")
            dim = len(next(iter(acc)))
        for p in acc:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
        self.dim = dim
        self.items = tuple(its)

    @classmethod
    def _from_sorted(cls, items, dim):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.items = items
        return obj

    @property
    def points(self):
        return tuple(p for p, _ in self.items)

    @property
    def weights(self):
        return tuple(w for _, w in self.items)

    def as_dict(self):
        return dict(self.items)

    def __neg__(self):
        return WeightedPointSet._from_sorted(tuple((p, -w) for p, w in self.items), self.dim)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __eq__(self, other):
        if not isinstance(other, WeightedPointSet):
            return NotImplemented
        return self.dim == other.dim and self.items == other.items

    def __hash__(self):
        return hash((self.dim, self.items))

    def __lt__(self, other):
        return cmp_sets(self, other) < 0

    def __repr__(self):
        return f"WeightedPointSet({list(self.items)!r}, dim={self.dim})"


@dataclass(frozen=True)
class Affinity:
    """The map ``x -> A x + b`` with ``A`` unimodular."""

    A: Tuple[Tuple[int, ...], ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        b = tuple(int(v) for v in self.b)
        d = len(b)
        if len(A) != d or any(len(row) != d for row in A):
            raise ValueError("A must be a d x d matrix matching len(b)")
        if abs(exactla.det(A)) != 1:
            raise ValueError("linear part is not unimodular")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return len(self.b)

    @classmethod
    def identity(cls, d: int) -> "Affinity":
        return cls(exactla.identity(d), (0,) * d)

    @classmethod
    def translation(cls, v) -> "Affinity":
        return cls(exactla.identity(len(v)), tuple(v))

    def __call__(self, p):
        if len(p) != len(self.b):
            raise ValueError("dimension mismatch")
        return tuple(sum(a * x for a, x in zip(row, p)) + c for row, c in zip(self.A, self.b))

    def block_matrix(self):
        """The (d+1) x (d+1) matrix ``[[A, b], [0, 1]]``."""
        rows = [list(row) + [c] for row, c in zip(self.A, self.b)]
        rows.append([0] * self.dim + [1])
        return rows


class CanonPair(NamedTuple):
    omega: Union[PointSet, WeightedPointSet]
    frame: Frame


def _map_rational(phi: Affinity, p):
    return as_rational_point(phi(p))


def apply_affinity(phi: Affinity, X):
    """Apply ``phi`` to a point, frame (tuple of points), PointSet or WeightedPointSet."""
    if isinstance(X, PointSet):
        if X.dim != phi.dim:
            raise ValueError("dimension mismatch")
        return PointSet._from_sorted(tuple(sorted(phi(p) for p in X.points)), X.dim)
    if isinstance(X, WeightedPointSet):
        if X.dim != phi.dim:
            raise ValueError("dimension mismatch")
        return WeightedPointSet._from_sorted(tuple(sorted((phi(p), w) for p, w in X.items)), X.dim)
    X = tuple(X)
    if X and isinstance(X[0], (tuple, list)):
        return tuple(_map_rational(phi, p) for p in X)
    if not X and phi.dim != 0:
        return ()
    return phi(X)


def compose(phi2: Affinity, phi1: Affinity) -> Affinity:
    """``compose(phi2, phi1)(x) == phi2(phi1(x))``."""
    if phi1.dim != phi2.dim:
        raise ValueError("dimension mismatch")
    A = exactla.matmul(phi2.A, phi1.A)
    b = [x + c for x, c in zip(exactla.matvec(phi2.A, phi1.b), phi2.b)]
    return Affinity(A, b)


def invert(phi: Affinity) -> Affinity:
    d = phi.dim
    # det(A) = +-1, so the adjugate-based inverse is integral; get it from the HNF
    H, U = exactla.hnf_with_transform([list(r) for r in phi.A])
    assert H == exactla.identity(d)
    Ainv = U
    b = [-v for v in exactla.matvec(Ainv, phi.b)]
    return Affinity(Ainv, b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def cmp_points(p, q) -> int:
    if len(p) != len(q):
        raise ValueError("dimension mismatch")
    return _sign((p > q) - (p < q))


def _seq(X):
    if isinstance(X, WeightedPointSet):
        return X.items
    if isinstance(X, PointSet):
        return X.points
    return tuple(X)


def cmp_sets(X, Y) -> int:
    """Compare as sorted sequences (of points, or of (point, weight) pairs)."""
    if X.dim != Y.dim:
        raise ValueError("dimension mismatch")
    a, b = _seq(X), _seq(Y)
    return (a > b) - (a < b)


def cmp_canon_pairs(a: CanonPair, b: CanonPair) -> int:
    c = cmp_sets(a.omega, b.omega)
    if c:
        return c
    return (a.frame > b.frame) - (a.frame < b.frame)


def parity(p) -> Tuple[int, ...]:
    return tuple(c & 1 for c in p)


def partition_mod2(L: PointSet):
    """Classes of ``L`` by coordinatewise residue mod 2, as ``{residue: PointSet}``."""
    if not len(L):
        raise ValueError("cannot partition an empty set")
    classes: Dict[Tuple[int, ...], list] = {}
    for p in L.points:
        classes.setdefault(parity(p), []).append(p)
    return {r: PointSet._from_sorted(tuple(pts), L.dim) for r, pts in classes.items()}
