"""Exact integer / rational linear algebra.

Matrices are lists (or tuples) of rows of Python ints or Fractions.
Nothing here touches floating point.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]


class HnfResult(Tuple[IntMatrix, IntMatrix]):
    """Pair ``(H, U)`` with ``U @ M == H``; ``H`` in row Hermite normal form."""

    __slots__ = ()

    def __new__(cls, H, U):
        return super().__new__(cls, (H, U))

    @property
    def H(self) -> IntMatrix:
        return self[0]

    @property
    def U(self) -> IntMatrix:
        return self[1]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def det(M) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = M
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if n == 4:
        # Laplace expansion along the first two rows
        (a0, a1, a2, a3), (b0, b1, b2, b3), (c0, c1, c2, c3), (d0, d1, d2, d3) = M
        s01, s02, s03 = a0 * b1 - a1 * b0, a0 * b2 - a2 * b0, a0 * b3 - a3 * b0
        s12, s13, s23 = a1 * b2 - a2 * b1, a1 * b3 - a3 * b1, a2 * b3 - a3 * b2
        c01, c02, c03 = c0 * d1 - c1 * d0, c0 * d2 - c2 * d0, c0 * d3 - c3 * d0
        c12, c13, c23 = c1 * d2 - c2 * d1, c1 * d3 - c3 * d1, c2 * d3 - c3 * d2
        return s01 * c23 - s02 * c13 + s03 * c12 + s12 * c03 - s13 * c02 + s23 * c01
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def hnf_with_transform(M) -> HnfResult:
    """Row Hermite normal form of ``M`` together with a unimodular transform.

    Convention: echelon under left multiplication, positive pivots, entries
    above a pivot reduced into ``[0, pivot)``, zero rows last.  Returns
    ``(H, U)`` with ``U @ M == H`` and ``det(U) == +-1``.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    if m == 0 or n == 0:
        return HnfResult([list(r) for r in M], identity(m))
    H = [list(r) for r in M]
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        # bring the gcd of column j (rows r..m-1) into row r
        for i in range(r + 1, m):
            b = H[i][j]
            if b == 0:
                continue
            a = H[r][j]
            if a == 0:
                H[r], H[i] = H[i], H[r]
                U[r], U[i] = U[i], U[r]
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            Hr, Hi, Ur, Ui = H[r], H[i], U[r], U[i]
            H[r] = [x * s + y * t for s, t in zip(Hr, Hi)]
            H[i] = [ag * t - bg * s for s, t in zip(Hr, Hi)]
            U[r] = [x * s + y * t for s, t in zip(Ur, Ui)]
            U[i] = [ag * t - bg * s for s, t in zip(Ur, Ui)]
        piv = H[r][j]
        if piv == 0:
            continue
        if piv < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
            piv = -piv
        Hr, Ur = H[r], U[r]
        for i in range(r):
            q = H[i][j] // piv
            if q:
                H[i] = [s - q * t for s, t in zip(H[i], Hr)]
                U[i] = [s - q * t for s, t in zip(U[i], Ur)]
        r += 1
    return HnfResult(H, U)


def is_hnf(H) -> bool:
    """Check the row-HNF shape convention used by :func:`hnf_with_transform`."""
    last_col = -1
    seen_zero = False
    for i, row in enumerate(H):
        nz = next((j for j, v in enumerate(row) if v != 0), None)
        if nz is None:
            seen_zero = True
            continue
        if seen_zero or nz <= last_col:
            return False
        piv = row[nz]
        if piv <= 0:
            return False
        for k in range(i):
            if not 0 <= H[k][nz] < piv:
                return False
        for k in range(i + 1, len(H)):
            if H[k][nz] != 0:
                return False
        last_col = nz
    return True


def rref(rows) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(v) for v in r] for r in rows]
    if not A:
        return [], []
    n = len(A[0])
    pivots = []
    r = 0
    for j in range(n):
        p = next((i for i in range(r, len(A)) if A[i][j] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][j]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][j] != 0:
                f = A[i][j]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def _int_row(r) -> List[int]:
    if all(type(v) is int for v in r):
        return r
    fr = [Fraction(v) for v in r]
    den = lcm(*(v.denominator for v in fr))
    return [int(v * den) for v in fr]


def rank(rows) -> int:
    """Rank over Q.

    Rows are reduced one at a time against an integer echelon basis, so a
    long list stops being read once the rank reaches the column count.
    """
    basis = []  # (pivot column, row)
    ncols = None
    for r in rows:
        if ncols is None:
            ncols = len(r)
        v = _int_row(r)
        for j, b in basis:
            c = v[j]
            if c:
                a = b[j]
                v = [a * x - c * y for x, y in zip(v, b)]
        j = next((i for i, x in enumerate(v) if x), None)
        if j is None:
            continue
        g = gcd(*v)
        if g > 1:
            v = [x // g for x in v]
        basis.append((j, v))
        if len(basis) == ncols:
            break
    return len(basis)


def affine_rank(points) -> int:
    """Dimension of the rational affine span; ``-1`` for no points."""
    points = list(points)
    if not points:
        return -1
    p0 = points[0]
    return rank([a - b for a, b in zip(p, p0)] for p in points[1:])


def adjugate(B) -> Tuple[IntMatrix, int]:
    """``(adj(B), det(B))`` for a square integer matrix."""
    m = len(B)
    D = det(B)
    if m == 1:
        return [[1]], D
    adj = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(B) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj, D


class FrameSolver:
    """Membership and coordinate queries against a fixed frame.

    Frame points may be rational; everything is rescaled to integers once.
    Coordinates come back as integer numerators over one positive
    denominator, so comparing them lexicographically compares the rational
    coordinates.
    """

    __slots__ = ("frame", "dim", "scale", "eqs", "num", "off", "den")

    def __init__(self, frame):
        self.frame = tuple(frame)
        if not self.frame:
            self.dim = None
            self.eqs = None
            return
        d = len(self.frame[0])
        self.dim = d
        if all(type(c) is int for q in self.frame for c in q):
            scale = 1
            F = [list(q) for q in self.frame]
        else:
            scale = lcm(*(Fraction(c).denominator for q in self.frame for c in q))
            F = [[int(Fraction(c) * scale) for c in q] for q in self.frame]
        self.scale = scale
        q0 = F[0]
        dirs = [[a - b for a, b in zip(q, q0)] for q in F[1:]]
        m = len(dirs)
        if m and rank(dirs) != m:
            raise ValueError("frame points are not affinely independent")
        # the last d - m rows of U with U @ dirs^T = HNF are a kernel basis
        if m:
            U = hnf_with_transform([list(c) for c in zip(*dirs)]).U
            kernel = U[m:]
        else:
            kernel = identity(d)
        self.eqs = [(n, sum(a * b for a, b in zip(n, q0))) for n in kernel]
        if not m:
            self.num, self.off, self.den = [], [], 1
            return
        rows, chosen = [], []
        for j in range(d):
            cand = rows + [[v[j] for v in dirs]]
            if rank(cand) == len(cand):
                rows, chosen = cand, chosen + [j]
                if len(rows) == m:
                    break
        adj, D = adjugate(rows)
        if D < 0:
            adj = [[-x for x in r] for r in adj]
            D = -D
        # c = adj @ (scale*p - q0)[chosen] / D
        num = [[0] * d for _ in range(m)]
        for a in range(m):
            for b, j in enumerate(chosen):
                num[a][j] = adj[a][b] * scale
        self.num = num
        self.off = [-sum(adj[a][b] * q0[j] for b, j in enumerate(chosen)) for a in range(m)]
        self.den = D

    def contains(self, p) -> bool:
        if self.eqs is None:
            return False
        if len(p) != self.dim:
            raise ValueError("dimension mismatch between point and frame")
        s = self.scale
        for n, c in self.eqs:
            if s * sum(a * b for a, b in zip(n, p)) != c:
                return False
        return True

    def coord_key(self, p) -> Tuple[int, ...]:
        """Numerators of the frame coordinates of ``p`` (denominator ``self.den``)."""
        return tuple(sum(a * b for a, b in zip(row, p)) + o for row, o in zip(self.num, self.off))

    def coords(self, p) -> Tuple[Fraction, ...]:
        if not self.contains(p):
            raise ValueError("point is not in the affine span of the frame")
        return tuple(Fraction(k, self.den) for k in self.coord_key(p))


def in_affine_span(p, frame) -> bool:
    """True iff ``p`` lies in the rational affine span of ``frame``."""
    if not frame:
        return False
    if len(p) != len(frame[0]):
        raise ValueError("dimension mismatch between point and frame")
    return FrameSolver(frame).contains(p)


def coords_wrt_frame(p, frame) -> Tuple[Fraction, ...]:
    """Affine coordinates ``c`` with ``p = q0 + sum c_i (q_i - q0)``."""
    if not frame:
        raise ValueError("empty frame has an empty span")
    if len(p) != len(frame[0]):
        raise ValueError("dimension mismatch between point and frame")
    return FrameSolver(frame).coords(p)


def solve_rational(A: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Unique solution of a square nonsingular rational system."""
    n = len(A)
    red, piv = rref([list(row) + [bi] for row, bi in zip(A, b)])
    if piv[:n] != list(range(n)) or len(piv) != n:
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]
