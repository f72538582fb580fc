"""Canonical forms of finite subsets of Z^d under integer affinities."""

from typing import Optional, Tuple

from .core import Affinity, PointSet, WeightedPointSet, apply_affinity, compose, invert
from .eqframes import FrameStats, equivariant_frames2, equivariant_frames_ref
from .framecanon import FrameResult, SetData, evaluate


class InternalError(RuntimeError):
    """A computed witness failed verification (a bug, never a wrong answer)."""


def _as_set(L):
    if isinstance(L, (PointSet, WeightedPointSet)):
        return L
    return PointSet(L)


def _best(L, frames="eqframes2", stats: FrameStats = None, pivot="min") -> FrameResult:
    if frames == "eqframes2":
        S = equivariant_frames2(L, (), stats=stats, pivot=pivot)
    elif frames == "reference":
        S = equivariant_frames_ref(L, stats=stats, pivot=pivot)
    else:
        raise ValueError(f"unknown frame algorithm {frames!r}")
    data = SetData(L.points, L.weights, L.dim)
    best = None
    # sorted iteration keeps the witness deterministic when minima tie
    for R in sorted(S):
        r = evaluate(data, R, R)
        if best is None or r.omega < best.omega:
            best = r
    return best


def _wrap(L, omega):
    if isinstance(L, WeightedPointSet):
        return WeightedPointSet._from_sorted(omega, L.dim)
    return PointSet._from_sorted(omega, L.dim)


def canonical_form(L, *, frames: str = "eqframes2", stats: FrameStats = None):
    """Canonical representative of the Aff(d, Z)-orbit of ``L``.

    Works for PointSet and WeightedPointSet alike; the empty set is its own
    canonical form.
    """
    L = _as_set(L)
    if not len(L):
        return L
    return _wrap(L, _best(L, frames, stats).omega)


def canonical_form_with_witness(L, *, frames: str = "eqframes2",
                                stats: FrameStats = None) -> Tuple[PointSet, Affinity]:
    """Canonical form together with an affinity ``psi`` with ``psi(L) == form``."""
    L = _as_set(L)
    if not len(L):
        raise ValueError("empty point set has no witness")
    r = _best(L, frames, stats)
    return _wrap(L, r.omega), r.affinity()


def are_equivalent(L1, L2) -> Optional[Affinity]:
    """An affinity mapping ``L1`` onto ``L2``, or ``None`` if there is none."""
    L1, L2 = _as_set(L1), _as_set(L2)
    if L1.dim != L2.dim:
        raise ValueError("dimension mismatch")
    if type(L1) is not type(L2) or len(L1) != len(L2):
        return None
    if not len(L1):
        return Affinity.identity(L1.dim)
    om1, psi1 = canonical_form_with_witness(L1)
    om2, psi2 = canonical_form_with_witness(L2)
    if om1 != om2:
        return None
    phi = compose(invert(psi2), psi1)
    if apply_affinity(phi, L1) != L2:
        raise InternalError("composed witness does not map L1 onto L2")
    return phi
