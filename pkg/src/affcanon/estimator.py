"""scikit-learn style wrapper.

``AffineCanonicalizer`` is stateless apart from the dimension it was fitted
on; ``transform`` maps each point set to its canonical form, so equal
outputs mean equivalent inputs.
"""

from numbers import Integral

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import canon
from .core import PointSet, WeightedPointSet


def check_point_set(X, dim=None, weighted=False):
    """Coerce ``X`` into a PointSet (or WeightedPointSet).

    Accepts point sets, integer arrays of shape (n, d), sequences of integer
    tuples, and for weighted input a ``{point: weight}`` dict or a sequence of
    ``(point, weight)`` pairs.
    """
    if isinstance(X, (PointSet, WeightedPointSet)):
        if weighted and isinstance(X, PointSet):
            X = WeightedPointSet([(p, 1) for p in X.points], dim=X.dim)
        out = X
    elif weighted:
        items = X.items() if isinstance(X, dict) else X
        out = WeightedPointSet([(_int_row(p), _int_scalar(w)) for p, w in items], dim=dim)
    else:
        arr = X
        if isinstance(X, np.ndarray):
            if X.ndim != 2:
                raise ValueError(f"expected a 2-d array of points, got shape {X.shape}")
            integral_float = X.dtype.kind == "f" and bool(np.all(np.mod(X, 1) == 0))
            if X.dtype.kind not in "iuO" and not integral_float:
                raise ValueError(f"point coordinates must be integers, got dtype {X.dtype}")
            arr = X.tolist()
        out = PointSet([_int_row(p) for p in arr], dim=dim)
    if dim is not None and out.dim != dim:
        raise ValueError(f"expected dimension {dim}, got {out.dim}")
    return out


def check_point_sets(Xs, dim=None, weighted=False):
    """Validate a list of point sets sharing one dimension."""
    if isinstance(Xs, (PointSet, WeightedPointSet)):
        raise ValueError("expected a list of point sets, got a single point set")
    sets = []
    for X in Xs:
        S = check_point_set(X, dim=dim, weighted=weighted)
        if dim is None:
            dim = S.dim
        sets.append(S)
    return sets


def _int_scalar(v):
    if isinstance(v, bool) or not isinstance(v, (Integral, np.integer, float, np.floating)):
        raise ValueError(f"expected an integer, got {v!r}")
    if int(v) != v:
        raise ValueError(f"expected an integer, got {v!r}")
    return int(v)


def _int_row(p):
    return tuple(_int_scalar(c) for c in p)


class AffineCanonicalizer(TransformerMixin, BaseEstimator):
    """Map lattice point sets to canonical representatives of their orbits
    under integer affine maps.

    Parameters
    ----------
    frames : {"eqframes2", "reference"}
        Frame selection routine; "reference" is only for small sets.
    weighted : bool
        Treat inputs as weighted sets (``{point: weight}``).
    return_witness : bool
        If true, ``transform`` yields ``(form, affinity)`` pairs.
    """

    def __init__(self, frames="eqframes2", weighted=False, return_witness=False):
        self.frames = frames
        self.weighted = weighted
        self.return_witness = return_witness

    def fit(self, X, y=None):
        if self.frames not in ("eqframes2", "reference"):
            raise ValueError(f"unknown frames={self.frames!r}")
        sets = check_point_sets(X, weighted=self.weighted)
        if not sets:
            raise ValueError("cannot fit on an empty list of point sets")
        self.dim_ = sets[0].dim
        self.n_sets_ = len(sets)
        return self

    def transform(self, X):
        check_is_fitted(self, "dim_")
        out = []
        for S in check_point_sets(X, dim=self.dim_, weighted=self.weighted):
            if self.return_witness:
                out.append(canon.canonical_form_with_witness(S, frames=self.frames))
            else:
                out.append(canon.canonical_form(S, frames=self.frames))
        return out

    def equivalence_labels(self, X):
        """Integer label per set; equal labels exactly for equivalent sets."""
        check_is_fitted(self, "dim_")
        forms = [canon.canonical_form(S, frames=self.frames)
                 for S in check_point_sets(X, dim=self.dim_, weighted=self.weighted)]
        seen = {}
        return np.array([seen.setdefault(f, len(seen)) for f in forms], dtype=np.int64)
