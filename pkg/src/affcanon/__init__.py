"""Canonical forms of finite lattice point sets under integer affine maps."""

from .canon import (InternalError, are_equivalent, canonical_form,
                    canonical_form_with_witness)
from .core import (Affinity, CanonPair, PointSet, WeightedPointSet, apply_affinity,
                   cmp_canon_pairs, cmp_points, cmp_sets, compose, invert,
                   partition_mod2)
from .eqframes import FrameStats, equivariant_frames2, equivariant_frames_ref
from .estimator import AffineCanonicalizer, check_point_set, check_point_sets
from .exactla import coords_wrt_frame, hnf_with_transform, in_affine_span
from .framecanon import canonical_form_with_frame
from .weighted import (LaurentPoly, canonical_form_weighted, canonicalize_laurent,
                       parse_laurent, print_laurent)

__all__ = [
    "AffineCanonicalizer", "Affinity", "CanonPair", "FrameStats", "InternalError",
    "LaurentPoly", "PointSet", "WeightedPointSet", "apply_affinity", "are_equivalent",
    "canonical_form", "canonical_form_weighted", "canonical_form_with_frame",
    "canonical_form_with_witness", "canonicalize_laurent", "check_point_set",
    "check_point_sets", "cmp_canon_pairs", "cmp_points", "cmp_sets", "compose",
    "coords_wrt_frame", "equivariant_frames2", "equivariant_frames_ref",
    "hnf_with_transform", "in_affine_span", "invert", "parse_laurent",
    "partition_mod2", "print_laurent",
]
