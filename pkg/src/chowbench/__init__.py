"""Exact GIT and Chow quotients of polarized toric varieties under a
one-parameter subgroup, with the blowup diagram between them."""

__version__ = "0.1.0"

from .action import (ActionAnalysis, ActionInput, NonPrimitiveWarning, NotEqualized, NotFixed,
                     TrivialAction, amfm_check, analyze, bb_closures, condition_star,
                     critical_values, equalization_check, fixed_faces)
from .fan import (Fan, LatticeMismatch, MorphismKind, NotARefinement, classify_morphism,
                  common_refinement, fans_equal, is_smooth, refines, star_subdivide)
from .kernels import BACKEND
from .polytope import (AffineChart, LatticePolytope, canonicalize, hull, minkowski_sum,
                       normal_fan, slice_at, truncate_between)
from .quotient import (QuotientDiagram, build_diagram, centers_report, chamber_grid,
                       chow_fiber_polytope, chow_minkowski_polytope, git_quotient, pruning)

__all__ = [
    "ActionAnalysis", "ActionInput", "AffineChart", "BACKEND", "Fan", "LatticeMismatch",
    "LatticePolytope", "MorphismKind", "NonPrimitiveWarning", "NotARefinement", "NotEqualized",
    "NotFixed", "QuotientDiagram", "TrivialAction", "amfm_check", "analyze", "bb_closures",
    "build_diagram", "canonicalize", "centers_report", "chamber_grid", "chow_fiber_polytope",
    "chow_minkowski_polytope", "classify_morphism", "common_refinement", "condition_star",
    "critical_values", "equalization_check", "fans_equal", "fixed_faces", "git_quotient", "hull",
    "is_smooth", "minkowski_sum", "normal_fan", "pruning", "refines", "slice_at",
    "star_subdivide", "truncate_between",
]
