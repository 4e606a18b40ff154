"""Dissected marked surfaces, skew-gentle presentations, double covers
and winding-number invariants over exact rational arithmetic.

The package models a compact oriented surface with marked points as a
collection of polygons glued along shared arcs, extracts gentle and
skew-gentle quiver presentations from such dissections, constructs the
associated finite-dimensional algebras with :class:`fractions.Fraction`
coefficients, builds canonical branched double covers and quotients by
orientation-preserving involutions, verifies the skew-group-algebra
reductions relating the two, and computes line-field winding numbers
used to compare dissections up to derived equivalence.
"""
from __future__ import annotations

from .algebra import (
    BasisMap,
    CornerAlgebra,
    DeformationVerdict,
    MorphismVerdict,
    PathAlgebra,
    SpanBasis,
    TableAlgebra,
    algebra_from_products,
    basis_map_from_permutation,
    corner_algebra,
    graded_path_algebra,
    reduced_path_algebra,
    skew_group_algebra,
    verify_algebra_involution,
    verify_associativity,
    verify_deformation_map,
    verify_morphism,
)
from .cli import SurfaceFile, format_surface_file, parse_surface_file
from .covering import (
    CoveringData,
    LiftedCurve,
    double_cover,
    lift_curve,
    quotient,
    transport_curve,
)
from .diagnostics import Diagnostic, Report, ValidationError, raise_on_error
from .equivariant import (
    DualReduction,
    IteratedSkewGroup,
    SkewGroupReduction,
    verify_dual_reduction,
    verify_iterated_skew_group,
    verify_skew_group_reduction,
)
from .fixtures import (
    fixture_path,
    one_orbifold_disc,
    special_chain_triple,
    two_hole_torus_pair,
    two_hole_torus_surface,
    two_marked_disc,
    two_orbifold_cylinder,
    two_orbifold_disc,
)
from .linefield import (
    EQUIVALENT,
    INCONCLUSIVE,
    NOT_EQUIVALENT,
    ComplexPresentation,
    EquivalenceVerdict,
    GradedArc,
    GradingResult,
    InvariantTuple,
    boundary_curve,
    boundary_curves,
    build_complex,
    cover_invariant_tuple,
    decide_ghat_equiv,
    decide_tilting_equiv,
    dual_dissection,
    graded_arcs_from_solution,
    grading_solver,
    invariant_tuple,
    is_dual_dissection,
    map_graded_arc,
    puncture_loop,
    verify_d2,
    winding,
)
from .presentations import (
    Arrow,
    ExceptionCheck,
    Presentation,
    QuiverExtraction,
    check_gentle,
    check_skew_gentle,
    companion_pair,
    cycle_piece,
    extract_quiver,
    gentle_exception_check,
    glue_puzzle,
    iso_presentations,
    linear_piece,
    make_presentation,
    quiver_from_dissection,
    random_gentle_pair,
    random_triple,
    random_x_dissection,
    special_piece,
    split_presentation,
    split_swap_map,
    split_vertex_ids,
    surface_from_gentle,
    surface_from_triple,
    triple_from_x_dissection,
)
from .surface import (
    BOUNDARY,
    ORBIFOLD,
    PUNCTURE,
    Arc,
    BoundaryComponent,
    BoundarySegment,
    Classification,
    CombinatorialCurve,
    DissectedSurface,
    MarkedPoint,
    Passage,
    Polygon,
    Side,
    SurfaceInvolution,
    Topology,
    arc_side,
    boundary_components,
    bseg_side,
    classify_dissection,
    complete_involution,
    curve_crossings,
    make_surface,
    passage_winding,
    reverse_curve,
    surfaces_isomorphic,
    topology,
    validate,
    validate_curve,
    validate_involution,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "Arrow",
    "BOUNDARY",
    "BasisMap",
    "BoundaryComponent",
    "BoundarySegment",
    "Classification",
    "CombinatorialCurve",
    "ComplexPresentation",
    "CornerAlgebra",
    "CoveringData",
    "DeformationVerdict",
    "Diagnostic",
    "DissectedSurface",
    "DualReduction",
    "EQUIVALENT",
    "EquivalenceVerdict",
    "ExceptionCheck",
    "GradedArc",
    "GradingResult",
    "INCONCLUSIVE",
    "InvariantTuple",
    "IteratedSkewGroup",
    "LiftedCurve",
    "MarkedPoint",
    "MorphismVerdict",
    "NOT_EQUIVALENT",
    "ORBIFOLD",
    "PUNCTURE",
    "Passage",
    "PathAlgebra",
    "Polygon",
    "Presentation",
    "QuiverExtraction",
    "Report",
    "Side",
    "SkewGroupReduction",
    "SpanBasis",
    "SurfaceFile",
    "SurfaceInvolution",
    "TableAlgebra",
    "Topology",
    "ValidationError",
    "algebra_from_products",
    "arc_side",
    "basis_map_from_permutation",
    "boundary_components",
    "boundary_curve",
    "boundary_curves",
    "bseg_side",
    "build_complex",
    "check_gentle",
    "check_skew_gentle",
    "classify_dissection",
    "companion_pair",
    "complete_involution",
    "corner_algebra",
    "cover_invariant_tuple",
    "curve_crossings",
    "cycle_piece",
    "decide_ghat_equiv",
    "decide_tilting_equiv",
    "double_cover",
    "dual_dissection",
    "extract_quiver",
    "gentle_exception_check",
    "fixture_path",
    "format_surface_file",
    "glue_puzzle",
    "graded_arcs_from_solution",
    "graded_path_algebra",
    "grading_solver",
    "invariant_tuple",
    "is_dual_dissection",
    "iso_presentations",
    "lift_curve",
    "linear_piece",
    "make_presentation",
    "make_surface",
    "map_graded_arc",
    "one_orbifold_disc",
    "parse_surface_file",
    "passage_winding",
    "puncture_loop",
    "quiver_from_dissection",
    "quotient",
    "raise_on_error",
    "random_gentle_pair",
    "random_triple",
    "random_x_dissection",
    "reduced_path_algebra",
    "reverse_curve",
    "skew_group_algebra",
    "special_chain_triple",
    "special_piece",
    "split_presentation",
    "split_swap_map",
    "split_vertex_ids",
    "surface_from_gentle",
    "surface_from_triple",
    "surfaces_isomorphic",
    "topology",
    "transport_curve",
    "triple_from_x_dissection",
    "two_hole_torus_pair",
    "two_hole_torus_surface",
    "two_marked_disc",
    "two_orbifold_cylinder",
    "two_orbifold_disc",
    "validate",
    "validate_curve",
    "validate_involution",
    "verify_algebra_involution",
    "verify_associativity",
    "verify_d2",
    "verify_deformation_map",
    "verify_dual_reduction",
    "verify_iterated_skew_group",
    "verify_morphism",
    "verify_skew_group_reduction",
    "winding",
]
