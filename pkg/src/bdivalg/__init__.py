"""Exact computations with superadditive divisorial systems on monoids and affine curves."""

from .curve_algebra import (
    Certificate,
    Divisor,
    GeneratorSet,
    MobileSystem,
    SaturationDatum,
    Verdict,
    b_constant,
    boundary_counterexample,
    check_saturation,
    compute_b,
    dichotomy_check,
    finite_generation_pipeline,
    floor_linear_system,
    graded_piece_oracle,
    index_bound_check,
    truncation_integral_check,
    validate_system,
)
from .diophantine import TargetPoint, build_u_system, find_approximant, nearest_integer_distance, walk
from .lattice_cone import (
    ConePosition,
    FgMonoid,
    RationalCone,
    cone_position,
    hilbert_basis_intersection,
    monoid_membership,
    simplicial_subdivision,
    truncate,
    uniform_truncation_constant,
)
from .superlinear import (
    MonoidFunction,
    StraightenedFunction,
    build_example_3_3,
    check_superadditive,
    compute_index,
    lipschitz_estimate,
    one_point_additivity,
    pl_detect,
    straighten,
)
from .surd import Surd, parse_surd

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ConePosition",
    "Divisor",
    "FgMonoid",
    "GeneratorSet",
    "MobileSystem",
    "MonoidFunction",
    "RationalCone",
    "SaturationDatum",
    "StraightenedFunction",
    "Surd",
    "TargetPoint",
    "Verdict",
    "b_constant",
    "boundary_counterexample",
    "build_example_3_3",
    "build_u_system",
    "check_saturation",
    "check_superadditive",
    "compute_b",
    "compute_index",
    "cone_position",
    "dichotomy_check",
    "find_approximant",
    "finite_generation_pipeline",
    "floor_linear_system",
    "graded_piece_oracle",
    "hilbert_basis_intersection",
    "index_bound_check",
    "lipschitz_estimate",
    "monoid_membership",
    "nearest_integer_distance",
    "one_point_additivity",
    "parse_surd",
    "pl_detect",
    "simplicial_subdivision",
    "straighten",
    "truncate",
    "truncation_integral_check",
    "uniform_truncation_constant",
    "validate_system",
    "walk",
]
