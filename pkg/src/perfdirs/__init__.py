"""Perfect and determined directions of rational weights on F_p^2."""

from .analysis import (
    classify_degenerate,
    determined_directions,
    perfect_count,
    perfect_directions,
    perfect_directions_spectral,
    redei_megyesi_check,
    verify_main_theorem,
)
from .constructions import (
    power_graph_example,
    small_support_example,
    so2_group,
    so2_orbit_example,
    two_lines_example,
)
from .plane import (
    INFINITY,
    AffineMap,
    Direction,
    Line,
    direction_of_pair,
    enumerate_directions,
    lines_in_direction,
)
from .search import SearchSpec, affine_canonical, run_search, verify_theorem_exhaustive
from .spectral import (
    annihilator,
    check_support_bound,
    check_uncertainty,
    fourier_is_zero,
    fourier_support,
    residue_class_sums,
)
from .weights import (
    RealWeightInput,
    WeightFunction,
    line_sum,
    parse_weight,
    rationalize,
    total_mass,
    transform_weight,
)

__version__ = "0.1.0"

__all__ = [
    "affine_canonical",
    "AffineMap",
    "annihilator",
    "check_support_bound",
    "check_uncertainty",
    "classify_degenerate",
    "determined_directions",
    "Direction",
    "direction_of_pair",
    "enumerate_directions",
    "fourier_is_zero",
    "fourier_support",
    "INFINITY",
    "Line",
    "line_sum",
    "lines_in_direction",
    "parse_weight",
    "perfect_count",
    "perfect_directions",
    "perfect_directions_spectral",
    "power_graph_example",
    "rationalize",
    "RealWeightInput",
    "redei_megyesi_check",
    "residue_class_sums",
    "run_search",
    "SearchSpec",
    "small_support_example",
    "so2_group",
    "so2_orbit_example",
    "total_mass",
    "transform_weight",
    "two_lines_example",
    "verify_main_theorem",
    "verify_theorem_exhaustive",
    "WeightFunction",
]
