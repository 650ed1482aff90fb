"""Two-generator PSL(2,R) discreteness via trace minimization, winding of
primitive curves over rationals, and numerical verification of curve-length
inequalities on hyperbolic pairs of pants."""

__version__ = "0.1.0"

from .halfplane import (
    Geodesic,
    Hexagon,
    Isometry,
    axis,
    classify,
    common_perpendicular,
    compose,
    factor_generator,
    fenchel_opposite,
    half_turn,
    hexagon_from_pair,
    multiplier,
    translation_length,
)
from .algorithm import (
    AlgorithmTrace,
    GeneratorPair,
    classify_elliptic,
    coherent_order,
    gm_step,
    nee_exponent,
    run_algorithm,
    stopping_check,
)
from .winding import (
    RationalClass,
    cf_expand,
    enumerate_primitives,
    intersections,
    primitive_word,
    wind,
)
from .bounds import (
    BoundReport,
    PantsData,
    build_pants_group,
    check_halfturn_bound,
    check_intersection_bounds,
    check_length_bounds,
    check_trace_descent,
    pants_data,
    seam_partial_sums,
)
