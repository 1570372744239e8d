"""Verification workbench for intersection graphs of planar disc and curve families.

Builds seeded families of discs or quadratic graphs, computes the depths of
all boundary intersection points, union complexity and its profile g(k),
exact clique number and degeneracy coloring data, runs seeded sampling
experiments against the closed-form expectation, and emits machine-checkable
red/blue charge certificates for curve families.
"""

from .charging import (
    CertificateReport,
    ChargeColor,
    ChargeLedger,
    ChargeRecord,
    build_ledger,
    certificates_all_k,
    qualifying_points,
    verify_certificate,
)
from .depth import (
    CommonPointReport,
    DepthBoundReport,
    DepthProfile,
    IntersectionPoint,
    PointIncidence,
    check_common_point_bound,
    check_depth_bounds,
    depth_profile,
    find_common_point,
    intersection_points,
    masked_union_complexity,
    point_incidence,
    union_complexity,
)
from .errors import (
    BudgetExceeded,
    CertificateFailure,
    CoincidentError,
    DegeneracyError,
    Error,
    FormatError,
    GenerationFailure,
    KindError,
    ParameterError,
    TangencyError,
    ValidationError,
)
from .families import (
    Family,
    FamilyKind,
    GeneratorParams,
    default_tolerance,
    gen_common_point_discs,
    gen_lines_parabolas,
    gen_random_curves,
    gen_random_discs,
    load_family,
    save_family,
    validate_family,
)
from .geom_core import (
    Circle,
    Location,
    Point,
    QuadCurve,
    Side,
    Tolerance,
    ValidationReport,
    Violation,
    above_status,
    circle_circle_intersections,
    contains_point,
    curve_curve_intersections,
    validate_general_position,
)
from .graph import (
    ColoringBoundReport,
    EdgeBoundReport,
    EdgeClass,
    GraphStats,
    IntersectionGraph,
    build_graph,
    check_coloring_bound,
    check_edge_bound,
    clique_number,
    degeneracy_order,
    graph_stats,
    greedy_color,
)
from .sampling import (
    SampleReport,
    SamplingChainReport,
    check_sampling_chain,
    closed_form_expectation,
    expectation_from_depths,
    run_trials,
)

__version__ = "0.1.0"
