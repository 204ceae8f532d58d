"""turanlab: inverse Markov factors on convex plane domains.

Certify boundary decompositions, compute the explicit constants of the
associated lower bounds, evaluate boundary sup and L^q norms of
root-form polynomials, and probe the inverse Markov factor

    M_{n,q}(K) = inf ||p'||_{L^q(boundary K)} / ||p||_{L^q(boundary K)}

(infimum over monic degree-n polynomials with all roots in K) by
optimization over root placements.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND, available_backends, get_impl
from .geometry import (
    CircularArc,
    ConvexBoundary,
    GeometryError,
    GeometrySummary,
    NotClosed,
    NotConvex,
    Segment,
    TransfiniteBracket,
    build_boundary,
    contains,
    depth,
    diameter,
    inradius,
    perimeter,
    summarize_geometry,
    transfinite_diameter,
    width,
)
from .certify import (
    CertifyError,
    ECertificate,
    NoStraightCornerAngle,
    StraightTooLong,
    Tag,
    TaggedDecomposition,
    ViolationFound,
    certify,
    check_partial_r_circular,
    check_r_circular,
    circularity_radius,
    convexify,
    convexify_at_angle,
)
from .norms import (
    AtRoot,
    HSetReport,
    NormReport,
    RootPolynomial,
    evaluate,
    h_set,
    hset_constant,
    log_derivative,
    lq_norm,
    ratio,
    riemann_lq_norm,
    sup_norm,
)
from .bounds import (
    AlternativeReport,
    BoundRow,
    DegenerateAngles,
    ErodConstants,
    NotStraight,
    TrapezoidB,
    classify_segment_alternative,
    comparison_bounds,
    erod_constants,
    nikolskii_bound,
    theta0,
    trapezoid,
)
from .oscillation import (
    SearchConfig,
    SearchResult,
    estimate_oscillation,
    random_poly,
    upper_bound_witness,
    worker_count,
)
from .corpus import (
    BUILDERS,
    ParseError,
    ValidationError,
    bundled_names,
    load_domain_spec,
)
from .verify import VerifyRow, run_suites

__all__ = [
    "AlternativeReport", "AtRoot", "BACKEND", "BUILDERS", "BoundRow",
    "CertifyError", "CircularArc", "ConvexBoundary", "DegenerateAngles",
    "ECertificate", "ErodConstants", "GeometryError", "GeometrySummary",
    "HSetReport", "NoStraightCornerAngle", "NormReport", "NotClosed",
    "NotConvex", "NotStraight", "ParseError", "RootPolynomial",
    "SearchConfig", "SearchResult", "Segment", "StraightTooLong", "Tag",
    "TaggedDecomposition", "TransfiniteBracket", "TrapezoidB",
    "ValidationError", "VerifyRow", "ViolationFound",
    "available_backends", "build_boundary", "bundled_names", "certify",
    "check_partial_r_circular", "check_r_circular", "circularity_radius",
    "classify_segment_alternative", "comparison_bounds", "contains",
    "convexify", "convexify_at_angle", "depth", "diameter", "erod_constants",
    "estimate_oscillation", "evaluate", "get_impl", "h_set",
    "hset_constant",
    "inradius", "load_domain_spec", "log_derivative", "lq_norm",
    "nikolskii_bound", "perimeter", "random_poly", "ratio",
    "riemann_lq_norm", "run_suites", "summarize_geometry", "sup_norm",
    "theta0", "transfinite_diameter", "trapezoid",
    "upper_bound_witness", "width", "worker_count",
]
