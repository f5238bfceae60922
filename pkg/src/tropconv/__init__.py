"""Exact tropical (min-plus) convexity.

Points of tropical projective space are rational vectors modulo adding a
constant; configurations are matrices whose rows generate a tropical
polytope.  All arithmetic is exact on :class:`fractions.Fraction` and all
indices are 0-based.
"""

from .cells import (
    CellPolyhedron,
    CellType,
    Inequality,
    TropicalComplex,
    build_cell_from_inequalities,
    cell_dimension,
    cell_inequalities,
    cell_vertices,
    enumerate_complex,
    face_of,
    fan_type_of,
    is_bounded,
    type_graph,
    type_of,
)
from .core import (
    Configuration,
    ProjectivePoint,
    TropicalError,
    as_rational,
    mat_vec_left,
    mat_vec_right,
    normalize,
    proj_distance,
    t_add,
    t_comb,
    t_matmul,
    t_mul,
)
from .envelope import (
    EnvelopePolyhedron,
    SizeLimitError,
    build_envelope,
)
from .hull import (
    HullCertificate,
    Inside,
    Outside,
    SegmentChain,
    SeparatingHyperplane,
    caratheodory_reduce,
    contains,
    intersect_polytopes,
    lambda_coeffs,
    minimal_generator_indices,
    minimal_generators,
    on_hyperplane,
    project_onto_hull,
    separate,
    tropical_segment,
)
from .phylo import (
    MetricError,
    MetricMatrix,
    TightSpan,
    TreeMetricReport,
    embed_metric,
    four_point_condition,
    involution_fixed,
    is_metric,
    is_tree_metric,
    random_tree_metric,
    tight_span,
    tight_span_polyhedron,
)
from .subdivision import (
    DualityTransport,
    GenericityReport,
    SubdivisionCell,
    dual_subdivision,
    duality_transport,
    generic_f_vector,
    is_generic,
    is_triangulation,
    minor_scan,
    random_generic_configuration,
    trop_det,
)

__version__ = "0.1.0"

__all__ = [
    "CellPolyhedron",
    "CellType",
    "Configuration",
    "DualityTransport",
    "EnvelopePolyhedron",
    "GenericityReport",
    "HullCertificate",
    "Inequality",
    "Inside",
    "MetricError",
    "MetricMatrix",
    "Outside",
    "ProjectivePoint",
    "SegmentChain",
    "SeparatingHyperplane",
    "SizeLimitError",
    "SubdivisionCell",
    "TightSpan",
    "TreeMetricReport",
    "TropicalComplex",
    "TropicalError",
    "as_rational",
    "build_cell_from_inequalities",
    "build_envelope",
    "caratheodory_reduce",
    "cell_dimension",
    "cell_inequalities",
    "cell_vertices",
    "contains",
    "dual_subdivision",
    "duality_transport",
    "embed_metric",
    "enumerate_complex",
    "face_of",
    "fan_type_of",
    "four_point_condition",
    "generic_f_vector",
    "intersect_polytopes",
    "involution_fixed",
    "is_bounded",
    "is_generic",
    "is_metric",
    "is_tree_metric",
    "is_triangulation",
    "lambda_coeffs",
    "mat_vec_left",
    "mat_vec_right",
    "minimal_generator_indices",
    "minimal_generators",
    "minor_scan",
    "normalize",
    "on_hyperplane",
    "proj_distance",
    "project_onto_hull",
    "random_generic_configuration",
    "random_tree_metric",
    "separate",
    "t_add",
    "t_comb",
    "t_matmul",
    "t_mul",
    "tight_span",
    "tight_span_polyhedron",
    "trop_det",
    "tropical_segment",
    "type_graph",
    "type_of",
]
