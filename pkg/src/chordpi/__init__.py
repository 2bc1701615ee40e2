"""Exact search over chord-intersection distances of regular polygons.

All coordinates live in the real cyclotomic field Q(2cos(2pi/M)) with
M = lcm(n, 4), so the geometry, the deduplication of points and distances,
and the final closed forms are exact; floating point only prefilters, and
every printed number is backed by a certified interval.
"""

from .numberfield import (
    CertifiedInterval,
    FieldDescriptor,
    FieldElement,
    IntPolynomial,
    QuadraticSurd,
    as_quadratic_surd,
    cyclotomic_polynomial,
    element_minpoly,
    field_descriptor,
    field_for_ngon,
    generator_cos,
    pi_interval,
    real_cyclotomic_minpoly,
    squarefree_part,
)
from .geometry import (
    CoincidentPoints,
    Degenerate,
    Frame,
    Line,
    Point,
    canonical_line,
    intersect,
    line_through,
    ngon_vertex,
    ngon_vertices,
    perpendicular,
    squared_distance,
)
from .catalog import (
    Catalog,
    CatalogConfig,
    CatalogPoint,
    ChordSelector,
    LineRecord,
    build_catalog,
    enumerate_lines,
    is_constructible,
)
from .search import (
    CompareRow,
    EmptyCatalog,
    Hit,
    PiConstant,
    RationalConstant,
    ScaledTarget,
    SearchError,
    SearchParams,
    TargetConstant,
    compare_across_n,
    complexity,
    decimal_of_sqrt,
    matching_digits,
    run_search,
    scan_distances,
    target_from_spec,
)
from .cli import Report, RunConfig, emit_svg, load_catalog, save_catalog

__version__ = "1.0.0"

__all__ = [
    "CertifiedInterval", "FieldDescriptor", "FieldElement", "IntPolynomial",
    "QuadraticSurd", "as_quadratic_surd", "cyclotomic_polynomial",
    "element_minpoly", "field_descriptor", "field_for_ngon", "generator_cos",
    "pi_interval", "real_cyclotomic_minpoly", "squarefree_part",
    "CoincidentPoints", "Degenerate", "Frame", "Line", "Point",
    "canonical_line", "intersect", "line_through", "ngon_vertex",
    "ngon_vertices", "perpendicular", "squared_distance",
    "Catalog", "CatalogConfig", "CatalogPoint", "ChordSelector", "LineRecord",
    "build_catalog", "enumerate_lines", "is_constructible",
    "CompareRow", "EmptyCatalog", "Hit", "PiConstant", "RationalConstant",
    "ScaledTarget", "SearchError", "SearchParams", "TargetConstant",
    "compare_across_n", "complexity", "decimal_of_sqrt", "matching_digits",
    "run_search", "scan_distances", "target_from_spec",
    "Report", "RunConfig", "emit_svg", "load_catalog", "save_catalog",
    "__version__",
]
