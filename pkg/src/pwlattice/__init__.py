"""Exact conversion between piecewise linear functions on convex polyhedral
domains and max-min polynomials of their affine components, with full
verification of the intermediate objects (arrangement cells, separation
metric, per-cell reductions)."""

from .arrangement import (
    Arrangement,
    Cell,
    CellComplex,
    SeparationResult,
    build_hyperplanes,
    enumerate_cells,
    geodesic,
    separation,
)
from .extension import (
    BoundaryPwl,
    ReluNet1,
    extend_to_space,
    import_relu,
    radial_extend,
)
from .geometry import (
    AffineFunc,
    FunctionalRange,
    Halfspace,
    Hyperplane,
    LpResult,
    Point,
    Polyhedron,
    Rational,
    check_dual_certificate,
    functional_range_on,
    interior_point,
    lp_optimize,
    normalize_hyperplane,
)
from .latticizer import (
    CellOrder,
    FunctionAnalysis,
    LatticePolynomial,
    LatticizeResult,
    LemmaWitnessFinder,
    VerificationReport,
    analyze,
    build_representation,
    build_representation_vector,
    cell_order,
    dominant_component,
    evaluate_lattice,
    lattice_to_pwl,
    latticize,
    lemma_witness,
    simplify,
    verify_symbolic,
)
from .model import (
    ComponentSet,
    Piece,
    PwlFunction,
    ValidationReport,
    Violation,
    eval_pwl,
    extract_components,
    validate_pwl,
)

__version__ = "0.1.0"

__all__ = [
    "AffineFunc",
    "Arrangement",
    "BoundaryPwl",
    "Cell",
    "CellComplex",
    "CellOrder",
    "ComponentSet",
    "FunctionAnalysis",
    "FunctionalRange",
    "Halfspace",
    "Hyperplane",
    "LatticePolynomial",
    "LatticizeResult",
    "LemmaWitnessFinder",
    "LpResult",
    "Piece",
    "Point",
    "Polyhedron",
    "PwlFunction",
    "Rational",
    "ReluNet1",
    "SeparationResult",
    "ValidationReport",
    "VerificationReport",
    "Violation",
    "analyze",
    "build_hyperplanes",
    "build_representation",
    "build_representation_vector",
    "cell_order",
    "check_dual_certificate",
    "dominant_component",
    "enumerate_cells",
    "eval_pwl",
    "evaluate_lattice",
    "extend_to_space",
    "extract_components",
    "functional_range_on",
    "geodesic",
    "import_relu",
    "interior_point",
    "lattice_to_pwl",
    "latticize",
    "lemma_witness",
    "lp_optimize",
    "normalize_hyperplane",
    "radial_extend",
    "separation",
    "simplify",
    "validate_pwl",
    "verify_symbolic",
]
