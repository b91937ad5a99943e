"""Cell and simplicial complexes, exact integer linear algebra, homology."""

from .complexes import (
    CellComplex,
    InvalidComplexError,
    SimplicialComplex,
    ValidationReport,
    Violation,
    barycentric_subdivision,
    connected_components,
    skeleton,
    subdivide,
    subdivide_subcomplex,
    validate_complex,
)
from .homology import (
    ChainComplex,
    HomologyReport,
    chain_complex_of,
    homology,
    homology_of,
    relative_homology,
)
from .matrix import IntMatrix, SnfResult, smith_normal_form

__all__ = [
    "CellComplex",
    "ChainComplex",
    "HomologyReport",
    "IntMatrix",
    "InvalidComplexError",
    "SimplicialComplex",
    "SnfResult",
    "ValidationReport",
    "Violation",
    "barycentric_subdivision",
    "chain_complex_of",
    "connected_components",
    "homology",
    "homology_of",
    "relative_homology",
    "skeleton",
    "smith_normal_form",
    "subdivide",
    "subdivide_subcomplex",
    "validate_complex",
]
