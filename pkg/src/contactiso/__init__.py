"""Analyzer for contact sub-pseudo-Riemannian structures.

Exact rational linear algebra and symbolic polynomial calculus drive the
pointwise invariants (structure operator spectrum, joint stabilizer algebra,
prolongation triviality); floating point is used only to locate eigenvalues.
"""

from .calculus import (
    AffineMap,
    FramedStructure,
    OneForm,
    PointwiseData,
    TwoForm,
    VectorField,
    canonical_contact_data,
    default_sample_points,
    exterior_derivative,
    isometry_check,
    lie_bracket,
    pushforward,
    symplectic_in_frame,
)
from .cli import AnalysisReport, analyze, emit_report, parse_structure, parse_structure_file
from .errors import ContactIsoError
from .heisenberg import (
    HeisenbergSpec,
    build_model,
    group_multiply,
    left_translation,
    linear_isometry_map,
    verify_lemma2,
)
from .linalg import RootScale, exact_nullspace
from .pencil import (
    FormPair,
    KroneckerProfile,
    SkewForm,
    SpectralBlock,
    StructureOperator,
    SymmetricForm,
    is_compatible,
    pfaffian,
    spectral_classify,
    structure_operator,
)
from .poly import Polynomial, parse_polynomial
from .prolongation import (
    ProlongationResult,
    SymbolAlgebra,
    build_symbol,
    first_prolongation,
    levi_civita_uniqueness,
    theorem6_bound,
)
from .stabilizer import BoundsReport, StabilizerBasis, bracket_structure, dimension_bounds, stabilizer_basis

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AnalysisReport",
    "BoundsReport",
    "ContactIsoError",
    "FormPair",
    "FramedStructure",
    "HeisenbergSpec",
    "KroneckerProfile",
    "OneForm",
    "PointwiseData",
    "Polynomial",
    "ProlongationResult",
    "RootScale",
    "SkewForm",
    "SpectralBlock",
    "StabilizerBasis",
    "StructureOperator",
    "SymbolAlgebra",
    "SymmetricForm",
    "TwoForm",
    "VectorField",
    "analyze",
    "bracket_structure",
    "build_model",
    "build_symbol",
    "canonical_contact_data",
    "default_sample_points",
    "dimension_bounds",
    "emit_report",
    "exact_nullspace",
    "exterior_derivative",
    "first_prolongation",
    "group_multiply",
    "is_compatible",
    "isometry_check",
    "left_translation",
    "levi_civita_uniqueness",
    "lie_bracket",
    "linear_isometry_map",
    "parse_polynomial",
    "parse_structure",
    "parse_structure_file",
    "pfaffian",
    "pushforward",
    "spectral_classify",
    "stabilizer_basis",
    "structure_operator",
    "symplectic_in_frame",
    "theorem6_bound",
    "verify_lemma2",
]
