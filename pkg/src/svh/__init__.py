"""Exact 2-cocycles, coboundaries and second cohomology of integer-graded
algebras given by structure-constant rules, computed over the rationals on
finite truncation windows."""

from .errors import (
    ConfigError,
    DuplicateRule,
    InnerBoundExceedsWindow,
    InvalidAlgebra,
    NotACocycle,
    OutOfWindow,
    ParseError,
    SubspaceNotContained,
    SvhError,
    UnknownFamily,
)
from .linalg import (
    EchelonResult,
    Rat,
    SparseMatrixQ,
    nullspace,
    quotient_basis,
    rref,
    solve_combination,
    span_rank,
)
from .algebra import (
    AlgebraSpec,
    BasisElement,
    BracketRule,
    CoeffPoly,
    LeibnizReport,
    LinearCombo,
    Window,
    bracket,
    check_leibniz,
    enumerate_basis,
)
from .dsl import format_algebra, parse_algebra
from .cocycles import (
    BilinearForm,
    CocycleSystem,
    CohomologyReport,
    LinearFunctional,
    NormalizationTrace,
    ScanTable,
    build_cocycle_system,
    coboundary_of,
    coboundary_space,
    cocycle_space,
    cohomology,
    convergence_scan,
    normalization_applicable,
    normalize_representative,
    pair_basis,
)
from .presets import (
    LemmaReport,
    LemmaVerdict,
    lemma_assertions,
    preset_spec,
    schrodinger_spec,
    twisted_sv_spec,
    virasoro_form,
    witt_spec,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "BasisElement",
    "BilinearForm",
    "BracketRule",
    "CocycleSystem",
    "CoeffPoly",
    "CohomologyReport",
    "ConfigError",
    "DuplicateRule",
    "EchelonResult",
    "InnerBoundExceedsWindow",
    "InvalidAlgebra",
    "LeibnizReport",
    "LemmaReport",
    "LemmaVerdict",
    "LinearCombo",
    "LinearFunctional",
    "NormalizationTrace",
    "NotACocycle",
    "OutOfWindow",
    "ParseError",
    "Rat",
    "ScanTable",
    "SparseMatrixQ",
    "SubspaceNotContained",
    "SvhError",
    "UnknownFamily",
    "Window",
    "bracket",
    "build_cocycle_system",
    "check_leibniz",
    "coboundary_of",
    "coboundary_space",
    "cocycle_space",
    "cohomology",
    "convergence_scan",
    "enumerate_basis",
    "format_algebra",
    "lemma_assertions",
    "normalization_applicable",
    "normalize_representative",
    "nullspace",
    "pair_basis",
    "parse_algebra",
    "preset_spec",
    "quotient_basis",
    "rref",
    "schrodinger_spec",
    "solve_combination",
    "span_rank",
    "twisted_sv_spec",
    "virasoro_form",
    "witt_spec",
]
