"""Exact topological invariants of meromorphic pencils of plane curves.

The pencil p - t*q attached to a rational fraction p/q carries finitely
many atypical parameter values.  This package computes, with exact
rational arithmetic: Milnor numbers of fiber germs, the polar jump
invariant concentrated at base points on the pole locus (by two
independent routes), critical points off the poles, the atypical value
set, and the global vanishing-cycle count mu + lambda.
"""

from fractions import Fraction

from .elimination import (
    normalized,
    poly_gcd,
    resultant,
    squarefree_part,
    try_divide,
)
from .errors import (
    AtlasError,
    DegenerateFamilyError,
    ExpressionError,
    GenericityFailureError,
    IncompleteAnalysisError,
    InputError,
    MeropencilError,
    NonIsolatedError,
    NonReducedFiberError,
    NotVanishingError,
    NonzeroLinearPartError,
    RefusalError,
    VariableMismatchError,
)
from .family import (
    CandidateReport,
    GenericSampler,
    PlaneGermFamily,
    PolarCurve,
    base_points,
    derive_seed,
    fiber_reducedness,
    generic_mu,
    jump_lambda,
    polar_curve,
    polar_lambda,
    reduce_fraction,
    special_value_candidates,
    unit_twist_check,
)
from .localalg import (
    DEFAULT_JET_CAP,
    INFINITE,
    GermClass,
    MilnorResult,
    classify_plane_germ,
    hessian_corank,
    intersection_multiplicity,
    milnor_number,
)
from .multipoly import MultiPoly, parse_expression, translate
from .pencil import (
    AnalysisConfig,
    ChartInput,
    OverlapMap,
    analyze_germ_chart,
    analyze_pencil,
    critical_analysis,
)
from .atlas import Atlas, load_atlas, parse_atlas
from .report import (
    BasePointReport,
    ChartReport,
    CriticalPointRecord,
    PencilReport,
    SpecialValueRecord,
    ValueSummary,
    emit_report,
)
from .unipoly import RationalRoots, UniPoly, rational_roots

__version__ = "0.1.0"

__all__ = [
    "Fraction",
    "MultiPoly",
    "UniPoly",
    "parse_expression",
    "translate",
    "poly_gcd",
    "resultant",
    "squarefree_part",
    "normalized",
    "try_divide",
    "rational_roots",
    "RationalRoots",
    "milnor_number",
    "MilnorResult",
    "intersection_multiplicity",
    "INFINITE",
    "hessian_corank",
    "classify_plane_germ",
    "GermClass",
    "DEFAULT_JET_CAP",
    "PlaneGermFamily",
    "PolarCurve",
    "polar_curve",
    "polar_lambda",
    "jump_lambda",
    "generic_mu",
    "special_value_candidates",
    "CandidateReport",
    "unit_twist_check",
    "base_points",
    "reduce_fraction",
    "fiber_reducedness",
    "GenericSampler",
    "derive_seed",
    "critical_analysis",
    "analyze_pencil",
    "analyze_germ_chart",
    "AnalysisConfig",
    "ChartInput",
    "OverlapMap",
    "Atlas",
    "load_atlas",
    "parse_atlas",
    "PencilReport",
    "ChartReport",
    "BasePointReport",
    "SpecialValueRecord",
    "CriticalPointRecord",
    "ValueSummary",
    "emit_report",
    "MeropencilError",
    "InputError",
    "RefusalError",
    "ExpressionError",
    "VariableMismatchError",
    "NotVanishingError",
    "NonzeroLinearPartError",
    "AtlasError",
    "NonIsolatedError",
    "NonReducedFiberError",
    "GenericityFailureError",
    "DegenerateFamilyError",
    "IncompleteAnalysisError",
]
