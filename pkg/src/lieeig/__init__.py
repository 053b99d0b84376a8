"""Exact common-eigenvector solver for nilpotent matrix Lie algebras over
rational-quadratic and finite field towers."""

from .decomp import (
    PrimaryComponent,
    TriangularBasis,
    engel_common_kernel,
    engel_triangularize,
    primary_decomposition,
    scalar_nilpotent_split,
    triangularize_scalar_family,
)
from .eigensolver import (
    ConditionReport,
    EigenResult,
    brute_force_oracle,
    check_conditions,
    common_eigenvector,
    corollary_b_audit,
    corollary_d_report,
)
from .errors import LieEigError, NotApplicable, StageFailure
from .fields import QQ, GF, FieldTower, finite_tower, galois_conjugates, make_tower, rational_quadratic
from .lie import LieAlgebra, ad_matrix, bracket, classify, derived_series, lie_closure, lower_central_series
from .linalg import Matrix, Subspace, char_poly, min_poly
from .poly import FactorOptions, Poly, factor_over_base, lemma_c_analyze, monoid_contains, splits_in_extension

__version__ = "0.1.0"

__all__ = [
    "ConditionReport",
    "EigenResult",
    "FactorOptions",
    "FieldTower",
    "GF",
    "LieAlgebra",
    "LieEigError",
    "Matrix",
    "NotApplicable",
    "Poly",
    "PrimaryComponent",
    "QQ",
    "StageFailure",
    "Subspace",
    "TriangularBasis",
    "ad_matrix",
    "bracket",
    "brute_force_oracle",
    "char_poly",
    "check_conditions",
    "classify",
    "common_eigenvector",
    "corollary_b_audit",
    "corollary_d_report",
    "derived_series",
    "engel_common_kernel",
    "engel_triangularize",
    "factor_over_base",
    "finite_tower",
    "galois_conjugates",
    "lemma_c_analyze",
    "lie_closure",
    "lower_central_series",
    "make_tower",
    "min_poly",
    "monoid_contains",
    "primary_decomposition",
    "rational_quadratic",
    "scalar_nilpotent_split",
    "splits_in_extension",
    "triangularize_scalar_family",
]
