"""Exact catalecticant flattenings, apolarity, and the geometry of the third
secant variety of Veronese embeddings, over the rationals."""

from .forms import (
    Form,
    LinearChange,
    ParseError,
    apply_diff,
    extend_form,
    format_form,
    infer_nvars,
    monomial_basis,
    parse_form,
    scaled_coefficient,
    substitute_linear,
)
from .linalg import MatrixQ, Subspace, kernel_basis, matrix_inverse, rref, span_dim, subspace_sum
from .catalecticant import (
    FlatteningMatrix,
    apolar_piece,
    build_flattening,
    contraction_matrix,
    flattening_rank,
    graded_product,
    restrict_to_span,
    span_of,
)
from .secant import (
    MembershipVerdict,
    border_rank_lower_bound,
    expected_codim,
    in_degenerate_locus,
    in_sigma1,
    in_sigma2,
    in_sigma3,
    membership_verdict,
)
from .tangent import (
    ClassificationError,
    InSigmaTwoError,
    NotInSigmaThreeError,
    OrbitClass,
    SmoothnessReport,
    UnsupportedDegreeError,
    canonical_form,
    classify_orbit,
    conormal_space,
    conormal_with_formula,
    hilbert_function,
    in_singular_locus,
    sample_rank_le,
    smoothness_at,
)

__version__ = "0.1.0"

__all__ = [
    "Form",
    "LinearChange",
    "ParseError",
    "apply_diff",
    "extend_form",
    "format_form",
    "infer_nvars",
    "monomial_basis",
    "parse_form",
    "scaled_coefficient",
    "substitute_linear",
    "MatrixQ",
    "Subspace",
    "kernel_basis",
    "matrix_inverse",
    "rref",
    "span_dim",
    "subspace_sum",
    "FlatteningMatrix",
    "apolar_piece",
    "build_flattening",
    "contraction_matrix",
    "flattening_rank",
    "graded_product",
    "restrict_to_span",
    "span_of",
    "MembershipVerdict",
    "border_rank_lower_bound",
    "expected_codim",
    "in_degenerate_locus",
    "in_sigma1",
    "in_sigma2",
    "in_sigma3",
    "membership_verdict",
    "ClassificationError",
    "InSigmaTwoError",
    "NotInSigmaThreeError",
    "OrbitClass",
    "SmoothnessReport",
    "UnsupportedDegreeError",
    "canonical_form",
    "classify_orbit",
    "conormal_space",
    "conormal_with_formula",
    "hilbert_function",
    "in_singular_locus",
    "sample_rank_le",
    "smoothness_at",
    "__version__",
]
