"""Exact-arithmetic toolkit for 2-fold-symmetric complex hyperbolic triangle groups."""

from .exact import (
    Angle,
    Cyclo,
    angle,
    cos_exact,
    root_of_unity,
    sin_exact,
    to_float,
)
from .linalg import (
    DEFAULT_PREC,
    DEFAULT_TOL,
    Mat3,
    Signature,
    classify_isometry,
    eigenvalues3,
    hermitian_signature,
    projective_equal,
    projective_order,
)
from .trigroup import (
    Group,
    GroupParams,
    InfeasibleGroupError,
    braid_length,
    build_group,
    build_symmetric,
    candidate_s,
    evaluate_word,
    lemma_eigenvalues_residual,
    reflection_matrix,
    symmetry_matrix,
    trace_invariants,
    verify_symmetry,
)
from .cosearch import Candidate, search, trace_s

__all__ = [
    "Angle",
    "Candidate",
    "Cyclo",
    "DEFAULT_PREC",
    "DEFAULT_TOL",
    "Group",
    "GroupParams",
    "InfeasibleGroupError",
    "Mat3",
    "Signature",
    "angle",
    "braid_length",
    "build_group",
    "build_symmetric",
    "candidate_s",
    "classify_isometry",
    "cos_exact",
    "eigenvalues3",
    "evaluate_word",
    "hermitian_signature",
    "lemma_eigenvalues_residual",
    "projective_equal",
    "projective_order",
    "reflection_matrix",
    "root_of_unity",
    "search",
    "sin_exact",
    "symmetry_matrix",
    "to_float",
    "trace_invariants",
    "trace_s",
    "verify_symmetry",
]
