"""Exact common eigenvectors and invariant subspaces of operator families,
with Helly-type verification tools."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    ContradictionError,
    FieldMismatchError,
    HellyError,
    InputError,
    PreconditionError,
    VerificationError,
    WitnessNotFound,
)
from .fields import GF, QQ, Field, Polynomial, Scalar, parse_field, parse_scalar, roots_in_field
from .linalg import (
    Matrix,
    Subspace,
    char_poly,
    eigen_decomposition_in_field,
    inverse,
    is_eigenvector,
    is_invariant,
    kernel_basis,
    rank,
    restrict_operator,
    rref,
    vector,
)
from .spectra import (
    CommonEigenLine,
    LeaveOneOutCertificate,
    OperatorFamily,
    brute_force_common_eigenvectors,
    common_eigen_refinement,
    construct_from_leave_one_out,
    has_common_eigenvector,
    leave_one_out_certificate,
    projective_points,
)
from .invariant import (
    DistinctSpectrumBasis,
    brute_force_common_invariant,
    common_invariant_from_supports,
    distinct_spectrum_basis,
    enumerate_subspaces,
    invariant_support,
    operator_family_linear_basis,
    support_union_pipeline,
)
from .set_family import (
    SetFamily,
    exhaustive_verify_bound,
    extremal_family,
    find_redundant_union_witness,
    lemma_condition_holds,
)
from .sharpness import build_even_family, build_odd_family, build_sharpness_family, verify_sharpness
from .harness import (
    HellyReport,
    generate_family,
    helly_check_eigenvectors,
    helly_check_invariant,
    leave_one_out_instance,
    support_union_instance,
)
