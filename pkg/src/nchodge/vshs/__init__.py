"""Variations of semi-infinite Hodge structure: data, checks and builders."""

from nchodge.vshs.builders import (
    assemble_from_category,
    build_quantum_like_connection,
    group_algebra_toy,
    identity_morphism,
    projective_line_toy,
    trivial_vshs,
)
from nchodge.vshs.checks import (
    check_miniversal,
    check_morphism,
    check_opposite_subspace,
    check_vshs,
)
from nchodge.vshs.models import (
    CandidateMorphism,
    MiniversalityReport,
    MorphismReport,
    OppositeSubspaceReport,
    UMatrix,
    Violation,
    VSHSData,
    VSHSReport,
    mukai_sign,
    u_constant_matrix,
    u_identity,
    u_zero_matrix,
)

__all__ = [
    "CandidateMorphism",
    "MiniversalityReport",
    "MorphismReport",
    "OppositeSubspaceReport",
    "UMatrix",
    "VSHSData",
    "VSHSReport",
    "Violation",
    "assemble_from_category",
    "build_quantum_like_connection",
    "check_miniversal",
    "check_morphism",
    "check_opposite_subspace",
    "check_vshs",
    "group_algebra_toy",
    "identity_morphism",
    "mukai_sign",
    "projective_line_toy",
    "trivial_vshs",
    "u_constant_matrix",
    "u_identity",
    "u_zero_matrix",
]
