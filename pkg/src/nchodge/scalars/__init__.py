"""Exact coefficient rings: Novikov scalars, bulk rings, derivations and morphisms."""

from nchodge.scalars.derivation import (
    Derivation,
    OmegaLabel,
    OmegaValue,
    apply_ring_differential,
    omega_add,
    omega_equal,
    omega_scale,
)
from nchodge.scalars.expressions import format_element, format_scalar, parse_element, parse_scalar
from nchodge.scalars.grading import Grading, koszul_sign, parity, rotation_sign, sign_of
from nchodge.scalars.morphism import RingMorphismWithDerivation
from nchodge.scalars.novikov import NovikovScalar
from nchodge.scalars.ring import (
    BulkRingDescriptor,
    BulkVariable,
    Monomial,
    RingElement,
    TruncationPolicy,
    check_differential,
    divided_power_product,
    sum_elements,
)

__all__ = [
    "BulkRingDescriptor",
    "BulkVariable",
    "Derivation",
    "Grading",
    "Monomial",
    "NovikovScalar",
    "OmegaLabel",
    "OmegaValue",
    "RingElement",
    "RingMorphismWithDerivation",
    "TruncationPolicy",
    "apply_ring_differential",
    "check_differential",
    "divided_power_product",
    "format_element",
    "format_scalar",
    "koszul_sign",
    "omega_add",
    "omega_equal",
    "omega_scale",
    "parity",
    "parse_element",
    "parse_scalar",
    "rotation_sign",
    "sign_of",
    "sum_elements",
]
