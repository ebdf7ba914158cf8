"""Finite curved A-infinity categories: relations, units, bounding cochains, gauge."""

from nchodge.ainf.bounding import (
    check_maurer_cartan,
    deform_by_bounding_cochains,
    maurer_cartan_residuals,
)
from nchodge.ainf.cochains import (
    cochain_differential,
    cochain_equal,
    compose,
    compose_entries,
    gerstenhaber_bracket,
    structure_cochain,
)
from nchodge.ainf.gauge import (
    coboundary_family,
    first_order_coboundary,
    gauge_transform,
    validate_gauge,
)
from nchodge.ainf.models import (
    AInfRelationReport,
    AInfStructure,
    BoundingCochainAssignment,
    CochainEntries,
    CochainVector,
    Element,
    Generator,
    MaurerCartanReport,
    ModIdeal,
    OmegaCochain,
    RelationViolation,
    UnitReport,
    element_add,
    element_scale,
    element_to_dict,
    is_unit_plus,
    unit_plus_name,
)
from nchodge.ainf.operations import base_change, base_change_bounding_cochains, unitalize
from nchodge.ainf.relations import (
    RelationChecker,
    apply_arity_one,
    apply_arity_two,
    check_ainf_relations,
    check_cohomological_units,
    check_strict_units,
)

__all__ = [
    "AInfRelationReport",
    "AInfStructure",
    "BoundingCochainAssignment",
    "CochainEntries",
    "CochainVector",
    "Element",
    "Generator",
    "MaurerCartanReport",
    "ModIdeal",
    "OmegaCochain",
    "RelationChecker",
    "RelationViolation",
    "UnitReport",
    "apply_arity_one",
    "apply_arity_two",
    "base_change",
    "base_change_bounding_cochains",
    "check_ainf_relations",
    "check_cohomological_units",
    "check_maurer_cartan",
    "check_strict_units",
    "coboundary_family",
    "cochain_differential",
    "cochain_equal",
    "compose",
    "compose_entries",
    "element_add",
    "element_scale",
    "element_to_dict",
    "first_order_coboundary",
    "gauge_transform",
    "gerstenhaber_bracket",
    "is_unit_plus",
    "maurer_cartan_residuals",
    "structure_cochain",
    "unit_plus_name",
    "unitalize",
    "validate_gauge",
]
