"""Unitalization and base change of A-infinity structures."""

from nchodge.ainf.models import (
    AInfStructure,
    BoundingCochainAssignment,
    CochainEntries,
    Generator,
    is_unit_plus,
    unit_plus_name,
)
from nchodge.errors import ParameterOutOfRange, UnknownSymbol
from nchodge.scalars import RingElement, RingMorphismWithDerivation, sign_of


def unitalize(structure: AInfStructure) -> AInfStructure:
    """
    Adjoin a strict unit ``e+`` to every object.

    ``mu2(e+, a) = a`` and ``mu2(a, e+) = (-1)^{|a|} a``; every other
    structure map vanishes as soon as an ``e+`` is among its inputs. The new
    units become the designated strict units of the result.

    Raises:
        ParameterOutOfRange: If the structure already carries adjoined units
    """
    if any(is_unit_plus(g.name) for g in structure.generators):
        raise ParameterOutOfRange("structure is already unitalized")
    one = RingElement.one(structure.ring)
    units = {obj: unit_plus_name(obj) for obj in structure.objects}
    generators = list(structure.generators) + [
        Generator(units[obj], obj, obj, 0) for obj in structure.objects
    ]
    mu: CochainEntries = {k: dict(v) for k, v in structure.mu.items()}
    for g in generators:
        mu[(units[g.source], g.name)] = {g.name: one}
        mu[(g.name, units[g.target])] = {g.name: one.scale(sign_of(g.degree))}
    return AInfStructure(
        ring=structure.ring,
        objects=structure.objects,
        generators=generators,
        mu=mu,
        units=units,
        arity_cap=max(structure.arity_cap, 2),
        truncated=structure.truncated,
    )


def base_change(structure: AInfStructure, morphism: RingMorphismWithDerivation) -> AInfStructure:
    """
    Pass every structure constant through a ring morphism.

    Raises:
        UnknownSymbol: If the morphism's source is not the structure's ring
    """
    if morphism.source != structure.ring:
        raise UnknownSymbol("ring morphism source does not match the structure's ring")
    mu = {
        inputs: {name: morphism.apply(coeff) for name, coeff in outputs.items()}
        for inputs, outputs in structure.mu.items()
    }
    return structure.with_mu(mu, ring=morphism.target)


def base_change_bounding_cochains(
    assignment: BoundingCochainAssignment,
    morphism: RingMorphismWithDerivation,
    target: AInfStructure,
) -> BoundingCochainAssignment:
    """The bounding cochains ``f(b)`` on a base-changed structure."""
    per_object = {
        obj: {name: morphism.apply(coeff) for name, coeff in b.items()}
        for obj, b in assignment.per_object.items()
    }
    return BoundingCochainAssignment(target, per_object, assignment.mod_ideal)
