"""Maurer-Cartan equation and deformation by bounding cochains.

Bounding cochains have odd generators and even coefficients, so their
shifted degree is even and inserting them never produces a Koszul sign.
"""

import logging
from collections import defaultdict
from itertools import combinations

from nchodge.ainf.models import (
    AInfStructure,
    BoundingCochainAssignment,
    CochainEntries,
    Element,
    MaurerCartanReport,
    ModIdeal,
    element_add,
    element_scale,
)
from nchodge.errors import NonconvergentSum
from nchodge.scalars import RingElement

logger = logging.getLogger(__name__)


def require_convergent(assignment: BoundingCochainAssignment) -> None:
    for obj, b in assignment.per_object.items():
        for name, coeff in b.items():
            if not coeff.filtration_positive():
                raise NonconvergentSum(
                    f"coefficient of {name} in the bounding cochain on {obj} does not raise filtration"
                )


def maurer_cartan_residuals(
    structure: AInfStructure, assignment: BoundingCochainAssignment
) -> dict[str, Element]:
    """``sum_k mu_k(b, ..., b)`` for every object."""
    require_convergent(assignment)
    residuals: dict[str, Element] = {obj: {} for obj in structure.objects}
    for inputs, outputs in structure.mu.items():
        if not inputs:
            for name, coeff in outputs.items():
                obj = structure.generator(name).source
                residuals[obj] = element_add(residuals[obj], {name: coeff})
            continue
        obj = structure.generator(inputs[0]).source
        b = assignment.on(obj)
        if not all(a in b for a in inputs):
            continue
        weight = RingElement.one(structure.ring)
        for a in inputs:
            weight = weight * b[a]
        if weight.is_zero():
            continue
        residuals[obj] = element_add(residuals[obj], element_scale(outputs, weight))
    return residuals


def _in_ideal(residual: Element, mod_ideal: ModIdeal) -> bool:
    if mod_ideal == ModIdeal.ZERO:
        return all(c.is_zero() for c in residual.values())
    return all(c.specialize_bulk_zero().is_zero() for c in residual.values())


def check_maurer_cartan(
    structure: AInfStructure, assignment: BoundingCochainAssignment
) -> MaurerCartanReport:
    """
    Test the Maurer-Cartan equation modulo the assignment's ideal.

    Raises:
        NonconvergentSum: If a coefficient of b does not raise filtration
    """
    residuals = maurer_cartan_residuals(structure, assignment)
    failing = {
        obj: residual
        for obj, residual in residuals.items()
        if residual and not _in_ideal(residual, assignment.mod_ideal)
    }
    return MaurerCartanReport(
        passed=not failing,
        mod_ideal=assignment.mod_ideal.value,
        residuals={obj: r for obj, r in residuals.items() if r},
        truncation=structure.ring.truncation.to_dict(),
    )


def deform_by_bounding_cochains(
    structure: AInfStructure, assignment: BoundingCochainAssignment
) -> AInfStructure:
    """
    The structure maps ``mu^b`` obtained by inserting b in every slot.

    ``mu^b(a1..as) = sum mu(b..b, a1, b..b, ..., as, b..b)``; equivalently
    every stored entry of mu contributes to the tuple left over after
    removing any subset of positions occupied by generators in the support
    of b.

    Raises:
        NonconvergentSum: If a coefficient of b does not raise filtration
    """
    require_convergent(assignment)
    if assignment.is_zero():
        return structure.with_mu(structure.mu)
    result: dict[tuple[str, ...], Element] = defaultdict(dict)
    for inputs, outputs in structure.mu.items():
        removable: list[int] = []
        for position, a in enumerate(inputs):
            g = structure.generator(a)
            if g.source == g.target and a in assignment.on(g.source):
                removable.append(position)
        for size in range(len(removable) + 1):
            for subset in combinations(removable, size):
                weight = RingElement.one(structure.ring)
                for position in subset:
                    a = inputs[position]
                    weight = weight * assignment.on(structure.generator(a).source)[a]
                if weight.is_zero():
                    continue
                chosen = set(subset)
                remaining = tuple(a for p, a in enumerate(inputs) if p not in chosen)
                result[remaining] = element_add(result[remaining], element_scale(outputs, weight))
    mu: CochainEntries = {k: v for k, v in result.items() if v}
    logger.debug("deformed structure has %d entries (was %d)", len(mu), len(structure.mu))
    return structure.with_mu(mu)
