"""A-infinity relation and unit checks."""

import logging

from nchodge.ainf.cochains import compose_entries
from nchodge.ainf.models import (
    AInfRelationReport,
    AInfStructure,
    Element,
    RelationViolation,
    UnitReport,
    element_add,
    element_scale,
)
from nchodge.scalars import RingElement, linalg, sign_of

logger = logging.getLogger(__name__)


class RelationChecker:
    """
    Evaluates the curved A-infinity relations of a structure.

    The relation on ``(a1, ..., an)`` is
    ``sum ± mu(a1..ai, mu(a_{i+1}..a_{i+j}), ..., an) = 0`` with sign
    ``(-1)^{||a1|| + ... + ||ai||}``, i.e. ``mu ∘ mu = 0`` for the
    Gerstenhaber composition.
    """

    def __init__(self, structure: AInfStructure):
        self.structure = structure

    def checked_arity(self) -> int | None:
        """Largest arity whose relation only involves stored structure maps."""
        structure = self.structure
        if not structure.truncated:
            return None
        # a curvature insertion reaches one arity past the tuple length
        return structure.arity_cap - (1 if structure.is_curved() else 0)

    def residuals(self) -> dict[tuple[str, ...], Element]:
        structure = self.structure
        return compose_entries(
            structure, structure.mu, structure.mu, 1, max_arity=self.checked_arity()
        )

    def check(self) -> AInfRelationReport:
        structure = self.structure
        residuals = self.residuals()
        violations = [
            RelationViolation(inputs, residual)
            for inputs, residual in sorted(residuals.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
        if structure.truncated:
            checked = self.checked_arity()
            tail = f"relations of arity > {checked} involve truncated structure maps"
        else:
            checked = max(2 * structure.arity_cap - 1, 0)
            tail = None
        if violations:
            logger.info("A-infinity relations fail on %d tuples", len(violations))
        return AInfRelationReport(
            passed=not violations,
            violations=violations,
            checked_up_to_arity=checked,
            unchecked_tail=tail,
            truncation=structure.ring.truncation.to_dict(),
        )


def check_ainf_relations(structure: AInfStructure) -> AInfRelationReport:
    """Report of every tuple on which the A-infinity relations fail."""
    return RelationChecker(structure).check()


def apply_arity_one(structure: AInfStructure, element: Element) -> Element:
    """mu1 applied to a linear combination of generators."""
    result: Element = {}
    for name, coeff in element.items():
        result = element_add(result, element_scale(structure.value((name,)), coeff))
    return result


def apply_arity_two(structure: AInfStructure, left: Element, right: Element) -> Element:
    """mu2 on two linear combinations (even coefficients, so no extra signs)."""
    result: Element = {}
    for a, ca in left.items():
        for b, cb in right.items():
            result = element_add(result, element_scale(structure.value((a, b)), ca * cb))
    return result


def check_strict_units(structure: AInfStructure) -> UnitReport:
    """
    Check ``mu2(e, a) = a``, ``mu2(a, e) = (-1)^{|a|} a`` and that units
    vanish in every other arity.
    """
    if not structure.units:
        return UnitReport(applicable=False, passed=True, kind="strict")
    ring = structure.ring
    one = RingElement.one(ring)
    failures: list[str] = []
    unit_names = set(structure.units.values())
    for g in structure.generators:
        left_unit = structure.units.get(g.source)
        right_unit = structure.units.get(g.target)
        if left_unit is not None:
            expected = {g.name: one}
            if not _element_equal(structure.value((left_unit, g.name)), expected):
                failures.append(f"mu2({left_unit}, {g.name}) != {g.name}")
        if right_unit is not None:
            expected = {g.name: one.scale(sign_of(g.degree))}
            if not _element_equal(structure.value((g.name, right_unit)), expected):
                failures.append(f"mu2({g.name}, {right_unit}) != ±{g.name}")
    for inputs in structure.mu:
        if len(inputs) != 2 and unit_names.intersection(inputs):
            failures.append(f"unit appears in nonvanishing mu{len(inputs)}{inputs}")
    return UnitReport(applicable=True, passed=not failures, kind="strict", failures=failures)


def check_cohomological_units(structure: AInfStructure) -> UnitReport:
    """
    Check that each designated unit is mu1-closed and that left and right
    multiplication by it is the identity on mu1-cohomology.
    """
    if not structure.units:
        return UnitReport(applicable=False, passed=True, kind="cohomological")
    if structure.is_curved():
        return UnitReport(
            applicable=False,
            passed=True,
            kind="cohomological",
            failures=["curved structure: mu1 does not square to zero"],
        )
    ring = structure.ring
    one = RingElement.one(ring)
    failures: list[str] = []
    for obj, unit in structure.units.items():
        if apply_arity_one(structure, {unit: one}):
            failures.append(f"mu1({unit}) != 0")
    for source in structure.objects:
        for target in structure.objects:
            basis = structure.hom(source, target)
            if not basis:
                continue
            index = {g.name: i for i, g in enumerate(basis)}
            images = [
                {index[n]: c for n, c in structure.value((g.name,)).items()} for g in basis
            ]
            cycles = linalg.kernel(ring, images, len(basis))
            for cycle in cycles:
                z = {basis[i].name: c for i, c in cycle.items()}
                for side, unit in (("left", structure.units.get(source)), ("right", structure.units.get(target))):
                    if unit is None:
                        continue
                    if side == "left":
                        product = apply_arity_two(structure, {unit: one}, z)
                        twisted = z
                    else:
                        product = apply_arity_two(structure, z, {unit: one})
                        twisted = {n: c.scale(sign_of(structure.degree(n))) for n, c in z.items()}
                    defect = element_add(product, {n: -c for n, c in twisted.items()})
                    column = {index[n]: c for n, c in defect.items()}
                    if column and not linalg.in_span(images, len(basis), column):
                        failures.append(
                            f"{side} multiplication by {unit} is not the identity on a cycle of "
                            f"hom({source}, {target})"
                        )
    return UnitReport(
        applicable=True, passed=not failures, kind="cohomological", failures=failures
    )


def _element_equal(a: Element, b: Element) -> bool:
    for name in set(a) | set(b):
        left = a.get(name)
        right = b.get(name)
        if left is None or right is None:
            if (left is not None and not left.is_zero()) or (right is not None and not right.is_zero()):
                return False
        elif left != right:
            return False
    return True
