"""Single-structure-constant perturbations of a category.

Only rigidly constrained constants are perturbed: unit laws, entries whose
single-entry cochain is not a Hochschild cocycle, and entries that feed the
Maurer-Cartan equation of a shipped bounding cochain. Every mutation must be
caught by the check named by its constraint.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from nchodge.ainf.cochains import cochain_differential
from nchodge.ainf.models import AInfStructure, BoundingCochainAssignment, CochainVector
from nchodge.errors import ParameterOutOfRange
from nchodge.scalars import RingElement, format_element

logger = logging.getLogger(__name__)


class Constraint(str, Enum):
    """What pins a structure constant down."""

    UNIT = "unit"
    ASSOCIATIVITY = "associativity"
    MAURER_CARTAN = "maurer_cartan"


class ConstrainedEntry(NamedTuple):
    inputs: tuple[str, ...]
    output: str
    constraint: Constraint


@dataclass
class Mutation:
    """One perturbed structure constant and the structure carrying it."""

    inputs: tuple[str, ...]
    output: str
    original: RingElement
    value: RingElement
    structure: AInfStructure
    constraint: Constraint = Constraint.UNIT

    @property
    def description(self) -> str:
        return (
            f"mu{list(self.inputs)} -> {self.output}: "
            f"{format_element(self.original)} => {format_element(self.value)}"
        )

    def to_dict(self) -> dict:
        return {
            "inputs": list(self.inputs),
            "output": self.output,
            "original": format_element(self.original),
            "value": format_element(self.value),
            "constraint": self.constraint.value,
        }


def _breaks_relations(structure: AInfStructure, inputs: tuple[str, ...], output: str) -> bool:
    delta = CochainVector({inputs: {output: RingElement.one(structure.ring)}}, parity=1)
    return not cochain_differential(structure, delta).is_zero()


def _feeds_maurer_cartan(
    structure: AInfStructure, bounding: BoundingCochainAssignment, inputs: tuple[str, ...]
) -> bool:
    if not inputs:
        return True
    b = bounding.on(structure.generator(inputs[0]).source)
    if not all(a in b for a in inputs):
        return False
    weight = RingElement.one(structure.ring)
    for a in inputs:
        weight = weight * b[a]
    return not weight.is_zero()


def constrained_entries(
    structure: AInfStructure, bounding: BoundingCochainAssignment | None = None
) -> list[ConstrainedEntry]:
    """
    Entries of mu that a single-constant change must violate, in sorted order.

    An entry with a designated unit among its inputs is a unit law. Any other
    entry is an associativity constraint when ``[mu, delta]`` is nonzero for
    the cochain ``delta`` holding just that entry. With a bounding cochain,
    the remaining entries whose inputs all lie in its support are pinned by
    the Maurer-Cartan equation.
    """
    units = set(structure.units.values())
    found: list[ConstrainedEntry] = []
    for inputs, outputs in structure.mu.items():
        for output in outputs:
            if units.intersection(inputs):
                found.append(ConstrainedEntry(inputs, output, Constraint.UNIT))
            elif inputs and _breaks_relations(structure, inputs, output):
                found.append(ConstrainedEntry(inputs, output, Constraint.ASSOCIATIVITY))
            elif bounding is not None and _feeds_maurer_cartan(structure, bounding, inputs):
                found.append(ConstrainedEntry(inputs, output, Constraint.MAURER_CARTAN))
    return sorted(found, key=lambda entry: (len(entry.inputs), entry.inputs, entry.output))


def mutations(
    structure: AInfStructure,
    count: int = 10,
    seed: int = 0,
    bounding: BoundingCochainAssignment | None = None,
) -> list[Mutation]:
    """
    Perturb one constrained constant at a time.

    Round ``r`` walks through the constrained entries (starting at an offset
    picked by ``seed``) and adds ``r`` to each; a perturbation that would
    cancel the constant is skipped.

    Raises:
        ParameterOutOfRange: If the structure has no constrained entries
    """
    entries = constrained_entries(structure, bounding)
    if not entries:
        raise ParameterOutOfRange("mutations need a strictly unital structure")
    ring = structure.ring
    start = seed % len(entries)
    found: list[Mutation] = []
    step = 0
    while len(found) < count:
        inputs, output, constraint = entries[(start + step) % len(entries)]
        shift = 1 + step // len(entries)
        step += 1
        original = structure.mu[inputs][output]
        value = original + RingElement.constant(ring, shift)
        if value.is_zero():
            continue
        mu = {k: dict(v) for k, v in structure.mu.items()}
        mu[inputs][output] = value
        found.append(
            Mutation(inputs, output, original, value, structure.with_mu(mu), constraint)
        )
    logger.debug("generated %d mutations over %d constrained entries", len(found), len(entries))
    return found
