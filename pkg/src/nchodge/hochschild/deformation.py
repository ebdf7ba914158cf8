"""First-order deformation classes of one-parameter families."""

import logging

from nchodge.ainf.cochains import cochain_differential
from nchodge.ainf.models import AInfStructure, CochainEntries, CochainVector
from nchodge.errors import UnknownSymbol
from nchodge.hochschild.models import DeformationReport
from nchodge.scalars import RingElement, linalg

logger = logging.getLogger(__name__)

EntryKey = tuple[tuple[str, ...], str]


def split_family(family: AInfStructure, variable: str) -> tuple[AInfStructure, CochainVector]:
    """
    The structure at ``t = 0`` and the ``t``-linear part of mu.

    Raises:
        UnknownSymbol: If the ring has no bulk variable of that name
    """
    ring = family.ring
    if variable not in ring.variable_names:
        raise UnknownSymbol(f"family ring has no bulk variable '{variable}'")
    base: CochainEntries = {}
    linear: CochainEntries = {}
    for inputs, outputs in family.mu.items():
        for name, coeff in outputs.items():
            constant = coeff.without_variable(variable)
            first = coeff.coefficient_of_variable(variable)
            if not constant.is_zero():
                base.setdefault(inputs, {})[name] = constant
            if not first.is_zero():
                linear.setdefault(inputs, {})[name] = first
    return family.with_mu(base, validate=False), CochainVector(linear, parity=1)


def gauge_basis(structure: AInfStructure, max_arity: int) -> list[CochainVector]:
    """
    Elementary even cochains ``{path: {g: 1}}`` of arity at most ``max_arity``.

    Only entries whose output degree matches shifted degree zero with a
    degree-0 coefficient are produced.
    """
    grading = structure.ring.grading
    one = RingElement.one(structure.ring)
    basis: list[CochainVector] = []
    for arity in range(max_arity + 1):
        for path in structure.paths(arity):
            if path:
                source = structure.generator(path[0]).source
                target = structure.generator(path[-1]).target
                pairs = [(source, target)]
            else:
                pairs = [(o, o) for o in structure.objects]
            expected = sum(structure.degree(a) for a in path) + 1 - arity
            for source, target in pairs:
                for g in structure.hom(source, target):
                    if grading.equal(g.degree, expected):
                        basis.append(CochainVector({path: {g.name: one}}, parity=0))
    return basis


def _flatten(
    cochain: CochainVector, index: dict[EntryKey, int], max_arity: int
) -> dict[int, RingElement]:
    column: dict[int, RingElement] = {}
    for inputs, outputs in cochain.entries.items():
        if len(inputs) > max_arity:
            continue
        for name, coeff in outputs.items():
            key = (inputs, name)
            if key not in index:
                index[key] = len(index)
            column[index[key]] = coeff
    return column


def deformation_class(
    family: AInfStructure, variable: str = "t", arity_bound: int | None = None
) -> DeformationReport:
    """
    Extract the first-order deformation cochain of a family and classify it.

    The cochain is ``d mu / dt`` at ``t = 0``. It is closed for ``delta``
    of the ``t = 0`` structure whenever the family satisfies the A-infinity
    relations to first order. The class is zero when the cochain agrees, in
    arities up to ``arity_bound + 1``, with ``delta(psi)`` for a gauge
    cochain ``psi`` of arity at most ``arity_bound``.

    Args:
        family: Structure over a ring with the bulk variable
        variable: Name of the deformation parameter
        arity_bound: Largest gauge arity; defaults to the family's arity cap

    Returns:
        The cochain, its closedness residual and whether its class vanishes
    """
    base, phi = split_family(family, variable)
    bound = family.arity_cap if arity_bound is None else arity_bound
    residual = cochain_differential(base, phi)
    closed = residual.is_zero()
    if not closed:
        logger.info("deformation cochain is not closed (%d residual entries)", len(residual.entries))

    if phi.is_zero():
        return DeformationReport(phi, closed, True, residual, bound)

    index: dict[EntryKey, int] = {}
    columns = [
        _flatten(cochain_differential(base, psi), index, bound + 1)
        for psi in gauge_basis(base, bound)
    ]
    target = _flatten(phi, index, bound + 1)
    null = linalg.in_span(columns, len(index), target)
    logger.debug("deformation class: %d gauge directions, null=%s", len(columns), null)
    return DeformationReport(phi, closed, null, residual, bound)
