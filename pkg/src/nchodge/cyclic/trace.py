"""Trace pairings on hom-space cohomology, certifying a weak Calabi-Yau structure."""

import logging
from collections.abc import Mapping

from nchodge.ainf.models import AInfStructure, Element, element_to_dict
from nchodge.cyclic.models import TracePairingReport
from nchodge.errors import ParameterOutOfRange, TraceNotClosed
from nchodge.hochschild.complex import HochschildComplex
from nchodge.hochschild.models import ChainVector, Word, format_word
from nchodge.scalars import RingElement, linalg, sign_of

logger = logging.getLogger(__name__)

Functional = Mapping[Word, RingElement]


def evaluate(functional: Functional, x: ChainVector) -> RingElement | None:
    """``phi(x)``; None for the zero chain."""
    total: RingElement | None = None
    for w, c in x.terms.items():
        value = functional.get(w)
        if value is None:
            continue
        term = value * c
        total = term if total is None else total + term
    return total


def check_trace_closed(structure: AInfStructure, functional: Functional, window: int = 2) -> list[str]:
    """Words of length at most ``window`` whose boundary the functional does not kill."""
    complex_ = HochschildComplex(structure, length_max=window)
    one = RingElement.one(structure.ring)
    failures = []
    for s in range(window + 1):
        for w in complex_.words(s):
            value = evaluate(functional, complex_.b(ChainVector.word(w, one)))
            if value is not None and not value.is_zero():
                failures.append(format_word(w))
    return failures


def cohomology_representatives(structure: AInfStructure) -> list[tuple[str, str, int, Element]]:
    """
    Homogeneous mu1-cohomology representatives of every hom space.

    Returns:
        ``(source, target, degree, element)`` per representative

    Raises:
        ParameterOutOfRange: On a curved structure, whose mu1 does not square to zero
    """
    if structure.is_curved():
        raise ParameterOutOfRange("hom-space cohomology of a curved structure is not defined")
    ring = structure.ring
    found = []
    for source in structure.objects:
        for target in structure.objects:
            generators = structure.hom(source, target)
            grading = ring.grading
            degrees = sorted({grading.reduce(g.degree) for g in generators})
            for degree in degrees:
                basis = [g for g in generators if grading.reduce(g.degree) == degree]
                above = [g for g in generators if grading.equal(g.degree, degree + 1)]
                below = [g for g in generators if grading.equal(g.degree, degree - 1)]
                up_index = {g.name: i for i, g in enumerate(above)}
                here_index = {g.name: i for i, g in enumerate(basis)}
                outgoing = [
                    {up_index[n]: c for n, c in structure.value((g.name,)).items() if n in up_index}
                    for g in basis
                ]
                incoming = [
                    {here_index[n]: c for n, c in structure.value((g.name,)).items() if n in here_index}
                    for g in below
                ]
                cycles = linalg.kernel(ring, outgoing, len(above))
                picks = linalg.independent_columns(incoming + cycles, len(basis))
                for j in picks:
                    if j < len(incoming):
                        continue
                    element = {basis[i].name: c for i, c in cycles[j - len(incoming)].items()}
                    found.append((source, target, degree, element))
    return found


def _label(element: Element) -> str:
    parts = element_to_dict(element)
    if len(parts) == 1:
        ((name, coeff),) = parts.items()
        return name if coeff == "1" else f"{coeff}*{name}"
    return " + ".join(f"{c}*{n}" for n, c in parts.items())


def cohomology_pairing_from_trace(
    structure: AInfStructure, functional: Functional, window: int = 2
) -> TracePairingReport:
    """
    Gram matrix of ``(a, b) -> phi(mu2(a, b)[])`` on cohomology representatives.

    Args:
        structure: Uncurved category
        functional: Values of phi on Hochschild words (zero elsewhere)
        window: Length window in which phi must kill boundaries

    Raises:
        TraceNotClosed: If phi does not vanish on b-boundaries in the window
        ParameterOutOfRange: On a curved structure
    """
    failures = check_trace_closed(structure, functional, window)
    if failures:
        raise TraceNotClosed(
            f"functional does not vanish on the boundary of {', '.join(failures[:5])}"
        )
    ring = structure.ring
    zero = RingElement.zero(ring)
    reps = cohomology_representatives(structure)
    gram: list[list[RingElement]] = []
    for source_a, target_a, _, a in reps:
        row = []
        for source_b, target_b, _, b in reps:
            if target_a != source_b or target_b != source_a:
                row.append(zero)
                continue
            value = zero
            for name_a, ca in a.items():
                for name_b, cb in b.items():
                    for out, c in structure.value((name_a, name_b)).items():
                        phi = functional.get((out,))
                        if phi is not None:
                            value = value + ca * cb * c * phi
            row.append(value)
        gram.append(row)

    asymmetric = []
    for i, (_, _, deg_a, _) in enumerate(reps):
        for j in range(i + 1, len(reps)):
            deg_b = reps[j][2]
            expected = sign_of((deg_a + 1) * (deg_b + 1) + 1)
            if gram[i][j] != gram[j][i].scale(expected):
                asymmetric.append((_label(reps[i][3]), _label(reps[j][3])))

    n = len(reps)
    columns = [{i: gram[i][j] for i in range(n) if not gram[i][j].is_zero()} for j in range(n)]
    rank = linalg.rank(columns, n)
    logger.debug("trace pairing: %d representatives, rank %d", n, rank.rank)
    return TracePairingReport(
        labels=[_label(r[3]) for r in reps],
        gram=gram,
        rank=rank.rank,
        dimension=n,
        graded_symmetric=not asymmetric,
        asymmetric_pairs=asymmetric,
        precision=None if rank.precision is None else str(rank.precision),
    )
