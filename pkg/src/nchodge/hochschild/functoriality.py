"""Chain-level pushforward along the functor defined by bounding cochains."""

import logging
from itertools import product

from nchodge.ainf.bounding import require_convergent
from nchodge.ainf.models import AInfStructure, BoundingCochainAssignment
from nchodge.hochschild.complex import HochschildComplex, Terms, add_term
from nchodge.hochschild.models import ChainVector, Word
from nchodge.scalars import RingElement

logger = logging.getLogger(__name__)


def _runs(
    b: dict[str, RingElement], longest: int, one: RingElement
) -> list[tuple[tuple[str, ...], RingElement]]:
    """Every sequence ``(b..b)`` of length at most ``longest`` with its coefficient."""
    runs: list[tuple[tuple[str, ...], RingElement]] = [((), one)]
    frontier = [((), one)]
    for _ in range(longest):
        extended = []
        for letters, weight in frontier:
            for name, coeff in b.items():
                w = weight * coeff
                if not w.is_zero():
                    extended.append((letters + (name,), w))
        if not extended:
            break
        runs.extend(extended)
        frontier = extended
    return runs


def pushforward_along_f(
    structure: AInfStructure,
    assignment: BoundingCochainAssignment,
    x: ChainVector,
    complex_: HochschildComplex | None = None,
) -> ChainVector:
    """
    ``F_*`` from chains of the deformed category to chains of ``structure``.

    Every gap after ``x0`` receives any number of copies of the bounding
    cochain of the object at that gap. Bounding cochains are even in the
    shifted grading, so no signs appear. Runs that would exceed the length
    cap are dropped and the result is flagged truncated.

    Raises:
        NonconvergentSum: If a coefficient of b does not raise filtration
    """
    require_convergent(assignment)
    complex_ = complex_ or HochschildComplex(structure, nonunital=True)
    if assignment.is_zero():
        return ChainVector(x.terms, x.truncated)

    one = RingElement.one(structure.ring)
    runs_by_object = {
        obj: _runs(assignment.on(obj), complex_.length_max, one) for obj in structure.objects
    }
    terms: Terms = {}
    truncated = x.truncated
    internal = complex_.structure
    for word, coeff in x.terms.items():
        gaps = [internal.generator(a).target for a in word]
        room = complex_.length_max - (len(word) - 1)
        for choice in product(*(runs_by_object[obj] for obj in gaps)):
            extra = sum(len(letters) for letters, _ in choice)
            if extra > room:
                truncated = True
                continue
            weight = coeff
            pieces: list[str] = []
            for letter, (letters, w) in zip(word, choice):
                pieces.append(letter)
                pieces.extend(letters)
                weight = weight * w
            new_word: Word = tuple(pieces)
            add_term(terms, new_word, weight)
    if truncated:
        logger.debug("pushforward dropped insertions beyond length %d", complex_.length_max)
    return ChainVector(terms, truncated)
