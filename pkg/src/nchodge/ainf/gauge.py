"""Gauge transformations along A-infinity automorphisms ``id + psi``.

A gauge cochain ``psi`` has arity at least 2 and shifted degree 0. The
transported structure ``mu'`` is the unique one making ``F = id + psi`` an
A-infinity functor ``(C, mu') -> (C, mu)``:

    sum mu(F(B1), ..., F(Bm)) = sum ± F(w1..wi, mu'(w_{i+1}..w_{i+j}), ...)

over block decompositions ``B1..Bm`` of a word ``w`` on the left and over
all insertion slots on the right. Solving arity by arity gives genuine
higher products, so the result is stored up to an arity cap and flagged
as truncated.
"""

import logging
from dataclasses import replace
from itertools import product

from nchodge.ainf.cochains import cochain_differential
from nchodge.ainf.models import (
    AInfStructure,
    CochainEntries,
    CochainVector,
    Element,
    element_add,
    element_scale,
)
from nchodge.ainf.operations import base_change
from nchodge.errors import DegreeMismatch, NotComposable, ParameterOutOfRange
from nchodge.scalars import BulkVariable, RingElement, RingMorphismWithDerivation, parity, sign_of

logger = logging.getLogger(__name__)


def validate_gauge(structure: AInfStructure, psi: CochainVector) -> None:
    """
    Check that psi is a gauge cochain for the structure.

    Raises:
        ParameterOutOfRange: On an entry of arity below 2 or an odd cochain
        NotComposable: On non-composable inputs or a misplaced output
        DegreeMismatch: On an entry of the wrong degree
    """
    if psi.parity != 0:
        raise ParameterOutOfRange("gauge cochains have even shifted degree")
    grading = structure.ring.grading
    for inputs, outputs in psi.entries.items():
        if len(inputs) < 2:
            raise ParameterOutOfRange(f"gauge entry {inputs} has arity below 2")
        if not structure.is_composable(inputs):
            raise NotComposable(f"gauge inputs {inputs} are not composable")
        source = structure.generator(inputs[0]).source
        target = structure.generator(inputs[-1]).target
        expected = sum(structure.degree(a) for a in inputs) + 1 - len(inputs)
        for name, coeff in outputs.items():
            out = structure.generator(name)
            if (out.source, out.target) != (source, target):
                raise NotComposable(f"gauge output {name} of {inputs} is in the wrong hom space")
            degree = coeff.degree()
            if degree is None or parity(degree) != 0:
                raise DegreeMismatch(f"gauge coefficient of {name} at {inputs} must be even")
            if not grading.equal(degree + out.degree, expected):
                raise DegreeMismatch(f"gauge entry {inputs} -> {name} has the wrong degree")


def _compositions(n: int):
    """Cut points of every decomposition of a word of length n into nonempty blocks."""
    if n == 0:
        yield []
        return
    for mask in range(1 << (n - 1)):
        cuts = [0]
        for gap in range(1, n):
            if mask & (1 << (gap - 1)):
                cuts.append(gap)
        cuts.append(n)
        yield cuts


class GaugeTransformer:
    """Solves for the transported structure maps arity by arity."""

    def __init__(self, structure: AInfStructure, psi: CochainVector, arity_cap: int):
        validate_gauge(structure, psi)
        self.structure = structure
        self.psi = psi
        self.arity_cap = arity_cap
        self.one = RingElement.one(structure.ring)
        self.transported: CochainEntries = {}

    def _functor(self, block: tuple[str, ...]) -> Element:
        if len(block) == 1:
            return {block[0]: self.one}
        return self.psi.value(block)

    def _pushed_forward(self, word: tuple[str, ...]) -> Element:
        """``sum mu(F(B1), ..., F(Bm))`` over block decompositions of the word."""
        structure = self.structure
        total: Element = {}
        for cuts in _compositions(len(word)):
            blocks = [word[cuts[k] : cuts[k + 1]] for k in range(len(cuts) - 1)]
            images = [self._functor(block) for block in blocks]
            if any(not image for image in images):
                continue
            for choice in product(*(list(image.items()) for image in images)):
                inputs = tuple(name for name, _ in choice)
                value = structure.value(inputs)
                if not value:
                    continue
                weight = self.one
                for _, coeff in choice:
                    weight = weight * coeff
                total = element_add(total, element_scale(value, weight))
        return total

    def _correction(self, word: tuple[str, ...]) -> Element:
        """``sum ± psi(w1..wi, mu'(...), ...)`` over proper insertions."""
        structure = self.structure
        n = len(word)
        total: Element = {}
        for i in range(n + 1):
            prefix_shift = sum(structure.shifted(a) for a in word[:i])
            sign = sign_of(prefix_shift)
            for j in range(n - i + 1):
                if i == 0 and j == n:
                    continue
                inner = self.transported.get(word[i : i + j])
                if not inner:
                    continue
                for name, coeff in inner.items():
                    value = self.psi.value(word[:i] + (name,) + word[i + j :])
                    if value:
                        total = element_add(total, element_scale(value, coeff.scale(sign)))
        return total

    def run(self) -> AInfStructure:
        structure = self.structure
        for n in range(self.arity_cap + 1):
            for word in structure.paths(n):
                value = self._pushed_forward(word)
                correction = self._correction(word)
                value = element_add(value, {k: -c for k, c in correction.items()})
                if value:
                    self.transported[word] = value
            logger.debug("gauge transform: arity %d done", n)
        return structure.with_mu(
            self.transported,
            arity_cap=self.arity_cap,
            truncated=not self.psi.is_zero() or structure.truncated,
        )


def gauge_transform(
    structure: AInfStructure, psi: CochainVector, arity_cap: int | None = None
) -> AInfStructure:
    """
    Transport the structure along ``id + psi``.

    Args:
        structure: Structure to transform
        psi: Gauge cochain (arity >= 2, even)
        arity_cap: Largest arity computed; defaults to one more than the
            largest arity of mu or psi

    Returns:
        Structure whose maps agree with the transported ones up to the cap
    """
    cap = arity_cap or max(structure.arity_cap, psi.max_arity()) + 1
    return GaugeTransformer(structure, psi, cap).run()


def first_order_coboundary(structure: AInfStructure, psi: CochainVector) -> CochainVector:
    """The cochain ``delta(psi) = [mu, psi]``."""
    if psi.parity != 0:
        raise ParameterOutOfRange("coboundary families use an even cochain")
    return cochain_differential(structure, psi)


def coboundary_family(
    structure: AInfStructure, psi: CochainVector, variable: str = "t"
) -> AInfStructure:
    """
    The first-order family ``mu + t * delta(psi)`` over ``R[t]/(t^2)``.

    Raises:
        ParameterOutOfRange: If the ring already carries bulk variables or symbols
    """
    ring = structure.ring
    if ring.variables or ring.symbols:
        raise ParameterOutOfRange("coboundary families need a ring without bulk variables")
    family_ring = replace(
        ring,
        variables=(BulkVariable(variable, 0),),
        truncation=ring.truncation.with_caps(bulk_degree_max=1),
    )
    inclusion = RingMorphismWithDerivation(source=ring, target=family_ring)
    lifted = base_change(structure, inclusion)
    t = RingElement.variable(family_ring, variable)
    delta = first_order_coboundary(structure, psi)
    mu: CochainEntries = {k: dict(v) for k, v in lifted.mu.items()}
    for inputs, outputs in delta.entries.items():
        shifted = {name: t * inclusion.apply(coeff) for name, coeff in outputs.items()}
        mu[inputs] = element_add(mu.get(inputs, {}), shifted)
    return lifted.with_mu(mu)
