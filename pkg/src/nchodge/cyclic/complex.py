"""The negative cyclic complex ``(CC^nu[[u]], b + uB)`` at finite truncation.

``u`` has homological degree ``-2``: a chain of total degree ``n`` has its
``u^k`` component in Hochschild degree ``n + 2k``. The ``u^k`` component
keeps words with at most ``length_max + k`` bar entries, so ``B`` (which
adds one entry and one power of ``u``) never leaves the truncation.
"""

from nchodge.ainf.models import AInfStructure
from nchodge.cyclic.models import NegativeCyclicChain
from nchodge.hochschild.complex import HochschildComplex
from nchodge.hochschild.models import ChainVector, Word
from nchodge.scalars import RingElement

Slot = tuple[int, Word]


class NegativeCyclicComplex:
    """
    Truncated negative cyclic chains of a finite curved A-infinity category.

    Args:
        structure: The category ``C``
        length_max: Length cap of the ``u^0`` component
        u_max: Largest power of ``u`` kept
    """

    def __init__(
        self,
        structure: AInfStructure,
        length_max: int | None = None,
        u_max: int | None = None,
    ):
        truncation = structure.ring.truncation
        self.base = structure
        self.ring = structure.ring
        self.length_max = truncation.length_max if length_max is None else length_max
        self.u_max = truncation.u_max if u_max is None else u_max
        self.hochschild = HochschildComplex(
            structure, nonunital=True, length_max=self.length_max + self.u_max
        )
        self._basis_cache: dict[int, list[Slot]] = {}

    @property
    def structure(self) -> AInfStructure:
        """The unitalized category the chains are written in."""
        return self.hochschild.structure

    def with_caps(self, length_max: int, u_max: int | None = None) -> "NegativeCyclicComplex":
        return NegativeCyclicComplex(
            self.base, length_max, self.u_max if u_max is None else u_max
        )

    # -------------------------------------------------------------------------
    # Operators
    # -------------------------------------------------------------------------

    def b_plus_ub(self, x: NegativeCyclicChain) -> NegativeCyclicChain:
        """``(b + uB) x``; the ``u^k`` component is ``b x_k + B x_{k-1}``."""
        hochschild = self.hochschild
        result: dict[int, ChainVector] = {}
        for k in range(self.u_max + 1):
            value = hochschild.b(x.component(k))
            if k >= 1:
                value = value + hochschild.connes_b(x.component(k - 1))
            result[k] = value
        return NegativeCyclicChain(result, self.u_max)

    def chain(self, x: ChainVector) -> NegativeCyclicChain:
        return NegativeCyclicChain.from_chain(x, self.u_max)

    # -------------------------------------------------------------------------
    # Bases and matrices
    # -------------------------------------------------------------------------

    def component_basis(self, k: int, degree: int) -> list[Word]:
        cap = self.length_max + k
        return [w for w in self.hochschild.basis(degree + 2 * k) if len(w) - 1 <= cap]

    def basis(self, degree: int) -> list[Slot]:
        """Pairs ``(k, word)`` spanning total degree ``degree``."""
        degree = self.ring.grading.reduce(degree)
        if degree not in self._basis_cache:
            self._basis_cache[degree] = [
                (k, w) for k in range(self.u_max + 1) for w in self.component_basis(k, degree)
            ]
        return self._basis_cache[degree]

    def coordinates(self, x: NegativeCyclicChain, basis: list[Slot]) -> dict[int, RingElement]:
        """Column of ``x`` over a basis; terms outside the basis are ignored."""
        index = {slot: i for i, slot in enumerate(basis)}
        column: dict[int, RingElement] = {}
        for k, component in x.components.items():
            for w, c in component.terms.items():
                if (k, w) in index:
                    column[index[(k, w)]] = c
        return column

    def from_coordinates(
        self, column: dict[int, RingElement], basis: list[Slot]
    ) -> NegativeCyclicChain:
        components: dict[int, dict[Word, RingElement]] = {}
        for i, c in column.items():
            k, w = basis[i]
            components.setdefault(k, {})[w] = c
        return NegativeCyclicChain(
            {k: ChainVector(terms) for k, terms in components.items()}, self.u_max
        )

    def differential_columns(self, degree: int) -> list[dict[int, RingElement]]:
        """Columns of ``b + uB`` from total degree ``n`` to ``n - 1``."""
        one = RingElement.one(self.ring)
        target = self.basis(degree - 1)
        columns = []
        for k, w in self.basis(degree):
            x = NegativeCyclicChain({k: ChainVector.word(w, one)}, self.u_max)
            columns.append(self.coordinates(self.b_plus_ub(x), target))
        return columns

    def __repr__(self) -> str:
        return f"NegativeCyclicComplex(length_max={self.length_max}, u_max={self.u_max})"
