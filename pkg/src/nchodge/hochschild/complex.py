"""Length-truncated Hochschild chain complexes and their differentials.

A word ``(x0, x1, ..., xs)`` stands for ``x0[x1|...|xs]``; it is cyclically
composable when ``target(x_i) == source(x_{i+1})`` and
``target(xs) == source(x0)``. Its homological degree is
``s - (|x0| + ... + |xs|)``, so ``b`` lowers degree by one and Connes' ``B``
raises it by one.

The non-unital complex is realized on the unitalization ``C+``: the vee
sector consists of the words of ``C`` and the wedge sector of the words
``e+[a1|...|as]`` with ``s >= 1``. Words with an interior ``e+`` and the
bare word ``e+[]`` are quotiented away; the Hochschild differential of
``C+`` preserves this normal form.
"""

import logging
from collections import defaultdict
from collections.abc import Iterator

from nchodge.ainf.models import AInfStructure, Element, is_unit_plus
from nchodge.ainf.operations import unitalize
from nchodge.errors import ParameterOutOfRange
from nchodge.hochschild.models import ChainVector, ComplexKind, Sector, Word, sector_of
from nchodge.scalars import RingElement, sign_of

logger = logging.getLogger(__name__)

Terms = dict[Word, RingElement]


def add_term(terms: Terms, word: Word, coeff: RingElement) -> None:
    """Accumulate ``coeff * word`` into a term dictionary in place."""
    if coeff.is_zero():
        return
    if word in terms:
        total = terms[word] + coeff
        if total.is_zero():
            del terms[word]
        else:
            terms[word] = total
    else:
        terms[word] = coeff


class HochschildComplex:
    """
    Hochschild chains of a finite curved A-infinity category up to a length cap.

    Args:
        structure: The category ``C``
        nonunital: Build ``CC^nu(C) = CC^vee ⊕ CC^wedge`` on ``C+`` instead of ``CC(C)``
        length_max: Largest number of bar entries kept; defaults to the
            ring's truncation policy
    """

    def __init__(
        self, structure: AInfStructure, nonunital: bool = False, length_max: int | None = None
    ):
        self.base = structure
        self.nonunital = nonunital
        self.structure = unitalize(structure) if nonunital else structure
        self.ring = structure.ring
        self.length_max = (
            structure.ring.truncation.length_max if length_max is None else length_max
        )
        if self.length_max < 0:
            raise ParameterOutOfRange(f"length_max must be >= 0, got {self.length_max}")
        self._curvature: dict[str, Element] = defaultdict(dict)
        for name, coeff in self.structure.value(()).items():
            self._curvature[self.structure.generator(name).source][name] = coeff
        self._b_cache: dict[Word, tuple[Terms, bool]] = {}
        self._basis_cache: dict[int, list[Word]] = {}

    @property
    def kind(self) -> ComplexKind:
        return ComplexKind.NONUNITAL if self.nonunital else ComplexKind.HOCHSCHILD

    def with_length_max(self, length_max: int) -> "HochschildComplex":
        return HochschildComplex(self.base, self.nonunital, length_max)

    # -------------------------------------------------------------------------
    # Words
    # -------------------------------------------------------------------------

    def shifted(self, name: str) -> int:
        return self.structure.shifted(name)

    def degree(self, word: Word) -> int:
        """Homological degree ``s - sum |x_i|`` reduced into the grading group."""
        raw = len(word) - 1 - sum(self.structure.degree(x) for x in word)
        return self.ring.grading.reduce(raw)

    def is_normal(self, word: Word) -> bool:
        """False for words quotiented away in the non-unital complex."""
        if not word:
            return False
        if any(is_unit_plus(x) for x in word[1:]):
            return False
        if is_unit_plus(word[0]):
            return self.nonunital and len(word) > 1
        return True

    def is_cyclic(self, word: Word) -> bool:
        structure = self.structure
        if not word or not structure.is_composable(word):
            return False
        return structure.generator(word[-1]).target == structure.generator(word[0]).source

    def words(self, length: int) -> Iterator[Word]:
        """Normal cyclic words with ``length`` bar entries."""
        structure = self.structure
        for path in structure.paths(length + 1):
            if structure.generator(path[-1]).target != structure.generator(path[0]).source:
                continue
            if self.is_normal(path):
                yield path

    def basis(self, degree: int) -> list[Word]:
        """Every normal word of the given degree within the length cap, sorted."""
        degree = self.ring.grading.reduce(degree)
        if degree not in self._basis_cache:
            found = [
                w
                for s in range(self.length_max + 1)
                for w in self.words(s)
                if self.degree(w) == degree
            ]
            self._basis_cache[degree] = sorted(found, key=lambda w: (len(w), w))
        return self._basis_cache[degree]

    # -------------------------------------------------------------------------
    # Differentials
    # -------------------------------------------------------------------------

    def _b_word(self, word: Word) -> tuple[Terms, bool]:
        cached = self._b_cache.get(word)
        if cached is not None:
            return cached
        structure = self.structure
        shifts = [self.shifted(x) for x in word]
        s = len(word) - 1
        terms: Terms = {}
        truncated = False

        # blocks away from x0
        prefix = shifts[0]
        for i in range(1, s + 1):
            sign = sign_of(prefix)
            for k in range(1, s - i + 2):
                for out, coeff in structure.value(word[i : i + k]).items():
                    add_term(terms, word[:i] + (out,) + word[i + k :], coeff.scale(sign))
            prefix += shifts[i]

        # curvature in every gap after x0
        if self._curvature:
            prefix = 0
            for p in range(1, s + 2):
                prefix += shifts[p - 1]
                obj = structure.generator(word[p - 1]).target
                curvature = self._curvature.get(obj)
                if not curvature:
                    continue
                if s + 1 > self.length_max:
                    truncated = True
                    continue
                sign = sign_of(prefix)
                for out, coeff in curvature.items():
                    add_term(terms, word[:p] + (out,) + word[p:], coeff.scale(sign))

        # blocks through x0: (x_i..x_s, x_0..x_j)
        total = sum(shifts)
        head_shift = 0
        for i in range(1, s + 2):
            head_shift += shifts[i - 1]
            tail = word[i:]
            sign = sign_of(head_shift * (total - head_shift))
            for j in range(i):
                block = tail + word[: j + 1]
                for out, coeff in structure.value(block).items():
                    add_term(terms, (out,) + word[j + 1 : i], coeff.scale(sign))

        terms = {w: c for w, c in terms.items() if self.is_normal(w)}
        self._b_cache[word] = (terms, truncated)
        return terms, truncated

    def b(self, x: ChainVector) -> ChainVector:
        """The curved Hochschild differential."""
        terms: Terms = {}
        truncated = x.truncated
        for word, coeff in x.terms.items():
            image, cut = self._b_word(word)
            truncated = truncated or cut
            for w, c in image.items():
                add_term(terms, w, coeff * c)
        if truncated:
            logger.debug("b dropped curvature insertions beyond length %d", self.length_max)
        return ChainVector(terms, truncated)

    def connes_b(self, x: ChainVector) -> ChainVector:
        """
        Connes' operator ``B(c0[c1|...|cs]) = sum_j ± e+[c_{j+1}|...|cs|c0|...|cj]``.

        Vanishes on the wedge sector.

        Raises:
            ParameterOutOfRange: On the unital complex, which has no wedge sector
        """
        if not self.nonunital:
            raise ParameterOutOfRange("Connes' B lives on the non-unital complex")
        structure = self.structure
        terms: Terms = {}
        truncated = x.truncated
        for word, coeff in x.terms.items():
            if sector_of(word) == Sector.WEDGE:
                continue
            s = len(word) - 1
            if s + 1 > self.length_max:
                truncated = True
                continue
            shifts = [self.shifted(a) for a in word]
            total = sum(shifts)
            head_shift = 0
            for j in range(s + 1):
                head_shift += shifts[j]
                sign = sign_of(head_shift * (total - head_shift))
                rotated = word[j + 1 :] + word[: j + 1]
                unit = structure.units[structure.generator(rotated[0]).source]
                add_term(terms, (unit,) + rotated, coeff.scale(sign))
        return ChainVector(terms, truncated)

    # -------------------------------------------------------------------------
    # Matrices
    # -------------------------------------------------------------------------

    def coordinates(self, x: ChainVector, basis: list[Word]) -> dict[int, RingElement]:
        """Column of ``x`` over a basis; words outside the basis are ignored."""
        index = {w: i for i, w in enumerate(basis)}
        return {index[w]: c for w, c in x.terms.items() if w in index}

    def from_coordinates(self, column: dict[int, RingElement], basis: list[Word]) -> ChainVector:
        return ChainVector({basis[i]: c for i, c in column.items()})

    def boundary_columns(self, degree: int) -> list[dict[int, RingElement]]:
        """Columns of ``b`` from degree ``n`` to degree ``n - 1`` over the word bases."""
        source = self.basis(degree)
        target = self.basis(degree - 1)
        one = RingElement.one(self.ring)
        return [
            self.coordinates(self.b(ChainVector.word(w, one)), target) for w in source
        ]

    def __repr__(self) -> str:
        return f"HochschildComplex(kind={self.kind.value}, length_max={self.length_max})"
