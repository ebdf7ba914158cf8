"""The chain-level Getzler-Gauss-Manin connection on negative cyclic chains.

Given a derivation ``D`` of the coefficient ring and a connection ``∇̃`` on
every hom space, the structure maps have a derivative ``∇̃(mu)``: an odd
Hochschild cochain with one component per Omega label. The GGM connection is

    u∇(x) = u∇̃(x) - b11(∇̃(mu) | x) - u B11(∇̃(mu) | x)

where ``∇̃`` acts on chains by ``D`` on coefficients and ``Γ`` on every
letter, ``b11`` is the cap product and ``B11`` inserts the cochain into the
rotated tail of Connes' operator.
"""

import logging
import random
from collections.abc import Iterable, Sequence
from fractions import Fraction

from nchodge.ainf.cochains import compose_entries
from nchodge.ainf.models import AInfStructure, CochainEntries, CochainVector, OmegaCochain
from nchodge.connections.models import (
    BasisConnection,
    ChainCommutationReport,
    HomologyConnection,
    IndependenceReport,
    ModuleConnection,
    zero_matrix,
)
from nchodge.cyclic.complex import NegativeCyclicComplex
from nchodge.cyclic.models import NegativeCyclicChain, PairingValue
from nchodge.errors import DegreeMismatch, ParameterOutOfRange
from nchodge.hochschild.cap import cap_product
from nchodge.hochschild.complex import HochschildComplex, Terms, add_term
from nchodge.hochschild.models import ChainVector, Sector, Word, sector_of
from nchodge.scalars import Derivation, RingElement, linalg, sign_of

logger = logging.getLogger(__name__)

OmegaChain = dict[str, ChainVector]
OmegaCyclicChain = dict[str, NegativeCyclicChain]


def nabla_of_mu(structure: AInfStructure, tilde: BasisConnection, derivation: Derivation) -> OmegaCochain:
    """
    ``∇̃(mu)``: differentiate every structure constant.

    ``(∇̃mu)(a1..as) = ∇̃(mu(a1..as)) - sum_i mu(a1..Γa_i..as)``, with ``D``
    acting on the coefficients. Labels are treated as even.

    Returns:
        One odd cochain per Omega label
    """
    result: OmegaCochain = {}
    for label in derivation.label_names:
        entries: CochainEntries = {}
        for inputs, outputs in structure.mu.items():
            for out, coeff in outputs.items():
                value = derivation.apply(coeff).get(label)
                if value is not None:
                    entries.setdefault(inputs, {})[out] = value
        gamma = tilde.gamma_cochain(label)
        cochain = CochainVector(entries, parity=1)
        if not gamma.is_zero():
            after = compose_entries(structure, gamma.entries, structure.mu, inner_parity=1)
            before = compose_entries(structure, structure.mu, gamma.entries, inner_parity=0)
            cochain = cochain + CochainVector(after, 1) - CochainVector(before, 1)
        result[label] = cochain
    return result


def random_basis_connection(
    structure: AInfStructure, derivation: Derivation, seed: int = 0, density: float = 0.5
) -> BasisConnection:
    """
    A seeded ``∇̃`` with small rational constant matrices.

    Entries only connect generators of equal degree in the same hom space,
    so the connection preserves both; labels of nonzero degree stay flat.
    """
    rng = random.Random(seed)
    ring = structure.ring
    grading = ring.grading
    connections = {}
    for source in structure.objects:
        for target in structure.objects:
            generators = structure.hom(source, target)
            n = len(generators)
            matrices = {}
            for label in derivation.label_names:
                matrix = zero_matrix(ring, n)
                if grading.reduce(derivation.label_degree(label)) == 0:
                    for i, gi in enumerate(generators):
                        for j, gj in enumerate(generators):
                            if grading.equal(gi.degree, gj.degree) and rng.random() < density:
                                value = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                                matrix[i][j] = RingElement.constant(ring, value)
                matrices[label] = matrix
            connections[(source, target)] = ModuleConnection(
                derivation,
                tuple(g.name for g in generators),
                tuple(g.degree for g in generators),
                matrices,
            )
    return BasisConnection(structure, derivation, connections)


def _tail_insertions(
    complex_: HochschildComplex, phi: CochainVector, tail: Word, rest: Word
) -> list[tuple[Word, RingElement]]:
    """Apply phi to a block of ``tail`` or insert it in a gap of ``tail``."""
    structure = complex_.structure
    letters = tail + rest
    found: list[tuple[Word, RingElement]] = []
    prefix = 0
    for k in range(len(tail) + 1):
        sign = sign_of(phi.parity * prefix)
        obj = structure.generator(letters[k]).source
        for out, coeff in phi.value(()).items():
            if structure.generator(out).source == obj:
                found.append((tail[:k] + (out,) + tail[k:], coeff.scale(sign)))
        for m in range(1, len(tail) - k + 1):
            for out, coeff in phi.value(tail[k : k + m]).items():
                found.append((tail[:k] + (out,) + tail[k + m :], coeff.scale(sign)))
        if k < len(tail):
            prefix += complex_.shifted(tail[k])
    return found


def b11(complex_: HochschildComplex, phi: OmegaCochain, x: ChainVector) -> OmegaChain:
    """``b^{1|1}(phi | x)``: the cap product along each label."""
    return {label: cap_product(complex_, cochain, x) for label, cochain in phi.items()}


def big_b11(complex_: HochschildComplex, phi: OmegaCochain, x: ChainVector) -> OmegaChain:
    """
    ``B^{1|1}(phi | c0[c1|...|cs]) = sum ± e+[c_{j+1}|..phi(..)..|cs|c0|...|cj]``.

    The cochain lands inside the rotated tail ``c_{j+1}..cs``. Vanishes on
    the wedge sector; words beyond the length cap are dropped and flagged.
    """
    if not complex_.nonunital:
        raise ParameterOutOfRange("B11 lives on the non-unital complex")
    structure = complex_.structure
    result: OmegaChain = {}
    for label, cochain in phi.items():
        terms: Terms = {}
        truncated = x.truncated
        for word, coeff in x.terms.items():
            if sector_of(word) == Sector.WEDGE:
                continue
            shifts = [complex_.shifted(a) for a in word]
            total = sum(shifts)
            head = 0
            for j in range(len(word)):
                head += shifts[j]
                rotation = sign_of(head * (total - head))
                tail, rest = word[j + 1 :], word[: j + 1]
                unit = structure.units[structure.generator(rest[0] if not tail else tail[0]).source]
                for inserted, weight in _tail_insertions(complex_, cochain, tail, rest):
                    new = (unit,) + inserted + rest
                    if len(new) - 1 > complex_.length_max:
                        truncated = True
                        continue
                    if complex_.is_normal(new):
                        add_term(terms, new, coeff * weight.scale(rotation))
        result[label] = ChainVector(terms, truncated)
    return result


class GGMConnection:
    """
    ``u∇^{GGM}`` on the truncated negative cyclic complex of a category.

    Args:
        complex_: Truncated negative cyclic complex
        tilde: Connection on the hom spaces
        derivation: Base derivation

    Raises:
        DegreeMismatch: If an Omega label has odd degree
    """

    def __init__(
        self, complex_: NegativeCyclicComplex, tilde: BasisConnection, derivation: Derivation
    ):
        grading = complex_.ring.grading
        odd = [
            label.name for label in derivation.labels if grading.reduce(label.degree) % 2
        ]
        if odd:
            raise DegreeMismatch(f"GGM connection needs even Omega labels, got {odd}")
        self.complex = complex_
        self.tilde = tilde
        self.derivation = derivation
        self.phi = nabla_of_mu(complex_.base, tilde, derivation)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.derivation.label_names

    # -------------------------------------------------------------------------
    # Pieces
    # -------------------------------------------------------------------------

    def nabla_tilde(self, x: ChainVector) -> OmegaChain:
        """``D`` on coefficients plus ``Γ`` on every letter."""
        result: dict[str, Terms] = {label: {} for label in self.labels}
        for word, coeff in x.terms.items():
            for label, value in self.derivation.apply(coeff).items():
                add_term(result[label], word, value)
            for i, letter in enumerate(word):
                for label, image in self.tilde.gamma(letter).items():
                    for out, c in image.items():
                        add_term(result[label], word[:i] + (out,) + word[i + 1 :], coeff * c)
        return {label: ChainVector(terms, x.truncated) for label, terms in result.items()}

    def apply(self, x: NegativeCyclicChain) -> OmegaCyclicChain:
        """
        ``u∇(x)`` componentwise:
        ``(u∇x)_k = ∇̃x_{k-1} - b11(x_k) - B11(x_{k-1})``.
        """
        hochschild = self.complex.hochschild
        u_max = self.complex.u_max
        components: dict[str, dict[int, ChainVector]] = {label: {} for label in self.labels}
        for k in range(u_max + 1):
            current = x.component(k)
            previous = x.component(k - 1) if k >= 1 else ChainVector()
            capped = b11(hochschild, self.phi, current) if not current.is_zero() else {}
            if not previous.is_zero():
                moved = self.nabla_tilde(previous)
                rotated = big_b11(hochschild, self.phi, previous)
            else:
                moved, rotated = {}, {}
            for label in self.labels:
                value = ChainVector()
                if label in moved:
                    value = value + moved[label]
                if label in capped:
                    value = value - capped[label]
                if label in rotated:
                    value = value - rotated[label]
                components[label][k] = value
        return {
            label: NegativeCyclicChain(parts, u_max) for label, parts in components.items()
        }

    def leibniz_defect(self, f: RingElement, x: NegativeCyclicChain) -> OmegaCyclicChain:
        """``u∇(f x) - u Df ⊗ x - f u∇(x)``; zero labels are omitted."""
        left = self.apply(x.scale(f))
        right = self.apply(x)
        df = self.derivation.apply(f)
        defect = {}
        for label in self.labels:
            expected = right[label].scale(f)
            if label in df:
                expected = expected + x.scale(df[label]).multiply_u(1)
            difference = left[label] - expected
            if not difference.is_zero():
                defect[label] = difference
        return defect

    # -------------------------------------------------------------------------
    # Homology
    # -------------------------------------------------------------------------

    def total_degree(self, x: NegativeCyclicChain) -> int:
        """Total degree of a homogeneous chain."""
        hochschild = self.complex.hochschild
        grading = self.complex.ring.grading
        degrees = {
            grading.reduce(hochschild.degree(w) - 2 * k)
            for k, component in x.components.items()
            for w in component.terms
        }
        if len(degrees) != 1:
            raise DegreeMismatch(f"chain is not homogeneous: total degrees {sorted(degrees)}")
        return degrees.pop()

    def _span(
        self, generators: Sequence[NegativeCyclicChain], degrees: Sequence[int], target: int
    ) -> tuple[list, list[tuple[int, int]], list[dict[int, RingElement]]]:
        """Basis of ``target``, the ``(generator, u-power)`` columns and boundary columns."""
        q = self.complex
        grading = q.ring.grading
        basis = q.basis(target)
        slots = []
        columns = []
        for i, (s, n) in enumerate(zip(generators, degrees)):
            for power in range(q.u_max + 1):
                if grading.equal(n - 2 * power, target):
                    slots.append((i, power))
                    columns.append(q.coordinates(s.multiply_u(power), basis))
        boundaries = q.differential_columns(target + 1)
        return basis, slots, boundaries + columns

    def _outside(self, y: NegativeCyclicChain, basis: list) -> bool:
        present = set(basis)
        return any((k, w) not in present for k, c in y.components.items() for w in c.terms)

    def on_homology(self, generators: Sequence[NegativeCyclicChain]) -> HomologyConnection:
        """
        Matrix of ``u∇`` on cycle representatives, solved modulo boundaries.

        ``u∇(s_j)`` has total degree ``|s_j| - 2`` and is written in the columns
        ``u^k s_i`` of that degree plus ``(b + uB)``-boundaries.
        """
        q = self.complex
        ring = q.ring
        degrees = [self.total_degree(s) for s in generators]
        n = len(generators)
        matrices = {
            label: [[PairingValue(ring, {}, q.u_max) for _ in range(n)] for _ in range(n)]
            for label in self.labels
        }
        unsolved: list[tuple[str, int]] = []
        tail: list[tuple[str, int]] = []
        spans: dict[int, tuple] = {}
        for j, s in enumerate(generators):
            target = ring.grading.reduce(degrees[j] - 2)
            if target not in spans:
                spans[target] = self._span(generators, degrees, target)
            basis, slots, columns = spans[target]
            offset = len(columns) - len(slots)
            image = self.apply(s)
            for label in self.labels:
                y = image[label]
                if y.is_zero():
                    continue
                if self._outside(y, basis):
                    tail.append((label, j))
                solution = linalg.solve(ring, columns, len(basis), q.coordinates(y, basis))
                if solution is None:
                    logger.warning("u∇_%s of generator %d is not in the span mod boundaries", label, j)
                    unsolved.append((label, j))
                    continue
                for index, coeff in solution.items():
                    if index < offset:
                        continue
                    i, power = slots[index - offset]
                    entry = matrices[label][i][j]
                    matrices[label][i][j] = entry + PairingValue(ring, {power: coeff}, q.u_max)
        return HomologyConnection(
            labels=list(self.labels),
            degrees=degrees,
            matrices=matrices,
            unsolved=unsolved,
            tail=tail,
            truncation={
                **ring.truncation.to_dict(),
                "length_max": q.length_max,
                "u_max": q.u_max,
            },
        )

    def is_boundary(self, y: NegativeCyclicChain, degree: int) -> bool:
        """Whether a chain of the given total degree is a ``(b + uB)``-boundary."""
        q = self.complex
        basis = q.basis(degree)
        column = q.coordinates(y, basis)
        if not column:
            return True
        return linalg.in_span(q.differential_columns(degree + 1), len(basis), column)


def ggm_connection(
    complex_: NegativeCyclicComplex,
    tilde: BasisConnection,
    derivation: Derivation,
    x: NegativeCyclicChain,
) -> OmegaCyclicChain:
    """``u∇^{GGM}(x)`` per Omega label."""
    return GGMConnection(complex_, tilde, derivation).apply(x)


def connection_on_homology(
    complex_: NegativeCyclicComplex,
    tilde: BasisConnection,
    derivation: Derivation,
    generators: Sequence[NegativeCyclicChain],
) -> HomologyConnection:
    """The matrix of ``u∇^{GGM}`` on chosen cycle representatives."""
    return GGMConnection(complex_, tilde, derivation).on_homology(generators)


def tilde_independence(
    complex_: NegativeCyclicComplex,
    derivation: Derivation,
    tildes: Sequence[BasisConnection],
    generators: Sequence[NegativeCyclicChain],
) -> IndependenceReport:
    """
    Compare the maps on homology induced by several hom-space connections.

    For every later choice the difference ``u∇'(s) - u∇(s)`` must be a
    ``(b + uB)``-boundary on every generator and label.
    """
    if len(tildes) < 2:
        return IndependenceReport(agree=True, choices=len(tildes))
    reference = GGMConnection(complex_, tildes[0], derivation)
    baseline = [reference.apply(s) for s in generators]
    degrees = [reference.total_degree(s) for s in generators]
    disagreements = []
    for c, tilde in enumerate(tildes[1:], start=1):
        other = GGMConnection(complex_, tilde, derivation)
        for j, s in enumerate(generators):
            image = other.apply(s)
            for label in reference.labels:
                difference = image[label] - baseline[j][label]
                if not reference.is_boundary(difference, degrees[j] - 2):
                    disagreements.append((c, label, j))
    if disagreements:
        logger.warning("∇̃ choices disagree on homology: %s", disagreements[:5])
    return IndependenceReport(
        agree=not disagreements, choices=len(tildes), disagreements=disagreements
    )


def chain_commutation_diagnostic(
    complex_: NegativeCyclicComplex,
    tilde: BasisConnection,
    derivation: Derivation,
    samples: Iterable[NegativeCyclicChain],
) -> ChainCommutationReport:
    """``u∇((b + uB)x) - (b + uB)(u∇x)`` on sample chains; reported, not required."""
    connection = GGMConnection(complex_, tilde, derivation)
    nonzero = []
    count = 0
    for i, x in enumerate(samples):
        count += 1
        left = connection.apply(complex_.b_plus_ub(x))
        right = connection.apply(x)
        for label in connection.labels:
            if not (left[label] - complex_.b_plus_ub(right[label])).is_zero():
                nonzero.append((i, label))
    return ChainCommutationReport(commutes=not nonzero, nonzero=nonzero, samples=count)
