"""Dense brute-force recomputation of ranks and Mukai Gram matrices.

Everything here is deliberately naive: chain groups are enumerated
directly from the structure, differentials are written into dense sympy
matrices and ranks come from ``Matrix.rank``. The oracle only accepts
uncurved structures with rational structure constants.
"""

import logging
from fractions import Fraction

from sympy import Matrix, Rational

from nchodge.ainf.models import AInfStructure
from nchodge.config import get_settings
from nchodge.cyclic.complex import NegativeCyclicComplex
from nchodge.errors import ParameterOutOfRange, TooLarge
from nchodge.hochschild.homology import degree_window
from nchodge.hochschild.models import Word
from nchodge.models.models import OracleCaps, OracleQuantity, OracleTable
from nchodge.scalars import sign_of

logger = logging.getLogger(__name__)


def _require_rational(structure: AInfStructure) -> None:
    if structure.is_curved():
        raise ParameterOutOfRange("the oracle only handles uncurved structures")
    for inputs, outputs in structure.mu.items():
        for name, coeff in outputs.items():
            if not coeff.is_rational():
                raise ParameterOutOfRange(
                    f"the oracle works over the rationals; mu{inputs} -> {name} is {coeff}"
                )


def _mu(structure: AInfStructure, block: Word) -> dict[str, Fraction]:
    return {name: c.rational_value() for name, c in structure.value(block).items()}


def _check_cap(dimension: int) -> None:
    cap = get_settings().oracle_max_dimension
    if dimension > cap:
        raise TooLarge("oracle complex", dimension, cap)


def _dense_rank(rows: int, columns: list[dict[int, Fraction]]) -> int:
    if not rows or not columns:
        return 0
    matrix = Matrix.zeros(rows, len(columns))
    for j, column in enumerate(columns):
        for i, value in column.items():
            matrix[i, j] = Rational(value.numerator, value.denominator)
    return matrix.rank()


# =============================================================================
# Hochschild ranks from a hand-rolled differential
# =============================================================================


class NaiveHochschild:
    """Unnormalized Hochschild chains enumerated word by word."""

    def __init__(self, structure: AInfStructure, length_max: int):
        self.structure = structure
        self.length_max = length_max
        self.grading = structure.ring.grading

    def degree(self, word: Word) -> int:
        raw = len(word) - 1 - sum(self.structure.degree(a) for a in word)
        return self.grading.reduce(raw)

    def words(self, degree: int) -> list[Word]:
        structure = self.structure
        found = []
        for s in range(self.length_max + 1):
            for path in structure.paths(s + 1):
                closes = structure.generator(path[-1]).target == structure.generator(path[0]).source
                if closes and self.degree(path) == self.grading.reduce(degree):
                    found.append(path)
        return found

    def differential(self, word: Word) -> dict[Word, Fraction]:
        """
        ``b`` on one word.

        Blocks through ``x0`` are read off the rotation that brings the
        block's first letter to the front.
        """
        structure = self.structure
        shifts = [structure.shifted(a) for a in word]
        total = sum(shifts)
        s = len(word) - 1
        image: dict[Word, Fraction] = {}

        def add(w: Word, value: Fraction) -> None:
            image[w] = image.get(w, Fraction(0)) + value

        for i in range(1, s + 1):
            sign = sign_of(sum(shifts[:i]))
            for k in range(1, s - i + 2):
                for out, c in _mu(structure, word[i : i + k]).items():
                    add(word[:i] + (out,) + word[i + k :], sign * c)

        for r in range(s + 1):
            rotated = word[r:] + word[:r]
            head = sum(shifts[:r])
            sign = sign_of(head * (total - head))
            first = 1 if r == 0 else s - r + 2
            for k in range(first, s + 2):
                for out, c in _mu(structure, rotated[:k]).items():
                    add((out,) + rotated[k:], sign * c)
        return {w: v for w, v in image.items() if v}

    def boundary_rank(self, degree: int) -> int:
        source = self.words(degree)
        target = {w: i for i, w in enumerate(self.words(degree - 1))}
        columns = [
            {target[w]: v for w, v in self.differential(x).items() if w in target} for x in source
        ]
        return _dense_rank(len(target), columns)


def _hh_ranks(structure: AInfStructure, caps: OracleCaps) -> OracleTable:
    length_max = structure.ring.truncation.length_max if caps.length_max is None else caps.length_max
    naive = NaiveHochschild(structure, length_max)
    window = degree_window(structure, *caps.degrees)
    grading = structure.ring.grading
    needed = sorted({grading.reduce(n + e) for n in window for e in (-1, 0, 1)})
    dims = {n: len(naive.words(n)) for n in needed}
    dimension = sum(dims.values())
    _check_cap(dimension)
    boundary = {
        n: naive.boundary_rank(n) for n in {grading.reduce(m + e) for m in window for e in (0, 1)}
    }
    ranks = {
        n: dims[grading.reduce(n)] - boundary[grading.reduce(n)] - boundary[grading.reduce(n + 1)]
        for n in window
    }
    return OracleTable(OracleQuantity.HH_RANKS, caps, dimension, ranks=ranks)


def _hc_ranks(structure: AInfStructure, caps: OracleCaps) -> OracleTable:
    q = NegativeCyclicComplex(structure, caps.length_max, caps.u_max)
    window = degree_window(structure, *caps.degrees)
    grading = structure.ring.grading
    needed = sorted({grading.reduce(n + e) for n in window for e in (-1, 0, 1)})
    dims = {n: len(q.basis(n)) for n in needed}
    dimension = sum(dims.values())
    _check_cap(dimension)

    def rank_at(n: int) -> int:
        columns = [
            {i: c.rational_value() for i, c in column.items()}
            for column in q.differential_columns(n)
        ]
        return _dense_rank(len(q.basis(n - 1)), columns)

    differential = {n: rank_at(n) for n in {grading.reduce(m + e) for m in window for e in (0, 1)}}
    ranks = {
        n: dims[grading.reduce(n)]
        - differential[grading.reduce(n)]
        - differential[grading.reduce(n + 1)]
        for n in window
    }
    return OracleTable(OracleQuantity.HC_RANKS, caps, dimension, ranks=ranks)


# =============================================================================
# Mukai pairing on length-zero chains
# =============================================================================


def _mukai_gram(structure: AInfStructure, caps: OracleCaps) -> OracleTable:
    """
    ``<a[], b[]>`` for all endomorphism generators a, b.

    On length-zero words the pairing is a signed supertrace of
    ``c -> mu2(a, mu2(c, b))`` over ``hom(target(a), source(b))``.
    """
    loops = [g for obj in structure.objects for g in structure.endomorphisms(obj)]
    _check_cap(len(loops) ** 2)
    gram: list[list[Fraction]] = []
    for a in loops:
        row = []
        for b in loops:
            space = structure.hom(a.target, b.source)
            index = {g.name: i for i, g in enumerate(space)}
            matrix = Matrix.zeros(len(space), len(space))
            for e in space:
                for mid, c1 in _mu(structure, (e.name, b.name)).items():
                    for out, c2 in _mu(structure, (a.name, mid)).items():
                        if out in index:
                            value = c1 * c2
                            matrix[index[out], index[e.name]] += Rational(
                                value.numerator, value.denominator
                            )
            total = Fraction(0)
            for e in space:
                sign = sign_of((e.degree - 1) * b.degree + a.degree - 1)
                entry = matrix[index[e.name], index[e.name]]
                total += sign * Fraction(int(entry.p), int(entry.q))
            row.append(total)
        gram.append(row)
    return OracleTable(
        OracleQuantity.MUKAI_GRAM,
        caps,
        len(loops) ** 2,
        labels=[g.name for g in loops],
        gram=gram,
    )


def brute_force_oracle(
    structure: AInfStructure,
    quantity: OracleQuantity | str,
    caps: OracleCaps | None = None,
) -> OracleTable:
    """
    Recompute a quantity by dense, naive linear algebra.

    Args:
        structure: Uncurved category with rational structure constants
        quantity: ``hh_ranks``, ``hc_ranks`` or ``mukai_gram``
        caps: Degree window and truncation

    Raises:
        ParameterOutOfRange: On curved or non-rational structures
        TooLarge: If the complex exceeds ``oracle_max_dimension``
    """
    quantity = OracleQuantity(quantity)
    caps = caps or OracleCaps()
    _require_rational(structure)
    if quantity is OracleQuantity.HH_RANKS:
        table = _hh_ranks(structure, caps)
    elif quantity is OracleQuantity.HC_RANKS:
        table = _hc_ranks(structure, caps)
    else:
        table = _mukai_gram(structure, caps)
    logger.info("oracle %s: dimension %d", quantity.value, table.dimension)
    return table
