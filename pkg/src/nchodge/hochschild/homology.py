"""Homology of truncated Hochschild complexes.

Ranks come from ``dim C_n - rank b_n - rank b_{n+1}`` with elimination
over the Novikov field. Truncation at ``length_max`` is only a finite
stage of the completed complex, so every rank is recomputed at
``length_max - 2`` and degrees whose rank moved are flagged unstable.
"""

import logging
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from nchodge.ainf.models import AInfStructure
from nchodge.config import get_settings
from nchodge.hochschild.complex import HochschildComplex
from nchodge.hochschild.models import (
    ChainVector,
    ComparisonReport,
    ComplexKind,
    HomologyBasis,
    HomologyReport,
)
from nchodge.scalars import Grading, RingElement, linalg

logger = logging.getLogger(__name__)


def degree_window(structure: AInfStructure, low: int, high: int) -> list[int]:
    """Degrees to compute; a mod-2 grading only has degrees 0 and 1."""
    if structure.ring.grading is Grading.MOD2:
        return [0, 1]
    return list(range(low, high + 1))


class HomologyCalculator:
    """
    Computes Hochschild ranks on a degree window.

    Boundary ranks of distinct degrees are independent eliminations and are
    spread over ``settings.threads`` workers.
    """

    def __init__(self, complex_: HochschildComplex, threads: int | None = None):
        self.complex = complex_
        self.threads = threads or get_settings().threads

    def _boundary_rank(self, degree: int) -> tuple[int, linalg.RankResult]:
        complex_ = self.complex
        columns = complex_.boundary_columns(degree)
        result = linalg.rank(columns, len(complex_.basis(degree - 1)))
        logger.debug(
            "%s: rank b_%d = %d (%d columns)",
            complex_.kind.value,
            degree,
            result.rank,
            len(columns),
        )
        return degree, result

    def _boundary_ranks(self, degrees: Iterable[int]) -> dict[int, linalg.RankResult]:
        wanted = sorted(set(degrees))
        if self.threads <= 1 or len(wanted) <= 1:
            return dict(self._boundary_rank(n) for n in wanted)
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return dict(pool.map(self._boundary_rank, wanted))

    def ranks(
        self, degrees: list[int]
    ) -> tuple[dict[int, int], dict[int, int], dict[int, int], Fraction | None]:
        """Homology ranks, chain dimensions and boundary ranks per degree."""
        grading = self.complex.ring.grading
        needed = set()
        for n in degrees:
            needed.add(grading.reduce(n))
            needed.add(grading.reduce(n + 1))
        boundary = self._boundary_ranks(needed)
        precision: Fraction | None = None
        for result in boundary.values():
            if result.precision is not None:
                precision = result.precision if precision is None else min(precision, result.precision)
        ranks: dict[int, int] = {}
        dims: dict[int, int] = {}
        for n in degrees:
            dim = len(self.complex.basis(n))
            dims[n] = dim
            ranks[n] = (
                dim - boundary[grading.reduce(n)].rank - boundary[grading.reduce(n + 1)].rank
            )
        return ranks, dims, {n: r.rank for n, r in boundary.items()}, precision


def homology_ranks(
    structure: AInfStructure,
    kind: ComplexKind | str = ComplexKind.HOCHSCHILD,
    degrees: tuple[int, int] = (0, 4),
    length_max: int | None = None,
) -> HomologyReport:
    """
    Ranks of HH_* (or of the non-unital complex) on a degree window.

    Args:
        structure: The category
        kind: ``hochschild`` or ``nonunital``
        degrees: Inclusive window ``(low, high)``
        length_max: Length cap; defaults to the ring's truncation policy

    Returns:
        Ranks with a per-degree stability flag (unchanged at ``length_max - 2``)

    Raises:
        PrecisionExhausted: If elimination loses precision below the floor
        TooLarge: If a chain group exceeds the dimension cap
    """
    kind = ComplexKind(kind)
    nonunital = kind is ComplexKind.NONUNITAL
    complex_ = HochschildComplex(structure, nonunital=nonunital, length_max=length_max)
    window = degree_window(structure, *degrees)
    ranks, dims, boundary, precision = HomologyCalculator(complex_).ranks(window)

    stable: dict[int, bool] = {n: False for n in window}
    if complex_.length_max >= 2:
        shorter = complex_.with_length_max(complex_.length_max - 2)
        previous, _, _, _ = HomologyCalculator(shorter).ranks(window)
        stable = {n: previous[n] == ranks[n] for n in window}
    unstable = [n for n, ok in stable.items() if not ok]
    if unstable:
        logger.warning(
            "%s ranks not stable at length_max=%d in degrees %s",
            kind.value,
            complex_.length_max,
            unstable,
        )

    return HomologyReport(
        complex_kind=kind.value,
        ranks=ranks,
        chain_dimensions=dims,
        boundary_ranks=boundary,
        stable=stable,
        length_max=complex_.length_max,
        precision=None if precision is None else str(precision),
        truncation={
            **structure.ring.truncation.to_dict(),
            "length_max": complex_.length_max,
        },
    )


def nonunital_comparison(
    structure: AInfStructure,
    degrees: tuple[int, int] = (0, 4),
    length_max: int | None = None,
) -> ComparisonReport:
    """
    Compare ranks of ``CC(C)`` and ``CC^nu(C)`` on the stable part of a window.

    Degrees unstable in either computation are not compared.
    """
    if not structure.is_strictly_unital():
        return ComparisonReport(
            applicable=False, agree=True, reason="not applicable: no declared strict units"
        )
    plain = homology_ranks(structure, ComplexKind.HOCHSCHILD, degrees, length_max)
    nonunital = homology_ranks(structure, ComplexKind.NONUNITAL, degrees, length_max)
    disagreeing = [
        n
        for n in plain.ranks
        if plain.stable.get(n) and nonunital.stable.get(n) and plain.ranks[n] != nonunital.ranks[n]
    ]
    return ComparisonReport(
        applicable=True,
        agree=not disagreeing,
        hochschild=plain,
        nonunital=nonunital,
        disagreeing_degrees=disagreeing,
    )


def homology_representatives(complex_: HochschildComplex, degree: int) -> HomologyBasis:
    """
    Cycles whose classes form a basis of homology in one degree.

    Cycles are taken from the kernel of ``b``; a greedy pass over
    ``[boundaries | cycles]`` keeps the cycles independent of the
    boundaries and of each other.
    """
    ring = complex_.ring
    basis = complex_.basis(degree)
    n_rows = len(basis)
    cycles = linalg.kernel(ring, complex_.boundary_columns(degree), len(complex_.basis(degree - 1)))
    incoming = complex_.boundary_columns(degree + 1)
    picks = linalg.independent_columns(incoming + cycles, n_rows)
    offset = len(incoming)
    representatives = [
        complex_.from_coordinates(cycles[j - offset], basis) for j in picks if j >= offset
    ]
    logger.debug(
        "degree %d: %d cycles, %d homology representatives",
        degree,
        len(cycles),
        len(representatives),
    )
    return HomologyBasis(
        ring=ring,
        degree=degree,
        basis=basis,
        representatives=representatives,
        boundaries=incoming,
    )


def solve_mod_boundaries(
    homology: HomologyBasis, x: ChainVector
) -> list[RingElement] | None:
    """
    Coordinates of ``x`` in the homology basis, modulo boundaries.

    Returns:
        One coefficient per representative, or None if ``x`` is not a
        combination of representatives and boundaries (in particular if it
        has words outside the degree's basis)
    """
    index = homology.index()
    if any(w not in index for w in x.terms):
        return None
    ring = homology.ring
    reps = [{index[w]: c for w, c in r.terms.items()} for r in homology.representatives]
    target = {index[w]: c for w, c in x.terms.items()}
    solution = linalg.solve(ring, reps + homology.boundaries, len(homology.basis), target)
    if solution is None:
        return None
    zero = RingElement.zero(ring)
    return [solution.get(j, zero) for j in range(len(reps))]


def is_boundary(homology: HomologyBasis, x: ChainVector) -> bool:
    """True if ``x`` lies in the image of ``b`` (within the degree's basis)."""
    index = homology.index()
    if any(w not in index for w in x.terms):
        return False
    target = {index[w]: c for w, c in x.terms.items()}
    return linalg.in_span(homology.boundaries, len(homology.basis), target)
