"""Negative cyclic homology at finite ``u``- and length-truncation.

The homology of ``CC^nu[[u]] / u^{N+1}`` is a module over ``k[u]/u^{N+1}``.
A free summand generated in degree ``n`` survives multiplication by
``u^N``, so the number of free generators in degree ``n`` is the rank of
``u^N: H_n -> H_{n-2N}``. Every other dimension is u-torsion.
"""

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import TypeVar

from nchodge.ainf.models import AInfStructure
from nchodge.config import get_settings
from nchodge.cyclic.complex import NegativeCyclicComplex
from nchodge.cyclic.models import CyclicRankReport, LiftResult, NegativeCyclicChain
from nchodge.hochschild.complex import HochschildComplex
from nchodge.hochschild.homology import HomologyCalculator, degree_window
from nchodge.hochschild.models import ChainVector
from nchodge.scalars import RingElement, linalg

logger = logging.getLogger(__name__)

T = TypeVar("T")
Column = dict[int, RingElement]


def _fan_out(fn: Callable[[int], T], degrees: Iterable[int]) -> dict[int, T]:
    wanted = sorted(set(degrees))
    threads = get_settings().threads
    if threads <= 1 or len(wanted) <= 1:
        return {n: fn(n) for n in wanted}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return dict(zip(wanted, pool.map(fn, wanted)))


class CyclicHomologyCalculator:
    """Ranks, free generators and mod-u images for one truncated complex."""

    def __init__(self, complex_: NegativeCyclicComplex):
        self.complex = complex_
        self.precision: Fraction | None = None

    def _note(self, result: linalg.RankResult) -> int:
        if result.precision is not None:
            self.precision = (
                result.precision if self.precision is None else min(self.precision, result.precision)
            )
        return result.rank

    def differential_rank(self, degree: int) -> int:
        q = self.complex
        return self._note(linalg.rank(q.differential_columns(degree), len(q.basis(degree - 1))))

    def cycles(self, degree: int) -> list[Column]:
        q = self.complex
        return linalg.kernel(q.ring, q.differential_columns(degree), len(q.basis(degree - 1)))

    def _top_images(self, degree: int, cycles: list[Column]) -> tuple[list[Column], list[Column], int]:
        """Boundaries in degree ``n - 2N`` and the ``u^N`` multiples of the cycles there."""
        q = self.complex
        n_max = q.u_max
        low = degree - 2 * n_max
        target = q.basis(low)
        boundaries = q.differential_columns(low + 1)
        source = q.basis(degree)
        images = []
        for z in cycles:
            x = q.from_coordinates(z, source)
            images.append(q.coordinates(x.multiply_u(n_max), target))
        return boundaries, images, len(target)

    def free_rank(self, degree: int) -> int:
        cycles = self.cycles(degree)
        if not cycles:
            return 0
        boundaries, images, n_rows = self._top_images(degree, cycles)
        base = self._note(linalg.rank(boundaries, n_rows))
        return self._note(linalg.rank(boundaries + images, n_rows)) - base

    def free_generators(self, degree: int) -> list[NegativeCyclicChain]:
        """Cycles in degree ``n`` whose ``u^N`` multiples are independent modulo boundaries."""
        q = self.complex
        cycles = self.cycles(degree)
        if not cycles:
            return []
        boundaries, images, n_rows = self._top_images(degree, cycles)
        picks = linalg.independent_columns(boundaries + images, n_rows)
        offset = len(boundaries)
        source = q.basis(degree)
        return [q.from_coordinates(cycles[j - offset], source) for j in picks if j >= offset]

    def mod_u_rank(self, degree: int, hochschild: HochschildComplex) -> int:
        """Rank of ``H_n(CC^-) -> HH^nu_n`` induced by ``x -> x_0``."""
        q = self.complex
        cycles = self.cycles(degree)
        if not cycles:
            return 0
        rows = hochschild.basis(degree)
        boundaries = hochschild.boundary_columns(degree + 1)
        source = q.basis(degree)
        images = [
            hochschild.coordinates(q.from_coordinates(z, source).component(0), rows)
            for z in cycles
        ]
        base = self._note(linalg.rank(boundaries, len(rows)))
        return self._note(linalg.rank(boundaries + images, len(rows))) - base

    def ranks(self, degrees: list[int]) -> dict[int, int]:
        grading = self.complex.ring.grading
        needed = {grading.reduce(n) for n in degrees} | {grading.reduce(n + 1) for n in degrees}
        differential = _fan_out(self.differential_rank, needed)
        return {
            n: len(self.complex.basis(n))
            - differential[grading.reduce(n)]
            - differential[grading.reduce(n + 1)]
            for n in degrees
        }


def hc_minus_ranks(
    structure: AInfStructure,
    degrees: tuple[int, int] = (0, 4),
    length_max: int | None = None,
    u_max: int | None = None,
) -> CyclicRankReport:
    """
    Ranks of truncated negative cyclic homology on a degree window.

    Reports total ranks, the number of free ``k[u]``-generators per degree,
    the u-torsion dimension left over, the rank of the mod-u map to
    non-unital Hochschild homology and the Hochschild ranks themselves.

    Raises:
        PrecisionExhausted: If elimination loses precision below the floor
        TooLarge: If a chain group exceeds the dimension cap
    """
    q = NegativeCyclicComplex(structure, length_max, u_max)
    grading = structure.ring.grading
    window = degree_window(structure, *degrees)
    calculator = CyclicHomologyCalculator(q)
    ranks = calculator.ranks(window)

    reach = {grading.reduce(n + 2 * i) for n in window for i in range(q.u_max + 1)}
    free = _fan_out(calculator.free_rank, reach)
    torsion: dict[int, int | None] = {}
    for n in window:
        carried = sum(free[grading.reduce(n + 2 * i)] for i in range(q.u_max + 1))
        torsion[n] = ranks[n] - carried

    hochschild = HochschildComplex(structure, nonunital=True, length_max=q.length_max)
    mod_u = {n: calculator.mod_u_rank(n, hochschild) for n in window}
    hh_ranks, _, _, _ = HomologyCalculator(hochschild).ranks(window)

    stable = {n: False for n in window}
    if q.length_max >= 2:
        previous = CyclicHomologyCalculator(q.with_caps(q.length_max - 2)).ranks(window)
        stable = {n: previous[n] == ranks[n] for n in window}
    unstable = [n for n, ok in stable.items() if not ok]
    if unstable:
        logger.warning(
            "negative cyclic ranks not stable at length_max=%d in degrees %s",
            q.length_max,
            unstable,
        )

    precision = calculator.precision
    return CyclicRankReport(
        ranks=ranks,
        free_ranks={n: free[grading.reduce(n)] for n in window},
        torsion_ranks=torsion,
        mod_u_ranks=mod_u,
        hochschild_ranks=hh_ranks,
        stable=stable,
        precision=None if precision is None else str(precision),
        truncation={
            **structure.ring.truncation.to_dict(),
            "length_max": q.length_max,
            "u_max": q.u_max,
        },
    )


def free_generators(
    complex_: NegativeCyclicComplex, degree: int
) -> list[NegativeCyclicChain]:
    """``b + uB`` cycles of one degree spanning the free part of the truncated homology."""
    return CyclicHomologyCalculator(complex_).free_generators(degree)


def lift_to_negative_cyclic(complex_: NegativeCyclicComplex, x: ChainVector) -> LiftResult:
    """
    Extend a Hochschild cycle ``x_0`` to ``x_0 + u x_1 + ...`` with ``(b + uB) = 0``.

    Each step solves ``b x_k = -B x_{k-1}`` with ``x_k`` of Hochschild degree
    ``n + 2k`` and at most ``length_max + k`` bar entries; the first ``k``
    without a solution is reported as the obstruction order.
    """
    hochschild = complex_.hochschild
    if x.is_zero():
        return LiftResult(NegativeCyclicChain({}, complex_.u_max))
    degrees = {hochschild.degree(w) for w in x.terms}
    if len(degrees) != 1 or not hochschild.b(x).is_zero():
        return LiftResult(NegativeCyclicChain({0: x}, complex_.u_max), obstructed_at=0)
    degree = degrees.pop()

    components = {0: x}
    for k in range(1, complex_.u_max + 1):
        unknowns = complex_.component_basis(k, degree)
        rows = hochschild.basis(degree + 2 * k - 1)
        row_index = {w: i for i, w in enumerate(rows)}
        target_chain = -hochschild.connes_b(components[k - 1])
        if any(w not in row_index for w in target_chain.terms):
            return LiftResult(NegativeCyclicChain(components, complex_.u_max), obstructed_at=k)
        target = {row_index[w]: c for w, c in target_chain.terms.items()}
        one = RingElement.one(complex_.ring)
        columns = [
            hochschild.coordinates(hochschild.b(ChainVector.word(w, one)), rows) for w in unknowns
        ]
        solution = linalg.solve(complex_.ring, columns, len(rows), target)
        if solution is None:
            logger.info("lift obstructed at u^%d", k)
            return LiftResult(NegativeCyclicChain(components, complex_.u_max), obstructed_at=k)
        components[k] = ChainVector({unknowns[j]: c for j, c in solution.items()})
    return LiftResult(NegativeCyclicChain(components, complex_.u_max))
