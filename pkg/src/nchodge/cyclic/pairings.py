"""Supertrace, the chain-level Mukai pairing and the higher residue pairing.

For cyclic words ``alpha = c0[c1|...|cs]`` and ``beta = d0[d1|...|dt]`` the
Mukai pairing sums, over every rotation of each word and every split of
the rotated words into ``P·Q`` (``P`` containing ``c0``) and ``R·S``
(``R`` containing ``d0``), the supertrace of

    c  ->  mu(P, mu(Q, c, R), S)

on the hom space where ``c`` must live. Summands whose inputs do not
compose contribute zero.
"""

import logging
from collections.abc import Sequence

from nchodge.ainf.models import AInfStructure
from nchodge.cyclic.models import MukaiComponents, NegativeCyclicChain, PairingValue
from nchodge.hochschild.complex import HochschildComplex
from nchodge.hochschild.models import ChainVector, Sector, Word
from nchodge.scalars import RingElement, sign_of, sum_elements

logger = logging.getLogger(__name__)


def supertrace(matrix: Sequence[Sequence[RingElement]], degrees: Sequence[int]) -> RingElement:
    """
    ``sum_e (-1)^{|e|} f_ee`` for a square matrix on a graded basis.

    ``matrix[i][j]`` is the coefficient of basis element ``i`` in ``f(e_j)``.

    Raises:
        ValueError: If the matrix is not square or the degrees do not match
    """
    n = len(degrees)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("supertrace needs a square matrix matching the graded basis")
    if n == 0:
        raise ValueError("supertrace of an empty matrix has no ring")
    ring = matrix[0][0].ring
    return sum_elements(ring, (matrix[i][i].scale(sign_of(degrees[i])) for i in range(n)))


def _rotations(structure: AInfStructure, word: Word) -> list[tuple[Word, int, int]]:
    """``(rotated word, sign, position of the original x0)`` for every rotation."""
    shifts = [structure.shifted(a) for a in word]
    total = sum(shifts)
    s = len(word) - 1
    found = []
    head = 0
    for k in range(s + 1):
        head += shifts[k]
        rotated = word[k + 1 :] + word[: k + 1]
        found.append((rotated, sign_of(head * (total - head)), s - k))
    return found


class MukaiPairing:
    """
    Chain-level Mukai pairing on the chains of a Hochschild complex.

    The structure maps are those of the complex's internal category, so
    wedge words pair through the adjoined units.
    """

    def __init__(self, complex_: HochschildComplex):
        self.complex = complex_
        self.structure = complex_.structure
        self.ring = complex_.ring

    def _pair_words(self, alpha: Word, beta: Word) -> RingElement:
        structure = self.structure
        shifted = structure.shifted
        total = RingElement.zero(self.ring)
        for a_rot, a_sign, a_start in _rotations(structure, alpha):
            # P = a_rot[:cut] must contain x0 at a_start
            for cut in range(a_start + 1, len(a_rot) + 1):
                p, q = a_rot[:cut], a_rot[cut:]
                p_shift = sum(shifted(a) for a in p)
                x_obj = structure.generator(a_rot[-1]).target
                for b_rot, b_sign, b_start in _rotations(structure, beta):
                    y_obj = structure.generator(b_rot[0]).source
                    for cut_b in range(b_start + 1, len(b_rot) + 1):
                        r, s_ = b_rot[:cut_b], b_rot[cut_b:]
                        rs_shift = sum(shifted(a) for a in b_rot)
                        for e in structure.hom(x_obj, y_obj):
                            inner = structure.value(q + (e.name,) + r)
                            if not inner:
                                continue
                            diagonal = RingElement.zero(self.ring)
                            for name, coeff in inner.items():
                                outer = structure.value(p + (name,) + s_)
                                if e.name in outer:
                                    diagonal = diagonal + coeff * outer[e.name]
                            if diagonal.is_zero():
                                continue
                            exponent = (e.degree - 1) * (rs_shift + 1) + p_shift
                            total = total + diagonal.scale(a_sign * b_sign * sign_of(exponent))
        return total

    def pair(self, alpha: ChainVector, beta: ChainVector) -> RingElement:
        """Bilinear extension over the terms of both chains."""
        total = RingElement.zero(self.ring)
        for a, ca in alpha.terms.items():
            for b, cb in beta.terms.items():
                value = self._pair_words(a, b)
                if not value.is_zero():
                    total = total + ca * cb * value
        return total

    def components(self, alpha: ChainVector, beta: ChainVector) -> MukaiComponents:
        """The pairing split by the sectors of the two arguments."""
        parts = {}
        for sa in Sector:
            for sb in Sector:
                parts[(sa, sb)] = self.pair(alpha.sector(sa), beta.sector(sb))
        return MukaiComponents(
            vee_vee=parts[(Sector.VEE, Sector.VEE)],
            vee_wedge=parts[(Sector.VEE, Sector.WEDGE)],
            wedge_vee=parts[(Sector.WEDGE, Sector.VEE)],
            wedge_wedge=parts[(Sector.WEDGE, Sector.WEDGE)],
        )


def mukai_pairing(complex_: HochschildComplex, alpha: ChainVector, beta: ChainVector) -> RingElement:
    """``<alpha, beta>_Muk`` on chains of the complex."""
    return MukaiPairing(complex_).pair(alpha, beta)


def mukai_components(
    complex_: HochschildComplex, alpha: ChainVector, beta: ChainVector
) -> MukaiComponents:
    """Sector components of ``<alpha, beta>_Muk``."""
    return MukaiPairing(complex_).components(alpha, beta)


def higher_residue_pairing(
    complex_: HochschildComplex, alpha: NegativeCyclicChain, beta: NegativeCyclicChain
) -> PairingValue:
    """
    u-sesquilinear extension ``sum_{i,j} u^i (-u)^j <alpha_i, beta_j>_Muk``.

    Powers above ``u_max`` of the arguments are discarded.
    """
    u_max = max(alpha.u_max, beta.u_max)
    pairing = MukaiPairing(complex_)
    coefficients: dict[int, RingElement] = {}
    for i, a in alpha.components.items():
        for j, b in beta.components.items():
            if i + j > u_max:
                continue
            value = pairing.pair(a, b)
            if value.is_zero():
                continue
            value = value.scale(sign_of(j))
            coefficients[i + j] = coefficients[i + j] + value if i + j in coefficients else value
    return PairingValue(complex_.ring, coefficients, u_max)
