"""Grading groups and Koszul signs."""

from collections.abc import Sequence
from enum import Enum

from nchodge.errors import ParameterOutOfRange


class Grading(str, Enum):
    """Grading group of a coefficient ring and everything built over it."""

    INTEGER = "integer"
    MOD2 = "mod2"

    def reduce(self, degree: int) -> int:
        """Reduce a degree into the grading group."""
        if self is Grading.MOD2:
            return degree % 2
        return degree

    def equal(self, a: int, b: int) -> bool:
        """Compare two degrees in the grading group."""
        return self.reduce(a - b) == 0


def parity(degree: int) -> int:
    """Parity of a degree; well defined in both gradings."""
    return degree % 2


def sign_of(exponent: int) -> int:
    """(-1)^exponent."""
    return -1 if exponent % 2 else 1


def koszul_sign(degrees: Sequence[int], permutation: Sequence[int]) -> int:
    """
    Koszul sign of reordering homogeneous symbols.

    The reordered sequence holds ``degrees[permutation[k]]`` at position ``k``.
    Every pair of symbols whose relative order is reversed contributes
    ``(-1)^(d_i * d_j)``.

    Args:
        degrees: Degrees of the symbols in their original order
        permutation: Source index for each output position

    Returns:
        +1 or -1

    Raises:
        ParameterOutOfRange: If permutation is not a bijection on the indices
    """
    n = len(degrees)
    if sorted(permutation) != list(range(n)):
        raise ParameterOutOfRange(f"{list(permutation)} is not a permutation of {n} symbols")

    odd = [parity(d) for d in degrees]
    exponent = 0
    for i in range(n):
        pi = permutation[i]
        if not odd[pi]:
            continue
        for j in range(i + 1, n):
            pj = permutation[j]
            if pi > pj and odd[pj]:
                exponent += 1
    return sign_of(exponent)


def rotation_sign(head: Sequence[int], tail: Sequence[int]) -> int:
    """Sign of moving the block ``tail`` in front of the block ``head``."""
    return sign_of(sum(head) * sum(tail))
