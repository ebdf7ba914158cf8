"""Cap product of Hochschild cochains with Hochschild chains.

For a cochain ``phi`` and a word ``x0[x1|...|xs]`` the cap product first
applies ``phi`` to a consecutive block of ``x1..xs`` (or inserts it in a gap
when ``phi`` has arity zero), then contracts the result with ``mu`` on every
block that starts at or before ``phi``'s output, runs to the end of the word
and wraps around through ``x0``. The output of that contraction becomes the
new leading entry.
"""

from nchodge.ainf.models import CochainVector
from nchodge.hochschild.complex import HochschildComplex, Terms, add_term
from nchodge.hochschild.models import ChainVector, Word
from nchodge.scalars import RingElement, sign_of


def _insertions(
    complex_: HochschildComplex, phi: CochainVector, word: Word
) -> list[tuple[Word, int, RingElement]]:
    """Every word obtained by applying phi inside ``x1..xs``, with its position."""
    structure = complex_.structure
    shifts = [complex_.shifted(a) for a in word]
    s = len(word) - 1
    found: list[tuple[Word, int, RingElement]] = []
    prefix = 0
    for p in range(1, s + 2):
        prefix += shifts[p - 1]
        sign = sign_of(phi.parity * prefix)
        obj = structure.generator(word[p - 1]).target
        for out, coeff in phi.value(()).items():
            if structure.generator(out).source == obj:
                found.append((word[:p] + (out,) + word[p:], p, coeff.scale(sign)))
        for k in range(1, min(phi.max_arity(), s - p + 1) + 1):
            for out, coeff in phi.value(word[p : p + k]).items():
                found.append((word[:p] + (out,) + word[p + k :], p, coeff.scale(sign)))
    return found


def _contract_through_start(complex_: HochschildComplex, y: Word, position: int) -> Terms:
    """``mu`` on blocks ``(y_i..y_t, y_0..y_j)`` with ``1 <= i <= position``."""
    structure = complex_.structure
    shifts = [complex_.shifted(a) for a in y]
    total = sum(shifts)
    terms: Terms = {}
    head_shift = 0
    for i in range(1, position + 1):
        head_shift += shifts[i - 1]
        sign = sign_of(head_shift * (total - head_shift))
        tail = y[i:]
        for j in range(i):
            for out, coeff in structure.value(tail + y[: j + 1]).items():
                add_term(terms, (out,) + y[j + 1 : i], coeff.scale(sign))
    return terms


def cap_product(complex_: HochschildComplex, phi: CochainVector, x: ChainVector) -> ChainVector:
    """
    ``phi ∩ x`` on the given complex.

    Args:
        complex_: Complex the chain lives in (supplies mu and the degrees)
        phi: Hochschild cochain of the underlying category
        x: Chain

    Returns:
        The capped chain, normalized for the complex
    """
    terms: Terms = {}
    for word, coeff in x.terms.items():
        for y, position, weight in _insertions(complex_, phi, word):
            for w, c in _contract_through_start(complex_, y, position).items():
                if complex_.is_normal(w):
                    add_term(terms, w, coeff * weight * c)
    return ChainVector(terms, x.truncated)
