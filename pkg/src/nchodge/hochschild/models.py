"""Data models for Hochschild chains and homology reports."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from nchodge.ainf.models import CochainVector, is_unit_plus
from nchodge.scalars import BulkRingDescriptor, RingElement, format_element

# A cyclic word (x0, x1, ..., xs), written x0[x1|...|xs]
Word = tuple[str, ...]


class Sector(str, Enum):
    """Summand of the non-unital complex a word belongs to."""

    VEE = "vee"
    WEDGE = "wedge"


class ComplexKind(str, Enum):
    """Which Hochschild complex to build."""

    HOCHSCHILD = "hochschild"
    NONUNITAL = "nonunital"


def sector_of(word: Word) -> Sector:
    return Sector.WEDGE if word and is_unit_plus(word[0]) else Sector.VEE


def format_word(word: Word) -> str:
    """``x0[x1|...|xs]``; wedge words print their leading unit as ``e+``."""
    if not word:
        return "[]"
    head = "e+" if is_unit_plus(word[0]) else word[0]
    return f"{head}[{'|'.join(word[1:])}]"


class ChainVector:
    """
    A finite linear combination of Hochschild words.

    ``truncated`` records that some term was dropped because it exceeded
    the length cap while this vector was produced.
    """

    __slots__ = ("terms", "truncated")

    def __init__(self, terms: Mapping[Word, RingElement] | None = None, truncated: bool = False):
        self.terms: dict[Word, RingElement] = {
            tuple(w): c for w, c in (terms or {}).items() if not c.is_zero()
        }
        self.truncated = truncated

    @classmethod
    def word(cls, word: Iterable[str], coeff: RingElement) -> ChainVector:
        return cls({tuple(word): coeff})

    @classmethod
    def zero(cls) -> ChainVector:
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> RingElement | None:
        return self.terms.get(word)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=lambda w: (len(w), w))

    def max_length(self) -> int:
        """Largest number of bar entries ``s`` among the terms."""
        return max((len(w) - 1 for w in self.terms), default=0)

    def sector(self, sector: Sector) -> ChainVector:
        return ChainVector(
            {w: c for w, c in self.terms.items() if sector_of(w) == sector}, self.truncated
        )

    def __add__(self, other: ChainVector) -> ChainVector:
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged[w] + c if w in merged else c
        return ChainVector(merged, self.truncated or other.truncated)

    def __neg__(self) -> ChainVector:
        return ChainVector({w: -c for w, c in self.terms.items()}, self.truncated)

    def __sub__(self, other: ChainVector) -> ChainVector:
        return self + (-other)

    def scale(self, factor: RingElement) -> ChainVector:
        return ChainVector({w: factor * c for w, c in self.terms.items()}, self.truncated)

    def scale_int(self, factor: int) -> ChainVector:
        return ChainVector({w: c.scale(factor) for w, c in self.terms.items()}, self.truncated)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"word": format_word(w), "coeff": format_element(self.terms[w])}
                for w in self.words()
            ],
            "truncated": self.truncated,
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "ChainVector(0)"
        body = " + ".join(f"({format_element(self.terms[w])}){format_word(w)}" for w in self.words())
        return f"ChainVector({body})"


@dataclass
class HomologyReport:
    """Ranks of a Hochschild complex on a degree window."""

    complex_kind: str
    ranks: dict[int, int]
    chain_dimensions: dict[int, int]
    boundary_ranks: dict[int, int]
    stable: dict[int, bool] = field(default_factory=dict)
    length_max: int = 0
    precision: str | None = None
    truncation: dict = field(default_factory=dict)

    @property
    def all_stable(self) -> bool:
        return all(self.stable.values())

    def to_dict(self) -> dict:
        return {
            "complex": self.complex_kind,
            "ranks": {str(n): r for n, r in sorted(self.ranks.items())},
            "chain_dimensions": {str(n): d for n, d in sorted(self.chain_dimensions.items())},
            "boundary_ranks": {str(n): r for n, r in sorted(self.boundary_ranks.items())},
            "stable": {str(n): s for n, s in sorted(self.stable.items())},
            "all_stable": self.all_stable,
            "length_max": self.length_max,
            "precision": self.precision,
            "truncation": self.truncation,
        }


@dataclass
class ComparisonReport:
    """Unital versus non-unital Hochschild ranks."""

    applicable: bool
    agree: bool
    reason: str | None = None
    hochschild: HomologyReport | None = None
    nonunital: HomologyReport | None = None
    disagreeing_degrees: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "agree": self.agree,
            "reason": self.reason,
            "hochschild": self.hochschild.to_dict() if self.hochschild else None,
            "nonunital": self.nonunital.to_dict() if self.nonunital else None,
            "disagreeing_degrees": self.disagreeing_degrees,
        }


@dataclass
class HomologyBasis:
    """
    Cycle representatives of a homology group.

    ``representatives`` project to a basis of homology; ``boundaries``
    span the image of the incoming differential, both written as columns
    over ``basis``.
    """

    ring: BulkRingDescriptor
    degree: int
    basis: list[Word]
    representatives: list[ChainVector]
    boundaries: list[dict[int, RingElement]]

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.basis)}

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "rank": self.rank,
            "representatives": [r.to_dict() for r in self.representatives],
        }


@dataclass
class DeformationReport:
    """First-order deformation class of a one-parameter family."""

    cochain: CochainVector
    closed: bool
    null_homologous: bool
    residual: CochainVector = field(default_factory=CochainVector)
    arity_bound: int = 0

    def to_dict(self) -> dict:
        return {
            "cochain": self.cochain.to_dict(),
            "closed": self.closed,
            "null_homologous": self.null_homologous,
            "residual": self.residual.to_dict(),
            "arity_bound": self.arity_bound,
        }
