"""Data models for the built-in example categories and the brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from nchodge.ainf.models import AInfStructure, BoundingCochainAssignment
from nchodge.cyclic.trace import Functional
from nchodge.hochschild.models import format_word
from nchodge.scalars import BulkRingDescriptor, RingElement, format_element


class ModelKind(str, Enum):
    """Built-in example categories."""

    FIELD = "field"
    DUAL_NUMBERS = "dual_numbers"
    EXTERIOR_ALGEBRA = "exterior_algebra"
    CLIFFORD_DEFORMATION = "clifford_deformation"
    CURVED_CLIFFORD = "curved_clifford"
    MATRIX_ALGEBRA = "matrix_algebra"
    RANDOM_DGA = "random_dga"


@dataclass(frozen=True)
class ModelSpec:
    """
    Parameters of a built-in model.

    Attributes:
        kind: Which model to build
        n: Number of generators (exterior, Clifford) or matrix size
        degrees: Degrees of the exterior generators; odd by default
        t_weights: Novikov weights (Clifford deformation, deformed dual numbers)
        seed: Seed of the random DGA
        dims: ``(p, q)`` sizes of the random DGA's two layers
        ring: Coefficient ring; a default with the configured truncation otherwise
    """

    kind: ModelKind
    n: int = 1
    degrees: tuple[int, ...] | None = None
    t_weights: tuple[Fraction, ...] | None = None
    seed: int = 0
    dims: tuple[int, int] = (2, 2)
    ring: BulkRingDescriptor | None = None

    @property
    def name(self) -> str:
        kind = ModelKind(self.kind)
        if kind in (
            ModelKind.EXTERIOR_ALGEBRA,
            ModelKind.MATRIX_ALGEBRA,
            ModelKind.CLIFFORD_DEFORMATION,
        ):
            return f"{kind.value}({self.n})"
        if kind is ModelKind.RANDOM_DGA:
            return f"{kind.value}(seed={self.seed}, dims={list(self.dims)})"
        if kind is ModelKind.DUAL_NUMBERS and self.t_weights:
            return f"{kind.value}(T^{self.t_weights[0]})"
        return kind.value

    def to_dict(self) -> dict:
        return {
            "kind": ModelKind(self.kind).value,
            "n": self.n,
            "degrees": None if self.degrees is None else list(self.degrees),
            "t_weights": None if self.t_weights is None else [str(w) for w in self.t_weights],
            "seed": self.seed,
            "dims": list(self.dims),
        }


@dataclass
class BuiltModel:
    """A model's structure with the optional data it ships."""

    spec: ModelSpec
    structure: AInfStructure
    bounding: BoundingCochainAssignment | None = None
    trace: Functional | None = None

    @property
    def name(self) -> str:
        return self.spec.name

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "structure": self.structure.to_dict(),
            "bounding_cochains": self.bounding.to_dict() if self.bounding else None,
            "trace": (
                {format_word(w): format_element(c) for w, c in sorted(self.trace.items())}
                if self.trace is not None
                else None
            ),
        }


class OracleQuantity(str, Enum):
    """Quantities the brute-force oracle recomputes."""

    HH_RANKS = "hh_ranks"
    HC_RANKS = "hc_ranks"
    MUKAI_GRAM = "mukai_gram"


@dataclass(frozen=True)
class OracleCaps:
    """Window and truncation the oracle works at."""

    degrees: tuple[int, int] = (0, 4)
    length_max: int | None = None
    u_max: int | None = None

    def to_dict(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "length_max": self.length_max,
            "u_max": self.u_max,
        }


@dataclass
class OracleTable:
    """
    Dense recomputation of one quantity.

    ``ranks`` is filled for rank quantities; ``labels`` and ``gram`` for the
    Mukai Gram matrix on length-zero chains.
    """

    quantity: OracleQuantity
    caps: OracleCaps
    dimension: int
    ranks: dict[int, int] = field(default_factory=dict)
    labels: list[str] = field(default_factory=list)
    gram: list[list[Fraction]] = field(default_factory=list)

    def gram_elements(self, ring: BulkRingDescriptor) -> list[list[RingElement]]:
        return [[RingElement.constant(ring, v) for v in row] for row in self.gram]

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity.value,
            "caps": self.caps.to_dict(),
            "dimension": self.dimension,
            "ranks": {str(n): r for n, r in sorted(self.ranks.items())},
            "labels": self.labels,
            "gram": [[str(v) for v in row] for row in self.gram],
        }
