"""Data models for negative cyclic chains, pairings and their reports."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from nchodge.hochschild.models import ChainVector
from nchodge.scalars import BulkRingDescriptor, RingElement, format_element


class NegativeCyclicChain:
    """
    A chain ``sum_k u^k x_k`` of ``CC^nu[[u]] / u^{u_max + 1}``.

    Components above ``u_max`` are discarded on construction.
    """

    __slots__ = ("components", "u_max")

    def __init__(self, components: Mapping[int, ChainVector] | None = None, u_max: int = 0):
        self.u_max = u_max
        self.components: dict[int, ChainVector] = {
            k: x for k, x in (components or {}).items() if 0 <= k <= u_max and not x.is_zero()
        }

    @classmethod
    def from_chain(cls, x: ChainVector, u_max: int) -> NegativeCyclicChain:
        """The u-constant chain ``x``."""
        return cls({0: x}, u_max)

    def component(self, k: int) -> ChainVector:
        return self.components.get(k, ChainVector())

    @property
    def truncated(self) -> bool:
        return any(x.truncated for x in self.components.values())

    def is_zero(self) -> bool:
        return not self.components

    def multiply_u(self, power: int = 1) -> NegativeCyclicChain:
        return NegativeCyclicChain(
            {k + power: x for k, x in self.components.items()}, self.u_max
        )

    def __add__(self, other: NegativeCyclicChain) -> NegativeCyclicChain:
        merged = dict(self.components)
        for k, x in other.components.items():
            merged[k] = merged[k] + x if k in merged else x
        return NegativeCyclicChain(merged, max(self.u_max, other.u_max))

    def __neg__(self) -> NegativeCyclicChain:
        return NegativeCyclicChain({k: -x for k, x in self.components.items()}, self.u_max)

    def __sub__(self, other: NegativeCyclicChain) -> NegativeCyclicChain:
        return self + (-other)

    def scale(self, factor: RingElement) -> NegativeCyclicChain:
        return NegativeCyclicChain(
            {k: x.scale(factor) for k, x in self.components.items()}, self.u_max
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NegativeCyclicChain):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def to_dict(self) -> dict:
        return {
            "u_max": self.u_max,
            "components": {str(k): x.to_dict() for k, x in sorted(self.components.items())},
        }

    def __repr__(self) -> str:
        parts = [f"u^{k}·{x!r}" for k, x in sorted(self.components.items())]
        return f"NegativeCyclicChain({' + '.join(parts) or '0'})"


class PairingValue:
    """A polynomial ``sum_i c_i u^i`` with ``0 <= i <= u_max``."""

    __slots__ = ("ring", "coefficients", "u_max")

    def __init__(
        self,
        ring: BulkRingDescriptor,
        coefficients: Mapping[int, RingElement] | None = None,
        u_max: int = 0,
    ):
        self.ring = ring
        self.u_max = u_max
        self.coefficients: dict[int, RingElement] = {
            i: c for i, c in (coefficients or {}).items() if 0 <= i <= u_max and not c.is_zero()
        }

    def coefficient(self, i: int) -> RingElement:
        return self.coefficients.get(i, RingElement.zero(self.ring))

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: PairingValue) -> PairingValue:
        merged = dict(self.coefficients)
        for i, c in other.coefficients.items():
            merged[i] = merged[i] + c if i in merged else c
        return PairingValue(self.ring, merged, max(self.u_max, other.u_max))

    def __neg__(self) -> PairingValue:
        return PairingValue(self.ring, {i: -c for i, c in self.coefficients.items()}, self.u_max)

    def __sub__(self, other: PairingValue) -> PairingValue:
        return self + (-other)

    def __mul__(self, other: PairingValue) -> PairingValue:
        u_max = max(self.u_max, other.u_max)
        product: dict[int, RingElement] = {}
        for i, a in self.coefficients.items():
            for j, b in other.coefficients.items():
                if i + j > u_max:
                    continue
                term = a * b
                product[i + j] = product[i + j] + term if i + j in product else term
        return PairingValue(self.ring, product, u_max)

    def scale(self, factor: RingElement) -> PairingValue:
        return PairingValue(
            self.ring, {i: factor * c for i, c in self.coefficients.items()}, self.u_max
        )

    def sigma(self) -> PairingValue:
        """The substitution ``u -> -u``."""
        return PairingValue(
            self.ring,
            {i: c if i % 2 == 0 else -c for i, c in self.coefficients.items()},
            self.u_max,
        )

    @classmethod
    def constant(cls, value: RingElement, u_max: int = 0) -> PairingValue:
        return cls(value.ring, {0: value}, u_max)

    def multiply_u(self, power: int = 1, sign: int = 1) -> PairingValue:
        """``(sign * u)^power`` times this value."""
        factor = sign**power
        return PairingValue(
            self.ring,
            {i + power: c.scale(factor) for i, c in self.coefficients.items()},
            self.u_max,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairingValue):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def to_dict(self) -> dict:
        return {
            "u_max": self.u_max,
            "coefficients": {
                str(i): format_element(c) for i, c in sorted(self.coefficients.items())
            },
        }

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(
            f"({format_element(c)})u^{i}" for i, c in sorted(self.coefficients.items())
        )


@dataclass
class CyclicRankReport:
    """Ranks of truncated negative cyclic homology on a degree window."""

    ranks: dict[int, int]
    free_ranks: dict[int, int]
    torsion_ranks: dict[int, int | None]
    mod_u_ranks: dict[int, int]
    hochschild_ranks: dict[int, int]
    stable: dict[int, bool] = field(default_factory=dict)
    precision: str | None = None
    truncation: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def keyed(table: Mapping[int, object]) -> dict:
            return {str(n): v for n, v in sorted(table.items())}

        return {
            "ranks": keyed(self.ranks),
            "free_ranks": keyed(self.free_ranks),
            "torsion_ranks": keyed(self.torsion_ranks),
            "mod_u_ranks": keyed(self.mod_u_ranks),
            "hochschild_ranks": keyed(self.hochschild_ranks),
            "stable": keyed(self.stable),
            "precision": self.precision,
            "truncation": self.truncation,
        }


@dataclass
class LiftResult:
    """Outcome of lifting a Hochschild cycle to a ``b + uB`` cycle."""

    chain: NegativeCyclicChain
    obstructed_at: int | None = None

    @property
    def complete(self) -> bool:
        return self.obstructed_at is None

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "obstructed_at": self.obstructed_at,
            "chain": self.chain.to_dict(),
        }


@dataclass
class MukaiComponents:
    """Sector decomposition of the Mukai pairing."""

    vee_vee: RingElement
    vee_wedge: RingElement
    wedge_vee: RingElement
    wedge_wedge: RingElement

    @property
    def total(self) -> RingElement:
        return self.vee_vee + self.vee_wedge + self.wedge_vee + self.wedge_wedge

    def to_dict(self) -> dict:
        return {
            "vee_vee": format_element(self.vee_vee),
            "vee_wedge": format_element(self.vee_wedge),
            "wedge_vee": format_element(self.wedge_vee),
            "wedge_wedge": format_element(self.wedge_wedge),
            "total": format_element(self.total),
        }


@dataclass
class TracePairingReport:
    """Pairing ``(a, b) -> phi(mu2(a, b)[])`` on cohomology representatives."""

    labels: list[str]
    gram: list[list[RingElement]]
    rank: int
    dimension: int
    graded_symmetric: bool
    asymmetric_pairs: list[tuple[str, str]] = field(default_factory=list)
    precision: str | None = None

    @property
    def nondegenerate(self) -> bool:
        return self.dimension > 0 and self.rank == self.dimension

    def to_dict(self) -> dict:
        return {
            "labels": self.labels,
            "gram": [[format_element(c) for c in row] for row in self.gram],
            "rank": self.rank,
            "dimension": self.dimension,
            "nondegenerate": self.nondegenerate,
            "graded_symmetric": self.graded_symmetric,
            "asymmetric_pairs": [list(p) for p in self.asymmetric_pairs],
            "precision": self.precision,
        }
