"""Data models for finite curved A-infinity categories."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum

from nchodge.errors import DegreeMismatch, NonconvergentSum, NotComposable, UnknownSymbol
from nchodge.scalars import BulkRingDescriptor, RingElement, format_element, parity

# A linear combination of generators of one hom space
Element = dict[str, RingElement]
# Structure maps / cochains: input path (left to right) -> output combination
CochainEntries = dict[tuple[str, ...], Element]


@dataclass(frozen=True)
class Generator:
    """Basis element of hom(source, target)."""

    name: str
    source: str
    target: str
    degree: int

    @property
    def shifted(self) -> int:
        """Degree in the shifted convention, ``|a| - 1``."""
        return self.degree - 1

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "source": self.source,
            "target": self.target,
            "degree": self.degree,
        }


def unit_plus_name(obj: str) -> str:
    """Name of the formal unit adjoined to ``obj`` by unitalization."""
    return f"e+:{obj}"


def is_unit_plus(name: str) -> bool:
    return name.startswith("e+:")


def element_add(a: Mapping[str, RingElement], b: Mapping[str, RingElement]) -> Element:
    result = dict(a)
    for name, coeff in b.items():
        result[name] = result[name] + coeff if name in result else coeff
    return {k: v for k, v in result.items() if not v.is_zero()}


def element_scale(a: Mapping[str, RingElement], factor: RingElement) -> Element:
    result = {k: factor * v for k, v in a.items()}
    return {k: v for k, v in result.items() if not v.is_zero()}


def element_to_dict(a: Mapping[str, RingElement]) -> dict[str, str]:
    return {name: format_element(coeff) for name, coeff in sorted(a.items())}


def entries_to_list(entries: CochainEntries) -> list[dict]:
    rows = []
    for inputs in sorted(entries, key=lambda k: (len(k), k)):
        for output, coeff in sorted(entries[inputs].items()):
            rows.append(
                {
                    "arity": len(inputs),
                    "inputs": list(inputs),
                    "output": output,
                    "coeff": format_element(coeff),
                }
            )
    return rows


class AInfStructure:
    """
    A finite curved A-infinity category.

    Inputs of a structure map are written in path order: ``(a1, ..., as)``
    is composable when ``target(a_i) == source(a_{i+1})`` and the output
    lies in ``hom(source(a1), target(as))``. The entry with empty inputs is
    the curvature; its outputs are endomorphisms of their own objects.

    A coefficient ``c`` on output ``g`` for inputs ``a`` must be homogeneous
    of even degree with ``deg(c) + |g| = sum|a_i| + 2 - s``.

    Attributes:
        ring: Coefficient ring
        objects: Object names
        generators: Hom-space bases
        mu: Structure constants
        units: Optional strict unit per object
        arity_cap: Largest arity stored; structure maps above it vanish
        truncated: True when arities above the cap were cut off rather than zero
    """

    def __init__(
        self,
        ring: BulkRingDescriptor,
        objects: Iterable[str],
        generators: Iterable[Generator],
        mu: Mapping[tuple[str, ...], Mapping[str, RingElement]],
        units: Mapping[str, str] | None = None,
        arity_cap: int | None = None,
        truncated: bool = False,
        validate: bool = True,
    ):
        self.ring = ring
        self.objects: tuple[str, ...] = tuple(objects)
        self.generators: tuple[Generator, ...] = tuple(generators)
        self._by_name: dict[str, Generator] = {g.name: g for g in self.generators}
        if len(self._by_name) != len(self.generators):
            raise UnknownSymbol("generator names must be unique")
        self._by_source: dict[str, list[Generator]] = {o: [] for o in self.objects}
        for g in self.generators:
            if g.source not in self._by_source or g.target not in self._by_source:
                raise UnknownSymbol(f"generator '{g.name}' uses an undeclared object")
            self._by_source[g.source].append(g)

        cleaned: CochainEntries = {}
        for inputs, outputs in mu.items():
            kept = {name: c for name, c in outputs.items() if not c.is_zero()}
            if kept:
                cleaned[tuple(inputs)] = kept
        self.mu: CochainEntries = cleaned
        self.units: dict[str, str] = dict(units or {})
        max_arity = max((len(k) for k in self.mu), default=0)
        self.arity_cap = max(arity_cap or 0, max_arity)
        self.truncated = truncated
        if validate:
            self.validate()

    # -------------------------------------------------------------------------
    # Lookups
    # -------------------------------------------------------------------------

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbol(f"unknown generator '{name}'") from None

    def has_generator(self, name: str) -> bool:
        return name in self._by_name

    def degree(self, name: str) -> int:
        return self._by_name[name].degree

    def shifted(self, name: str) -> int:
        """Parity-relevant shifted degree ``|a| - 1``."""
        return self._by_name[name].degree - 1

    def hom(self, source: str, target: str) -> list[Generator]:
        return [g for g in self._by_source.get(source, []) if g.target == target]

    def starting_at(self, obj: str) -> list[Generator]:
        return self._by_source.get(obj, [])

    def endomorphisms(self, obj: str) -> list[Generator]:
        return self.hom(obj, obj)

    def value(self, inputs: tuple[str, ...]) -> Element:
        """Structure map on a tuple of generators (empty when absent)."""
        return self.mu.get(inputs, {})

    def is_composable(self, inputs: tuple[str, ...]) -> bool:
        for left, right in zip(inputs, inputs[1:]):
            if self._by_name[left].target != self._by_name[right].source:
                return False
        return True

    def paths(self, length: int, start: str | None = None) -> Iterator[tuple[str, ...]]:
        """All composable generator paths of the given length."""
        starts = [start] if start is not None else list(self.objects)

        def extend(obj: str, prefix: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
            if len(prefix) == length:
                yield prefix
                return
            for g in self._by_source.get(obj, []):
                yield from extend(g.target, prefix + (g.name,))

        if length == 0:
            yield ()
            return
        for obj in starts:
            yield from extend(obj, ())

    def is_strictly_unital(self) -> bool:
        return bool(self.units) and set(self.units) == set(self.objects)

    def is_curved(self) -> bool:
        return () in self.mu

    # -------------------------------------------------------------------------
    # Validation
    # -------------------------------------------------------------------------

    def validate(self) -> None:
        """
        Check composability, degrees and the curvature filtration condition.

        Raises:
            NotComposable: On a non-composable entry or misplaced output
            DegreeMismatch: On a degree violation
            NonconvergentSum: On curvature outside the filtration ideal
        """
        grading = self.ring.grading
        for inputs, outputs in self.mu.items():
            for name in inputs:
                self.generator(name)
            if inputs and not self.is_composable(inputs):
                raise NotComposable(f"inputs {inputs} are not composable")
            input_degree = sum(self.degree(a) for a in inputs) + 2 - len(inputs)
            for name, coeff in outputs.items():
                out = self.generator(name)
                if inputs:
                    source = self.generator(inputs[0]).source
                    target = self.generator(inputs[-1]).target
                    if (out.source, out.target) != (source, target):
                        raise NotComposable(f"output {name} of {inputs} is in the wrong hom space")
                elif out.source != out.target:
                    raise NotComposable(f"curvature output {name} is not an endomorphism")
                if coeff.ring != self.ring:
                    raise UnknownSymbol(f"coefficient of {name} at {inputs} is in another ring")
                degree = coeff.degree()
                if degree is None or parity(degree) != 0:
                    raise DegreeMismatch(
                        f"coefficient of {name} at {inputs} must be homogeneous of even degree"
                    )
                if not grading.equal(degree + out.degree, input_degree):
                    raise DegreeMismatch(
                        f"mu{inputs} -> {name} has degree {degree + out.degree}, "
                        f"expected {grading.reduce(input_degree)}"
                    )
                if not inputs and not coeff.filtration_positive():
                    raise NonconvergentSum(
                        f"curvature coefficient of {name} is not in the filtration ideal"
                    )
        for obj, unit in self.units.items():
            g = self.generator(unit)
            if g.source != obj or g.target != obj or not grading.equal(g.degree, 0):
                raise DegreeMismatch(f"unit {unit} of {obj} must be a degree-0 endomorphism")

    # -------------------------------------------------------------------------
    # Derived structures
    # -------------------------------------------------------------------------

    def with_mu(
        self,
        mu: Mapping[tuple[str, ...], Mapping[str, RingElement]],
        *,
        ring: BulkRingDescriptor | None = None,
        units: Mapping[str, str] | None = None,
        arity_cap: int | None = None,
        truncated: bool | None = None,
        validate: bool = True,
    ) -> AInfStructure:
        return AInfStructure(
            ring=ring or self.ring,
            objects=self.objects,
            generators=self.generators,
            mu=mu,
            units=self.units if units is None else units,
            arity_cap=self.arity_cap if arity_cap is None else arity_cap,
            truncated=self.truncated if truncated is None else truncated,
            validate=validate,
        )

    def same_constants(self, other: AInfStructure) -> bool:
        """Structure-constant equality."""
        keys = set(self.mu) | set(other.mu)
        for key in keys:
            left = self.mu.get(key, {})
            right = other.mu.get(key, {})
            for name in set(left) | set(right):
                a = left.get(name, RingElement.zero(self.ring))
                b = right.get(name, RingElement.zero(self.ring))
                if a != b:
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "objects": list(self.objects),
            "generators": [g.to_dict() for g in self.generators],
            "mu": entries_to_list(self.mu),
            "units": dict(self.units),
            "arity_cap": self.arity_cap,
        }

    def __repr__(self) -> str:
        return (
            f"AInfStructure(objects={list(self.objects)}, generators={len(self.generators)}, "
            f"entries={len(self.mu)}, arity_cap={self.arity_cap})"
        )


class ModIdeal(str, Enum):
    """Ideal modulo which a Maurer-Cartan equation is required to hold."""

    ZERO = "zero"
    BULK = "bulk"


@dataclass
class BoundingCochainAssignment:
    """
    A bounding cochain per object.

    Each ``b`` is an odd-degree endomorphism whose coefficients have even
    degree and lie in the filtration ideal.
    """

    structure: AInfStructure
    per_object: dict[str, Element] = field(default_factory=dict)
    mod_ideal: ModIdeal = ModIdeal.ZERO

    def __post_init__(self) -> None:
        self.mod_ideal = ModIdeal(self.mod_ideal)
        self.per_object = {
            obj: {k: v for k, v in b.items() if not v.is_zero()}
            for obj, b in self.per_object.items()
        }
        self.validate()

    @classmethod
    def zero(cls, structure: AInfStructure) -> BoundingCochainAssignment:
        return cls(structure=structure, per_object={})

    def validate(self) -> None:
        grading = self.structure.ring.grading
        for obj, b in self.per_object.items():
            if obj not in self.structure.objects:
                raise UnknownSymbol(f"bounding cochain for unknown object '{obj}'")
            for name, coeff in b.items():
                g = self.structure.generator(name)
                if g.source != obj or g.target != obj:
                    raise NotComposable(f"{name} is not an endomorphism of {obj}")
                degree = coeff.degree()
                if degree is None or parity(degree) != 0:
                    raise DegreeMismatch(f"coefficient of {name} in b must have even degree")
                if grading.reduce(degree + g.degree) % 2 != 1:
                    raise DegreeMismatch(f"bounding cochain on {obj} must have odd degree")
                if not coeff.filtration_positive():
                    raise NonconvergentSum(
                        f"bounding cochain on {obj} has a coefficient outside the filtration ideal"
                    )

    def on(self, obj: str) -> Element:
        return self.per_object.get(obj, {})

    def is_zero(self) -> bool:
        return not any(self.per_object.values())

    def to_dict(self) -> dict:
        return {
            "mod_ideal": self.mod_ideal.value,
            "per_object": {obj: element_to_dict(b) for obj, b in sorted(self.per_object.items())},
        }


@dataclass
class CochainVector:
    """
    A Hochschild cochain: a sparse multilinear map with the same shape as mu.

    ``parity`` is the parity of its shifted degree; structure maps and their
    derivatives are odd, gauge and derivation cochains are even.
    """

    entries: CochainEntries = field(default_factory=dict)
    parity: int = 1

    def __post_init__(self) -> None:
        cleaned: CochainEntries = {}
        for inputs, outputs in self.entries.items():
            kept = {k: v for k, v in outputs.items() if not v.is_zero()}
            if kept:
                cleaned[tuple(inputs)] = kept
        self.entries = cleaned

    def is_zero(self) -> bool:
        return not self.entries

    def value(self, inputs: tuple[str, ...]) -> Element:
        return self.entries.get(inputs, {})

    def max_arity(self) -> int:
        return max((len(k) for k in self.entries), default=0)

    def __add__(self, other: CochainVector) -> CochainVector:
        merged: CochainEntries = {k: dict(v) for k, v in self.entries.items()}
        for inputs, outputs in other.entries.items():
            merged[inputs] = element_add(merged.get(inputs, {}), outputs)
        return CochainVector(merged, self.parity)

    def __neg__(self) -> CochainVector:
        return CochainVector(
            {k: {n: -c for n, c in v.items()} for k, v in self.entries.items()}, self.parity
        )

    def __sub__(self, other: CochainVector) -> CochainVector:
        return self + (-other)

    def scale(self, factor: RingElement) -> CochainVector:
        return CochainVector(
            {k: element_scale(v, factor) for k, v in self.entries.items()}, self.parity
        )

    def to_dict(self) -> dict:
        return {"parity": self.parity, "entries": entries_to_list(self.entries)}


OmegaCochain = dict[str, CochainVector]


@dataclass
class RelationViolation:
    """A tuple on which the A-infinity relation fails."""

    inputs: tuple[str, ...]
    residual: Element

    def to_dict(self) -> dict:
        return {"inputs": list(self.inputs), "residual": element_to_dict(self.residual)}


@dataclass
class AInfRelationReport:
    """Outcome of checkAInfRelations."""

    passed: bool
    violations: list[RelationViolation] = field(default_factory=list)
    checked_up_to_arity: int | None = None
    unchecked_tail: str | None = None
    truncation: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
            "checked_up_to_arity": self.checked_up_to_arity,
            "unchecked_tail": self.unchecked_tail,
            "truncation": self.truncation,
        }


@dataclass
class UnitReport:
    """Outcome of the strict or cohomological unit check."""

    applicable: bool
    passed: bool
    kind: str = "strict"
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "passed": self.passed,
            "kind": self.kind,
            "failures": self.failures,
        }


@dataclass
class MaurerCartanReport:
    """Outcome of checkMaurerCartan."""

    passed: bool
    mod_ideal: str
    residuals: dict[str, Element] = field(default_factory=dict)
    truncation: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mod_ideal": self.mod_ideal,
            "residuals": {obj: element_to_dict(r) for obj, r in sorted(self.residuals.items())},
            "truncation": self.truncation,
        }
