"""Graded, filtered coefficient rings with bulk variables and divided powers.

A ring element is a finite sum ``sum c_m * r^u * t^[e]`` where ``c_m`` is a
Novikov scalar, ``r^u`` a monomial in the declared Novikov-type symbols
(degree 0) and ``t^[e]`` a monomial in the bulk variables, stored in
divided-power normal form when the ring uses divided powers.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb

from nchodge.errors import DegreeMismatch, ParameterOutOfRange, UnknownSymbol
from nchodge.scalars.grading import Grading, parity, sign_of
from nchodge.scalars.novikov import NovikovScalar

Monomial = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class TruncationPolicy:
    """Finite stand-in for the adic completions."""

    t_precision: Fraction | None = None
    bulk_degree_max: int = 2
    u_max: int = 2
    length_max: int = 6

    def __post_init__(self) -> None:
        if self.t_precision is not None:
            object.__setattr__(self, "t_precision", Fraction(self.t_precision))
            if self.t_precision < 0:
                raise ParameterOutOfRange(f"t_precision must be >= 0, got {self.t_precision}")
        for name in ("bulk_degree_max", "u_max", "length_max"):
            if getattr(self, name) < 0:
                raise ParameterOutOfRange(f"{name} must be >= 0, got {getattr(self, name)}")

    @classmethod
    def default(cls) -> TruncationPolicy:
        """Policy built from the configured defaults."""
        from nchodge.config import get_settings

        settings = get_settings()
        return cls(
            t_precision=settings.t_precision,
            bulk_degree_max=settings.default_bulk_degree_max,
            u_max=settings.default_u_max,
            length_max=settings.default_length_max,
        )

    def with_caps(self, **changes: object) -> TruncationPolicy:
        return replace(self, **changes)  # type: ignore[arg-type]

    def to_dict(self) -> dict:
        return {
            "t_precision": None if self.t_precision is None else str(self.t_precision),
            "bulk_degree_max": self.bulk_degree_max,
            "u_max": self.u_max,
            "length_max": self.length_max,
        }


@dataclass(frozen=True)
class BulkVariable:
    """A bulk deformation variable t_i of the given grading degree."""

    name: str
    degree: int = 0


@dataclass(frozen=True)
class BulkRingDescriptor:
    """
    Description of a coefficient ring.

    ``differential`` maps a bulk variable to a linear combination of bulk
    variables (the Morse-type differential on generators); it must raise the
    degree by one and square to zero.
    """

    grading: Grading = Grading.INTEGER
    symbols: tuple[str, ...] = ()
    variables: tuple[BulkVariable, ...] = ()
    divided_powers: bool = True
    differential: tuple[tuple[str, tuple[tuple[str, Fraction], ...]], ...] = ()
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self) -> None:
        names = list(self.symbols) + [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ParameterOutOfRange(f"duplicate ring symbol among {names}")
        if "T" in names:
            raise ParameterOutOfRange("'T' is reserved for the Novikov variable")

    # -------------------------------------------------------------------------
    # Presets
    # -------------------------------------------------------------------------

    @classmethod
    def rationals(cls, grading: Grading = Grading.INTEGER, length_max: int = 6) -> BulkRingDescriptor:
        """Plain ℚ coefficients (T never appears)."""
        return cls(grading=grading, truncation=TruncationPolicy(None, 0, 2, length_max))

    @classmethod
    def novikov(
        cls,
        grading: Grading = Grading.INTEGER,
        t_precision: Fraction | int = 12,
        length_max: int = 6,
        u_max: int = 2,
    ) -> BulkRingDescriptor:
        """The Novikov field truncated at ``T^t_precision``."""
        return cls(
            grading=grading,
            truncation=TruncationPolicy(Fraction(t_precision), 0, u_max, length_max),
        )

    # -------------------------------------------------------------------------
    # Lookups
    # -------------------------------------------------------------------------

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable_index(self, name: str) -> int:
        for i, v in enumerate(self.variables):
            if v.name == name:
                return i
        raise UnknownSymbol(f"unknown bulk variable '{name}'")

    def symbol_index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise UnknownSymbol(f"unknown Novikov symbol '{name}'") from None

    def differential_of(self, name: str) -> dict[str, Fraction]:
        for source, images in self.differential:
            if source == name:
                return {t: Fraction(c) for t, c in images}
        return {}

    def monomial_degree(self, monomial: Monomial) -> int:
        _, bulk = monomial
        return self.grading.reduce(sum(e * v.degree for e, v in zip(bulk, self.variables)))

    def monomial_filtration(self, monomial: Monomial) -> int:
        symbols, bulk = monomial
        return sum(symbols) + sum(bulk)

    def with_truncation(self, truncation: TruncationPolicy) -> BulkRingDescriptor:
        return replace(self, truncation=truncation)

    def without_variables(self) -> BulkRingDescriptor:
        """The ring with every bulk variable and symbol dropped."""
        return replace(self, symbols=(), variables=(), differential=())

    @property
    def unit_monomial(self) -> Monomial:
        return ((0,) * len(self.symbols), (0,) * len(self.variables))

    # -------------------------------------------------------------------------
    # Monomial arithmetic
    # -------------------------------------------------------------------------

    def multiply_monomials(self, a: Monomial, b: Monomial) -> tuple[Monomial, Fraction] | None:
        """
        Product of two monomials as (monomial, rational factor), or None if zero.

        The factor collects divided-power binomials and the reordering sign of
        odd bulk variables.
        """
        sa, ba = a
        sb, bb = b
        symbols = tuple(x + y for x, y in zip(sa, sb))
        factor = Fraction(1)
        bulk: list[int] = []
        for i, (x, y) in enumerate(zip(ba, bb)):
            odd = parity(self.variables[i].degree) == 1
            if odd and x + y > 1:
                return None
            if self.divided_powers and not odd:
                factor *= comb(x + y, x)
            bulk.append(x + y)

        # move b's odd factors left past a's later odd factors
        swaps = 0
        for j, y in enumerate(bb):
            if y and parity(self.variables[j].degree):
                swaps += sum(
                    ba[i] for i in range(j + 1, len(ba)) if parity(self.variables[i].degree)
                )
        factor *= sign_of(swaps)

        monomial = (symbols, tuple(bulk))
        if self.monomial_filtration(monomial) > self.truncation.bulk_degree_max and (
            self.symbols or self.variables
        ):
            return None
        return monomial, factor


def divided_power_product(
    ring: BulkRingDescriptor, a: Monomial, b: Monomial
) -> RingElement:
    """``r^[i] * r^[j] = binomial(i+j, i) r^[i+j]``, truncated by the ring's policy."""
    if not ring.divided_powers:
        raise ParameterOutOfRange("ring does not use divided powers")
    return RingElement.from_monomial(ring, a) * RingElement.from_monomial(ring, b)


class RingElement:
    """
    Immutable element of a coefficient ring.

    Zero coefficients are pruned; every arithmetic result is reduced to the
    ring's truncation policy before it is returned.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: BulkRingDescriptor, terms: Mapping[Monomial, NovikovScalar] | None = None):
        self.ring = ring
        cleaned: dict[Monomial, NovikovScalar] = {}
        if terms:
            cap = ring.truncation.t_precision
            for monomial, scalar in terms.items():
                scalar = scalar.truncate(cap)
                if not scalar.is_zero():
                    cleaned[monomial] = scalar
        self.terms: dict[Monomial, NovikovScalar] = cleaned

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls, ring: BulkRingDescriptor) -> RingElement:
        return cls(ring)

    @classmethod
    def from_scalar(cls, ring: BulkRingDescriptor, scalar: NovikovScalar) -> RingElement:
        return cls(ring, {ring.unit_monomial: scalar})

    @classmethod
    def constant(cls, ring: BulkRingDescriptor, value: Fraction | int) -> RingElement:
        return cls.from_scalar(ring, NovikovScalar.constant(value))

    @classmethod
    def one(cls, ring: BulkRingDescriptor) -> RingElement:
        return cls.constant(ring, 1)

    @classmethod
    def t_power(
        cls, ring: BulkRingDescriptor, exponent: Fraction | int, coeff: Fraction | int = 1
    ) -> RingElement:
        return cls.from_scalar(ring, NovikovScalar.monomial(coeff, exponent))

    @classmethod
    def from_monomial(cls, ring: BulkRingDescriptor, monomial: Monomial) -> RingElement:
        if ring.monomial_filtration(monomial) > ring.truncation.bulk_degree_max:
            return cls(ring)
        return cls(ring, {monomial: NovikovScalar.one()})

    @classmethod
    def variable(cls, ring: BulkRingDescriptor, name: str, power: int = 1) -> RingElement:
        """The divided power ``t^[power]`` (or plain ``t^power`` without divided powers)."""
        index = ring.variable_index(name)
        bulk = [0] * len(ring.variables)
        bulk[index] = power
        return cls.from_monomial(ring, ((0,) * len(ring.symbols), tuple(bulk)))

    @classmethod
    def symbol(cls, ring: BulkRingDescriptor, name: str, power: int = 1) -> RingElement:
        index = ring.symbol_index(name)
        symbols = [0] * len(ring.symbols)
        symbols[index] = power
        return cls.from_monomial(ring, (tuple(symbols), (0,) * len(ring.variables)))

    # -------------------------------------------------------------------------
    # Queries
    # -------------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Grading degree, or None if inhomogeneous (0 for zero)."""
        degrees = {self.ring.monomial_degree(m) for m in self.terms}
        if not degrees:
            return 0
        if len(degrees) > 1:
            return None
        return degrees.pop()

    def require_degree(self) -> int:
        degree = self.degree()
        if degree is None:
            raise DegreeMismatch(f"{self} is not homogeneous")
        return degree

    def valuation(self) -> Fraction | None:
        """Least T-exponent over all monomials (None for zero)."""
        values = [s.valuation for s in self.terms.values() if s.valuation is not None]
        return min(values) if values else None

    def precision(self) -> Fraction | None:
        values = [s.precision for s in self.terms.values() if s.precision is not None]
        return min(values) if values else None

    def filtration_positive(self) -> bool:
        """True if every monomial has positive bulk/symbol degree or positive T-valuation."""
        for monomial, scalar in self.terms.items():
            if self.ring.monomial_filtration(monomial) > 0:
                continue
            valuation = scalar.valuation
            if valuation is None or valuation <= 0:
                return False
        return True

    def filtration_level(self) -> Fraction | None:
        """Smallest filtration weight over monomials (bulk degree plus T-valuation); None for zero."""
        levels = []
        for monomial, scalar in self.terms.items():
            valuation = scalar.valuation or Fraction(0)
            levels.append(self.ring.monomial_filtration(monomial) + valuation)
        return min(levels) if levels else None

    def constant_scalar(self) -> NovikovScalar:
        return self.terms.get(self.ring.unit_monomial, NovikovScalar())

    def is_scalar(self) -> bool:
        """True if only the unit monomial occurs."""
        return all(m == self.ring.unit_monomial for m in self.terms)

    def is_rational(self) -> bool:
        return self.is_scalar() and all(s.is_rational() for s in self.terms.values())

    def rational_value(self) -> Fraction:
        return self.constant_scalar().rational_value()

    def sorted_terms(self) -> list[tuple[Monomial, NovikovScalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def _check_ring(self, other: RingElement) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise UnknownSymbol("ring elements live over different coefficient rings")

    def __add__(self, other: RingElement) -> RingElement:
        self._check_ring(other)
        merged = dict(self.terms)
        for monomial, scalar in other.terms.items():
            merged[monomial] = merged[monomial] + scalar if monomial in merged else scalar
        return RingElement(self.ring, merged)

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, {m: -s for m, s in self.terms.items()})

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def __mul__(self, other: RingElement) -> RingElement:
        self._check_ring(other)
        product: dict[Monomial, NovikovScalar] = {}
        for m1, s1 in self.terms.items():
            for m2, s2 in other.terms.items():
                result = self.ring.multiply_monomials(m1, m2)
                if result is None:
                    continue
                monomial, factor = result
                scalar = (s1 * s2).scale(factor)
                product[monomial] = product[monomial] + scalar if monomial in product else scalar
        return RingElement(self.ring, product)

    def scale(self, factor: Fraction | int) -> RingElement:
        factor = Fraction(factor)
        if factor == 0:
            return RingElement(self.ring)
        if factor == 1:
            return self
        return RingElement(self.ring, {m: s.scale(factor) for m, s in self.terms.items()})

    def scale_scalar(self, scalar: NovikovScalar) -> RingElement:
        return RingElement(self.ring, {m: s * scalar for m, s in self.terms.items()})

    def power(self, k: int) -> RingElement:
        result = RingElement.one(self.ring)
        for _ in range(k):
            result = result * self
        return result

    def truncate(self, t_precision: Fraction | None) -> RingElement:
        return RingElement(self.ring, {m: s.truncate(t_precision) for m, s in self.terms.items()})

    def specialize_bulk_zero(self) -> RingElement:
        """Set every bulk variable and symbol to zero (quotient by the bulk ideal)."""
        unit = self.ring.unit_monomial
        return RingElement(self.ring, {unit: self.terms[unit]} if unit in self.terms else {})

    def map_scalars(self, fn: Callable[[NovikovScalar], NovikovScalar]) -> RingElement:
        return RingElement(self.ring, {m: fn(s) for m, s in self.terms.items()})

    def coefficient_of_variable(self, name: str) -> RingElement:
        """Coefficient of the first power of one bulk variable (others kept)."""
        index = self.ring.variable_index(name)
        picked: dict[Monomial, NovikovScalar] = {}
        for (symbols, bulk), scalar in self.terms.items():
            if bulk[index] == 1:
                lowered = list(bulk)
                lowered[index] = 0
                picked[(symbols, tuple(lowered))] = scalar
        return RingElement(self.ring, picked)

    def without_variable(self, name: str) -> RingElement:
        """Terms in which the variable does not occur."""
        index = self.ring.variable_index(name)
        return RingElement(
            self.ring, {m: s for m, s in self.terms.items() if m[1][index] == 0}
        )

    def invert(self) -> RingElement:
        """Inverse of a scalar element (no bulk monomials)."""
        if not self.is_scalar():
            raise DegreeMismatch(f"cannot invert non-scalar element {self}")
        from nchodge.config import get_settings

        relative = get_settings().inverse_relative_precision
        return RingElement.from_scalar(self.ring, self.constant_scalar().invert(relative))

    def __eq__(self, other: object) -> bool:
        """Equality at matching precision: the difference has no visible term."""
        if not isinstance(other, RingElement):
            return NotImplemented
        if self.terms == other.terms:
            return True
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        from nchodge.scalars.expressions import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"RingElement({self})"


def sum_elements(ring: BulkRingDescriptor, elements: Iterable[RingElement]) -> RingElement:
    """Sum of ring elements with a single normalization pass."""
    merged: dict[Monomial, NovikovScalar] = {}
    for element in elements:
        for monomial, scalar in element.terms.items():
            merged[monomial] = merged[monomial] + scalar if monomial in merged else scalar
    return RingElement(ring, merged)


def check_differential(ring: BulkRingDescriptor) -> list[str]:
    """
    Check that the declared bulk differential squares to zero and raises degree by one.

    Returns:
        Human-readable violations (empty when the differential is valid)
    """
    problems = []
    degrees = {v.name: v.degree for v in ring.variables}
    for source, images in ring.differential:
        if source not in degrees:
            problems.append(f"differential of unknown variable '{source}'")
            continue
        for target, coeff in images:
            if target not in degrees:
                problems.append(f"d({source}) mentions unknown variable '{target}'")
            elif Fraction(coeff) != 0 and not ring.grading.equal(
                degrees[target], degrees[source] + 1
            ):
                problems.append(f"d({source}) -> {target} does not raise degree by one")
        square: dict[str, Fraction] = {}
        for target, coeff in images:
            for second, c2 in ring.differential_of(target).items():
                square[second] = square.get(second, Fraction(0)) + Fraction(coeff) * c2
        nonzero = {k: v for k, v in square.items() if v != 0}
        if nonzero:
            problems.append(f"d(d({source})) = {nonzero} is not zero")
    return problems
