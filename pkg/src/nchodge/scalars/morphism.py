"""Morphisms of rings with derivation, used for base change and pullback."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from nchodge.errors import DegreeMismatch, IncompatibleDf, UnknownSymbol
from nchodge.scalars.derivation import Derivation, OmegaValue, omega_add, omega_equal
from nchodge.scalars.ring import BulkRingDescriptor, RingElement, sum_elements


@dataclass
class RingMorphismWithDerivation:
    """
    A ring morphism f: source -> target together with Df on Omega labels.

    Attributes:
        source: Domain ring
        target: Codomain ring
        generator_images: Image of each source bulk variable
        exponent_map: kappa_q for the symbols sent to T-powers, r^u -> T^(sum u_q kappa_q)
        omega_map: Df on source labels, as target-label coefficients
    """

    source: BulkRingDescriptor
    target: BulkRingDescriptor
    generator_images: dict[str, RingElement] = field(default_factory=dict)
    exponent_map: dict[str, Fraction] = field(default_factory=dict)
    omega_map: dict[str, dict[str, RingElement]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, image in self.generator_images.items():
            variable = self.source.variables[self.source.variable_index(name)]
            if image.ring != self.target:
                raise UnknownSymbol(f"image of '{name}' is not in the target ring")
            degree = image.degree()
            if not image.is_zero() and (
                degree is None or not self.target.grading.equal(degree, variable.degree)
            ):
                raise DegreeMismatch(
                    f"image of '{name}' has degree {degree}, expected {variable.degree}"
                )
        for symbol in self.exponent_map:
            self.source.symbol_index(symbol)
        for symbol in self.source.symbols:
            if symbol not in self.exponent_map and symbol not in self.target.symbols:
                raise UnknownSymbol(f"symbol '{symbol}' has no image")

    # -------------------------------------------------------------------------
    # Presets
    # -------------------------------------------------------------------------

    @classmethod
    def identity(cls, ring: BulkRingDescriptor, derivation: Derivation | None = None) -> "RingMorphismWithDerivation":
        one = RingElement.one(ring)
        labels = derivation.label_names if derivation else ()
        return cls(
            source=ring,
            target=ring,
            generator_images={v.name: RingElement.variable(ring, v.name) for v in ring.variables},
            omega_map={label: {label: one} for label in labels},
        )

    @classmethod
    def specialize_bulk_to_zero(cls, ring: BulkRingDescriptor) -> "RingMorphismWithDerivation":
        """Quotient by the bulk ideal: every variable goes to 0, symbols to T^0."""
        small = ring.without_variables()
        return cls(
            source=ring,
            target=small,
            generator_images={v.name: RingElement.zero(small) for v in ring.variables},
            exponent_map={q: Fraction(0) for q in ring.symbols},
        )

    # -------------------------------------------------------------------------
    # Action
    # -------------------------------------------------------------------------

    def apply(self, x: RingElement) -> RingElement:
        """
        Apply f to a ring element.

        Divided powers map through ``y^k / k!``; symbols map to T-powers
        through the exponent map or to the same-named target symbol.

        Raises:
            UnknownSymbol: If x is not an element of the source ring
        """
        if x.ring != self.source:
            raise UnknownSymbol("element does not live in the morphism's source ring")
        parts = []
        for (symbols, bulk), scalar in x.terms.items():
            exponent = Fraction(0)
            image = RingElement.one(self.target)
            for q, power in zip(self.source.symbols, symbols):
                if not power:
                    continue
                if q in self.exponent_map:
                    exponent += power * self.exponent_map[q]
                else:
                    image = image * RingElement.symbol(self.target, q, power)
            for variable, power in zip(self.source.variables, bulk):
                if not power:
                    continue
                if variable.name not in self.generator_images:
                    raise UnknownSymbol(f"no image for bulk variable '{variable.name}'")
                factor = self.generator_images[variable.name].power(power)
                if self.source.divided_powers and variable.degree % 2 == 0:
                    factor = factor.scale(Fraction(1, factorial(power)))
                image = image * factor
            coefficient = RingElement.from_scalar(self.target, scalar.shift(exponent))
            parts.append(coefficient * image)
        return sum_elements(self.target, parts)

    def apply_omega(self, value: OmegaValue) -> OmegaValue:
        """Df(1 ⊗ value): push an Omega_source-valued element to Omega_target."""
        result: OmegaValue = {}
        for label, coeff in value.items():
            if label not in self.omega_map:
                raise UnknownSymbol(f"Df is not defined on label '{label}'")
            image = self.apply(coeff)
            for target_label, weight in self.omega_map[label].items():
                result = omega_add(result, {target_label: image * weight})
        return result

    def compose(self, after: "RingMorphismWithDerivation") -> "RingMorphismWithDerivation":
        """
        The composite ``after ∘ self``.

        Args:
            after: Morphism whose source is this morphism's target
        """
        if after.source != self.target:
            raise UnknownSymbol("morphisms are not composable")
        exponent_map = {q: k for q, k in self.exponent_map.items()}
        for q in self.source.symbols:
            if q not in exponent_map and q in after.exponent_map:
                exponent_map[q] = after.exponent_map[q]
        omega_map: dict[str, dict[str, RingElement]] = {}
        for label, row in self.omega_map.items():
            composed: OmegaValue = {}
            for middle, coeff in row.items():
                image = after.apply(coeff)
                for final, weight in after.omega_map.get(middle, {}).items():
                    composed = omega_add(composed, {final: image * weight})
            omega_map[label] = composed
        return RingMorphismWithDerivation(
            source=self.source,
            target=after.target,
            generator_images={n: after.apply(y) for n, y in self.generator_images.items()},
            exponent_map=exponent_map,
            omega_map=omega_map,
        )

    # -------------------------------------------------------------------------
    # Compatibility
    # -------------------------------------------------------------------------

    def incompatible_generators(self, d_source: Derivation, d_target: Derivation) -> list[str]:
        """
        Generators r on which Df(1 ⊗ D_source(r)) != D_target(f(r)).

        T, every symbol and every bulk variable of the source are tested.
        """
        generators: list[tuple[str, RingElement]] = [("T", RingElement.t_power(self.source, 1))]
        generators += [(q, RingElement.symbol(self.source, q)) for q in self.source.symbols]
        generators += [
            (v.name, RingElement.variable(self.source, v.name)) for v in self.source.variables
        ]
        failing = []
        for name, r in generators:
            left = self.apply_omega(d_source.apply(r))
            right = d_target.apply(self.apply(r))
            if not omega_equal(left, right):
                failing.append(name)
        return failing

    def require_compatible(self, d_source: Derivation, d_target: Derivation) -> None:
        failing = self.incompatible_generators(d_source, d_target)
        if failing:
            raise IncompatibleDf(f"Df is incompatible with the derivations on {failing}")

    def commutes_with_differentials(self) -> list[str]:
        """Generators on which f(d x) != d f(x)."""
        from nchodge.scalars.derivation import apply_ring_differential

        problems = []
        for variable in self.source.variables:
            x = RingElement.variable(self.source, variable.name)
            if self.apply(apply_ring_differential(x)) != apply_ring_differential(self.apply(x)):
                problems.append(variable.name)
        return problems
