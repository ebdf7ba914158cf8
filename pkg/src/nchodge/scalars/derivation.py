"""Derivations D: R -> Omega on coefficient rings.

Omega is a finite free module with a declared basis of labels (``dlogT``,
``dt1``, ``dlog_r1``, ...). An Omega-valued element is a mapping
``label -> RingElement`` with the label written on the right.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from nchodge.errors import DegreeMismatch, UnknownSymbol
from nchodge.scalars.grading import sign_of
from nchodge.scalars.novikov import NovikovScalar
from nchodge.scalars.ring import BulkRingDescriptor, Monomial, RingElement, sum_elements

OmegaValue = dict[str, RingElement]


@dataclass(frozen=True)
class OmegaLabel:
    """Basis element of Omega."""

    name: str
    degree: int = 0


def omega_add(a: Mapping[str, RingElement], b: Mapping[str, RingElement]) -> OmegaValue:
    result = dict(a)
    for label, value in b.items():
        result[label] = result[label] + value if label in result else value
    return {k: v for k, v in result.items() if not v.is_zero()}


def omega_scale(a: Mapping[str, RingElement], factor: RingElement) -> OmegaValue:
    """Left multiplication of an Omega-valued element by a scalar."""
    result = {label: factor * value for label, value in a.items()}
    return {k: v for k, v in result.items() if not v.is_zero()}


def omega_equal(a: Mapping[str, RingElement], b: Mapping[str, RingElement]) -> bool:
    labels = set(a) | set(b)
    for label in labels:
        left = a.get(label)
        right = b.get(label)
        if left is None:
            if right is not None and not right.is_zero():
                return False
        elif right is None:
            if not left.is_zero():
                return False
        elif left != right:
            return False
    return True


@dataclass
class Derivation:
    """
    A derivation on a coefficient ring.

    Attributes:
        ring: The ring differentiated
        labels: Basis of Omega
        t_log: D(T^a) = a T^a * sum_l t_log[l] * omega_l
        symbol_log: D(r^u) = r^u * sum_q u_q * sum_l symbol_log[q][l] * omega_l
        bulk_images: D(t_i) on each bulk variable, extended by the Leibniz rule
        label_differential: optional differential on Omega labels, used to test
            that D commutes with the ring differential
    """

    ring: BulkRingDescriptor
    labels: tuple[OmegaLabel, ...]
    t_log: dict[str, Fraction] = field(default_factory=dict)
    symbol_log: dict[str, dict[str, Fraction]] = field(default_factory=dict)
    bulk_images: dict[str, OmegaValue] = field(default_factory=dict)
    label_differential: dict[str, dict[str, Fraction]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        names = {label.name for label in self.labels}
        for mapping in [self.t_log, *self.symbol_log.values(), *self.bulk_images.values()]:
            for label in mapping:
                if label not in names:
                    raise UnknownSymbol(f"derivation uses undeclared Omega label '{label}'")
        for symbol in self.symbol_log:
            self.ring.symbol_index(symbol)
        for variable in self.bulk_images:
            self.ring.variable_index(variable)

    # -------------------------------------------------------------------------
    # Presets
    # -------------------------------------------------------------------------

    @classmethod
    def d_log_t(cls, ring: BulkRingDescriptor, label: str = "dlogT") -> "Derivation":
        """D = T d/dT with a single Omega label."""
        return cls(ring=ring, labels=(OmegaLabel(label, 0),), t_log={label: Fraction(1)})

    @classmethod
    def trivial(cls, ring: BulkRingDescriptor, label: str = "dlogT") -> "Derivation":
        """The zero derivation with a single label."""
        return cls(ring=ring, labels=(OmegaLabel(label, 0),))

    @classmethod
    def standard(cls, ring: BulkRingDescriptor) -> "Derivation":
        """
        The derivation of a Novikov ring with bulk variables: dlogT on T,
        dlog_r on symbols and dt_i on bulk variables.
        """
        labels = [OmegaLabel("dlogT", 0)]
        labels += [OmegaLabel(f"dlog_{q}", 0) for q in ring.symbols]
        labels += [OmegaLabel(f"d{v.name}", v.degree) for v in ring.variables]
        one = RingElement.one(ring)
        return cls(
            ring=ring,
            labels=tuple(labels),
            t_log={"dlogT": Fraction(1)},
            symbol_log={q: {f"dlog_{q}": Fraction(1)} for q in ring.symbols},
            bulk_images={v.name: {f"d{v.name}": one} for v in ring.variables},
        )

    # -------------------------------------------------------------------------
    # Action
    # -------------------------------------------------------------------------

    @property
    def label_names(self) -> tuple[str, ...]:
        return tuple(label.name for label in self.labels)

    def label_degree(self, name: str) -> int:
        for label in self.labels:
            if label.name == name:
                return label.degree
        raise UnknownSymbol(f"unknown Omega label '{name}'")

    def _monomial_element(self, monomial: Monomial, scalar: NovikovScalar) -> RingElement:
        return RingElement(self.ring, {monomial: scalar})

    def apply(self, x: RingElement) -> OmegaValue:
        """
        Apply D to a ring element.

        Returns:
            Mapping from Omega label to coefficient
        """
        if x.ring != self.ring:
            raise UnknownSymbol("element does not live in the derivation's ring")
        contributions: dict[str, list[RingElement]] = {label: [] for label in self.label_names}

        for monomial, scalar in x.terms.items():
            symbols, bulk = monomial
            if self.t_log:
                derived = scalar.t_log_derivative()
                if not derived.is_zero():
                    for label, weight in self.t_log.items():
                        contributions[label].append(
                            self._monomial_element(monomial, derived.scale(weight))
                        )
            for q, power in zip(self.ring.symbols, symbols):
                if power and q in self.symbol_log:
                    for label, weight in self.symbol_log[q].items():
                        contributions[label].append(
                            self._monomial_element(monomial, scalar.scale(weight * power))
                        )
            for i, power in enumerate(bulk):
                name = self.ring.variables[i].name
                if not power or name not in self.bulk_images:
                    continue
                lowered = list(bulk)
                lowered[i] -= 1
                # t^[k] -> t^[k-1] dt; plain powers pick up the exponent
                factor = Fraction(1) if self.ring.divided_powers else Fraction(power)
                prefix_bulk = [0] * len(bulk)
                suffix_bulk = [0] * len(bulk)
                for j, e in enumerate(lowered):
                    if j <= i:
                        prefix_bulk[j] = e
                    else:
                        suffix_bulk[j] = e
                prefix = RingElement(
                    self.ring, {(symbols, tuple(prefix_bulk)): scalar.scale(factor)}
                )
                suffix = RingElement(
                    self.ring, {((0,) * len(symbols), tuple(suffix_bulk)): NovikovScalar.one()}
                )
                suffix_degree = sum(
                    e * self.ring.variables[j].degree for j, e in enumerate(suffix_bulk)
                )
                sign = sign_of(self.ring.variables[i].degree * suffix_degree)
                for label, image in self.bulk_images[name].items():
                    contributions[label].append((prefix * suffix * image).scale(sign))

        result = {
            label: sum_elements(self.ring, parts) for label, parts in contributions.items()
        }
        return {k: v for k, v in result.items() if not v.is_zero()}

    def apply_scalar_valued(self, x: RingElement, label: str) -> RingElement:
        """Component of D(x) along a single label."""
        return self.apply(x).get(label, RingElement.zero(self.ring))

    # -------------------------------------------------------------------------
    # Checks
    # -------------------------------------------------------------------------

    def check_degrees(self) -> list[str]:
        """Each D(t_i) component must have degree |t_i| - |omega_l|."""
        problems = []
        for name, images in self.bulk_images.items():
            variable = self.ring.variables[self.ring.variable_index(name)]
            for label, coeff in images.items():
                degree = coeff.degree()
                if coeff.is_zero():
                    continue
                if degree is None or not self.ring.grading.equal(
                    degree + self.label_degree(label), variable.degree
                ):
                    problems.append(f"D({name}) component {label} has the wrong degree")
        return problems

    def leibniz_defect(self, x: RingElement, y: RingElement) -> OmegaValue:
        """D(xy) - D(x)y - xD(y) for even-degree inputs; zero for a derivation."""
        if x.degree() is None or y.degree() is None:
            raise DegreeMismatch("Leibniz check needs homogeneous inputs")
        left = self.apply(x * y)
        dx = {label: value * y for label, value in self.apply(x).items()}
        dy = omega_scale(self.apply(y), x)
        right = omega_add(dx, dy)
        negated = {label: -value for label, value in right.items()}
        return omega_add(left, negated)

    def commutes_with_differential(self) -> list[str]:
        """Check D(d t_i) = d_Omega(D t_i) on every bulk variable."""
        problems = []
        for variable in self.ring.variables:
            d_t = RingElement(self.ring)
            for target, coeff in self.ring.differential_of(variable.name).items():
                d_t = d_t + RingElement.variable(self.ring, target).scale(coeff)
            left = self.apply(d_t)
            right: OmegaValue = {}
            for label, coeff in self.bulk_images.get(variable.name, {}).items():
                right = omega_add(right, {label: apply_ring_differential(coeff)})
                for target, weight in self.label_differential.get(label, {}).items():
                    degree = coeff.degree() or 0
                    right = omega_add(right, {target: coeff.scale(weight * sign_of(degree))})
            if not omega_equal(left, right):
                problems.append(f"D does not commute with d on {variable.name}")
        return problems


def apply_ring_differential(x: RingElement) -> RingElement:
    """Extend the declared generator differential to all of R by the graded Leibniz rule."""
    ring = x.ring
    if not ring.differential:
        return RingElement.zero(ring)
    parts = []
    for (symbols, bulk), scalar in x.terms.items():
        prefix_degree = 0
        for i, power in enumerate(bulk):
            variable = ring.variables[i]
            if power:
                image = ring.differential_of(variable.name)
                if image:
                    lowered = list(bulk)
                    lowered[i] -= 1
                    factor = Fraction(1) if ring.divided_powers else Fraction(power)
                    prefix = [e if j < i else 0 for j, e in enumerate(lowered)]
                    middle = [lowered[i] if j == i else 0 for j in range(len(bulk))]
                    suffix = [e if j > i else 0 for j, e in enumerate(lowered)]
                    d_t = sum_elements(
                        ring,
                        (RingElement.variable(ring, t).scale(c) for t, c in image.items()),
                    )
                    term = (
                        RingElement(ring, {(symbols, tuple(prefix)): scalar.scale(factor)})
                        * RingElement.from_monomial(ring, ((0,) * len(symbols), tuple(middle)))
                        * d_t
                        * RingElement.from_monomial(ring, ((0,) * len(symbols), tuple(suffix)))
                    )
                    parts.append(term.scale(sign_of(prefix_degree)))
            prefix_degree += power * variable.degree
    return sum_elements(ring, parts)
