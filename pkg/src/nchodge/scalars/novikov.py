"""Novikov scalars: finite sums of rational multiples of rational powers of T.

A scalar carries an explicit precision ``p``: every exponent ``>= p`` is
unknown, so ``x`` stands for ``sum + O(T^p)``. ``precision=None`` means the
scalar is exact.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from nchodge.errors import InversionAtZeroPrecision

Exponent = Fraction


def _min_precision(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _plus(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None or b is None:
        return None
    return a + b


@dataclass(frozen=True)
class NovikovScalar:
    """An element of the Novikov field known up to ``O(T^precision)``."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()
    precision: Fraction | None = None

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def build(
        cls,
        terms: Mapping[Fraction, Fraction] | Iterable[tuple[Fraction, Fraction]],
        precision: Fraction | None = None,
    ) -> "NovikovScalar":
        """Normalize (exponent, coefficient) data into a scalar."""
        collected: dict[Fraction, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exponent, coeff in items:
            exponent = Fraction(exponent)
            collected[exponent] = collected.get(exponent, Fraction(0)) + Fraction(coeff)
        precision = None if precision is None else Fraction(precision)
        kept = tuple(
            (e, c)
            for e, c in sorted(collected.items())
            if c != 0 and (precision is None or e < precision)
        )
        return cls(kept, precision)

    @classmethod
    def constant(cls, value: Fraction | int) -> "NovikovScalar":
        """Exact rational constant."""
        return cls.build({Fraction(0): Fraction(value)})

    @classmethod
    def monomial(cls, coeff: Fraction | int, exponent: Fraction | int) -> "NovikovScalar":
        """Exact ``coeff * T^exponent``."""
        return cls.build({Fraction(exponent): Fraction(coeff)})

    @classmethod
    def zero(cls, precision: Fraction | None = None) -> "NovikovScalar":
        """Zero, exact or ``O(T^precision)``."""
        return cls((), None if precision is None else Fraction(precision))

    @classmethod
    def one(cls) -> "NovikovScalar":
        return cls.constant(1)

    # -------------------------------------------------------------------------
    # Queries
    # -------------------------------------------------------------------------

    @property
    def valuation(self) -> Fraction | None:
        """Least stored exponent, else the precision (None for exact zero)."""
        if self.terms:
            return self.terms[0][0]
        return self.precision

    def is_zero(self) -> bool:
        """True if no term is visible (zero at this precision)."""
        return not self.terms

    def is_exact(self) -> bool:
        return self.precision is None

    def is_rational(self) -> bool:
        """Exact and supported on T^0 only."""
        return self.precision is None and all(e == 0 for e, _ in self.terms)

    def rational_value(self) -> Fraction:
        """The T^0 coefficient."""
        for exponent, coeff in self.terms:
            if exponent == 0:
                return coeff
        return Fraction(0)

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.terms)

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def __add__(self, other: "NovikovScalar") -> "NovikovScalar":
        precision = _min_precision(self.precision, other.precision)
        merged = dict(self.terms)
        for exponent, coeff in other.terms:
            merged[exponent] = merged.get(exponent, Fraction(0)) + coeff
        return NovikovScalar.build(merged, precision)

    def __neg__(self) -> "NovikovScalar":
        return NovikovScalar(tuple((e, -c) for e, c in self.terms), self.precision)

    def __sub__(self, other: "NovikovScalar") -> "NovikovScalar":
        return self + (-other)

    def __mul__(self, other: "NovikovScalar") -> "NovikovScalar":
        if (self.is_zero() and self.is_exact()) or (other.is_zero() and other.is_exact()):
            return NovikovScalar()
        precision = _min_precision(
            _plus(self.precision, other.valuation),
            _plus(other.precision, self.valuation),
        )
        product: dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exponent = e1 + e2
                if precision is not None and exponent >= precision:
                    continue
                product[exponent] = product.get(exponent, Fraction(0)) + c1 * c2
        return NovikovScalar.build(product, precision)

    def scale(self, factor: Fraction | int) -> "NovikovScalar":
        """Multiply by a rational number."""
        factor = Fraction(factor)
        if factor == 0:
            return NovikovScalar()
        return NovikovScalar(tuple((e, c * factor) for e, c in self.terms), self.precision)

    def shift(self, exponent: Fraction) -> "NovikovScalar":
        """Multiply by T^exponent."""
        return NovikovScalar(
            tuple((e + exponent, c) for e, c in self.terms),
            _plus(self.precision, exponent),
        )

    def truncate(self, precision: Fraction | None) -> "NovikovScalar":
        """Forget every exponent at or beyond ``precision``."""
        if precision is None:
            return self
        return NovikovScalar.build(self.terms, _min_precision(self.precision, precision))

    def t_log_derivative(self) -> "NovikovScalar":
        """T d/dT applied termwise."""
        return NovikovScalar.build(((e, e * c) for e, c in self.terms), self.precision)

    def invert(self, relative_precision: int = 20) -> "NovikovScalar":
        """
        Multiplicative inverse.

        Writes ``x = a T^v (1 + z)`` with ``z`` of positive valuation and sums
        the geometric series for ``(1 + z)^-1`` to the guaranteed precision.

        Args:
            relative_precision: Number of T-orders kept when x is exact

        Returns:
            y with ``x * y = 1 + O(T^q)``

        Raises:
            InversionAtZeroPrecision: If no term of x is visible
        """
        if not self.terms:
            raise InversionAtZeroPrecision(
                f"cannot invert {self}: leading term is below precision"
            )
        v, a = self.terms[0]
        if len(self.terms) == 1 and self.precision is None:
            return NovikovScalar.monomial(1 / a, -v)

        relative = Fraction(relative_precision)
        if self.precision is not None:
            relative = min(relative, self.precision - v)

        z = NovikovScalar.build(((e - v, c / a) for e, c in self.terms[1:]), relative)
        series = NovikovScalar.build({Fraction(0): Fraction(1)}, relative)
        power = series
        gap = z.terms[0][0] if z.terms else relative
        steps = int(relative / gap) + 1 if gap > 0 else 0
        for _ in range(steps):
            power = (power * (-z)).truncate(relative)
            if power.is_zero():
                break
            series = series + power
        return series.truncate(relative).scale(1 / a).shift(-v)

    def __truediv__(self, other: "NovikovScalar") -> "NovikovScalar":
        return self * other.invert()

    def __str__(self) -> str:
        from nchodge.scalars.expressions import format_scalar

        return format_scalar(self)
