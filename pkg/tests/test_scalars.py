"""Tests for Novikov scalars, coefficient rings, derivations and morphisms."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nchodge.errors import (
    DocumentError,
    IncompatibleDf,
    InversionAtZeroPrecision,
    NotFree,
    ParameterOutOfRange,
    UnknownSymbol,
)
from nchodge.scalars import (
    BulkRingDescriptor,
    BulkVariable,
    Derivation,
    Grading,
    NovikovScalar,
    RingElement,
    RingMorphismWithDerivation,
    TruncationPolicy,
    check_differential,
    format_element,
    format_scalar,
    koszul_sign,
    parse_element,
    parse_scalar,
    rotation_sign,
)
from nchodge.scalars.linalg import (
    determinant_valuation,
    in_span,
    kernel,
    rank,
    residue_rank,
    solve,
)

exponents = st.fractions(min_value=0, max_value=6, max_denominator=4)
coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=6)
scalars = st.dictionaries(exponents, coefficients, max_size=4).map(NovikovScalar.build)


def bulk_ring(**changes):
    base = dict(
        grading=Grading.INTEGER,
        variables=(BulkVariable("t", 0), BulkVariable("s", 1)),
        truncation=TruncationPolicy(Fraction(12), 2, 2, 4),
    )
    base.update(changes)
    return BulkRingDescriptor(**base)


# =============================================================================
# Novikov scalars
# =============================================================================


class TestNovikovScalar:
    """Tests for NovikovScalar arithmetic."""

    def test_build_merges_and_drops_zero_terms(self):
        """Test that equal exponents merge and zero coefficients vanish."""
        x = NovikovScalar.build([(Fraction(1), 2), (Fraction(1), -2), (Fraction(0), 3)])
        assert x.terms == ((Fraction(0), Fraction(3)),)

    def test_precision_of_sum_is_the_minimum(self):
        """Test that O(T^2) + O(T^5) is known up to T^2."""
        a = NovikovScalar.build({0: 1}, precision=2)
        b = NovikovScalar.build({1: 1}, precision=5)
        assert (a + b).precision == 2

    def test_product_precision_shifts_by_valuation(self):
        """Test that (1 + O(T^2)) * T is known up to T^3."""
        a = NovikovScalar.build({0: 1}, precision=2)
        product = a * NovikovScalar.monomial(1, 1)
        assert product.terms == ((Fraction(1), Fraction(1)),)
        assert product.precision == 3

    def test_inverse_of_one_minus_t(self):
        """Test the geometric series for (1 - T)^-1."""
        x = NovikovScalar.build({0: 1, 1: -1})
        y = x.invert(relative_precision=20)
        assert y.precision == 20
        assert len(y.terms) == 20
        product = x * y
        assert product.terms == ((Fraction(0), Fraction(1)),)
        assert product.precision == 20

    def test_inverse_of_monomial_is_exact(self):
        """Test that 2T^(1/2) inverts to (1/2)T^(-1/2) exactly."""
        y = NovikovScalar.monomial(2, Fraction(1, 2)).invert()
        assert y == NovikovScalar.monomial(Fraction(1, 2), Fraction(-1, 2))

    def test_inverting_zero_raises(self):
        """Test that an invisible leading term cannot be inverted."""
        with pytest.raises(InversionAtZeroPrecision):
            NovikovScalar.zero(precision=3).invert()

    def test_t_log_derivative(self):
        """Test T d/dT on 3T^(1/2)."""
        derived = NovikovScalar.monomial(3, Fraction(1, 2)).t_log_derivative()
        assert derived == NovikovScalar.monomial(Fraction(3, 2), Fraction(1, 2))

    @given(scalars, scalars, scalars)
    def test_ring_axioms(self, a, b, c):
        """Test associativity and distributivity on exact scalars."""
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a

    @given(scalars)
    def test_format_parse_round_trip(self, a):
        """Test that parsing the canonical text recovers the scalar."""
        assert parse_scalar(format_scalar(a)) == a


# =============================================================================
# Ring elements
# =============================================================================


class TestRingElement:
    """Tests for RingElement over rings with bulk variables."""

    def test_divided_power_product(self):
        """Test t * t = 2 t^[2]."""
        ring = bulk_ring()
        t = RingElement.variable(ring, "t")
        assert t * t == RingElement.variable(ring, "t", 2).scale(2)

    def test_bulk_degree_truncation(self):
        """Test that monomials above the bulk degree cap vanish."""
        ring = bulk_ring()
        t = RingElement.variable(ring, "t")
        assert (t * t * t).is_zero()

    def test_odd_variable_squares_to_zero(self):
        """Test s * s = 0 for an odd bulk variable."""
        ring = bulk_ring()
        s = RingElement.variable(ring, "s")
        assert (s * s).is_zero()

    def test_t_precision_truncation(self):
        """Test that T^13 is invisible in a ring truncated at T^12."""
        ring = bulk_ring()
        assert RingElement.t_power(ring, 13).is_zero()
        assert not RingElement.t_power(ring, 11).is_zero()

    def test_degree_of_inhomogeneous_element(self):
        """Test that t + s has no degree."""
        ring = bulk_ring()
        x = RingElement.variable(ring, "t") + RingElement.variable(ring, "s")
        assert x.degree() is None

    def test_specialize_bulk_zero(self):
        """Test that only the unit monomial survives specialization."""
        ring = bulk_ring()
        x = parse_element(ring, "2 + T*t")
        assert x.specialize_bulk_zero() == RingElement.constant(ring, 2)

    def test_filtration_positive(self):
        """Test the filtration ideal membership test."""
        ring = bulk_ring()
        assert parse_element(ring, "T^(1/2) + t").filtration_positive()
        assert not parse_element(ring, "1 + T").filtration_positive()

    def test_filtration_level(self):
        """Test the smallest bulk degree plus T-valuation over monomials."""
        ring = bulk_ring()
        assert parse_element(ring, "T^(1/2) + t").filtration_level() == Fraction(1, 2)
        assert parse_element(ring, "T*t + T^(3)").filtration_level() == 2
        assert RingElement.zero(ring).filtration_level() is None

    def test_reserved_symbol_rejected(self):
        """Test that T cannot be declared as a bulk variable."""
        with pytest.raises(ParameterOutOfRange):
            BulkRingDescriptor(variables=(BulkVariable("T", 0),))

    def test_negative_precision_rejected(self):
        with pytest.raises(ParameterOutOfRange):
            TruncationPolicy(Fraction(-1))


# =============================================================================
# Expressions
# =============================================================================


class TestExpressions:
    """Tests for the exact scalar expression grammar."""

    @pytest.mark.parametrize(
        "text",
        ["1 + T", "-T^(1/2)", "3/2*T^(1/2)*t^[2]", "-s + 2*t", "1 + T + O(T^(3))"],
    )
    def test_canonical_text_is_stable(self, text):
        """Test that canonical expressions format back to themselves."""
        ring = bulk_ring(truncation=TruncationPolicy(None, 2, 2, 4))
        assert format_element(parse_element(ring, text)) == text

    def test_products_and_signs(self):
        """Test operator handling in a mixed expression."""
        ring = bulk_ring()
        x = parse_element(ring, "2*T - -1 + t*T^(1/2)")
        expected = (
            RingElement.t_power(ring, 1, 2)
            + RingElement.one(ring)
            + RingElement.variable(ring, "t") * RingElement.t_power(ring, Fraction(1, 2))
        )
        assert x == expected

    def test_plain_power_of_variable(self):
        """Test that t^2 means the ordinary square."""
        ring = bulk_ring()
        assert parse_element(ring, "t^2") == parse_element(ring, "2*t^[2]")

    @pytest.mark.parametrize("text", ["1 +", "* T", "", "T^2", "2 3", "1 $ 2"])
    def test_syntax_errors(self, text):
        """Test that malformed expressions raise DocumentError."""
        with pytest.raises(DocumentError):
            parse_element(bulk_ring(), text)

    def test_bare_power_of_t_rejected(self):
        """Test that T^3 must be written T^(3)."""
        with pytest.raises(DocumentError, match=r"T\^\(q\)"):
            parse_element(bulk_ring(), "T*t + T^3")

    def test_unknown_symbol(self):
        """Test that undeclared names raise UnknownSymbol."""
        with pytest.raises(UnknownSymbol):
            parse_element(bulk_ring(), "q")


# =============================================================================
# Signs
# =============================================================================


class TestSigns:
    """Tests for Koszul signs."""

    def test_swap_two_odd(self):
        assert koszul_sign([1, 1], [1, 0]) == -1

    def test_swap_odd_and_even(self):
        assert koszul_sign([1, 2], [1, 0]) == 1

    def test_cyclic_rotation_of_three_odd(self):
        """Test that rotating three odd symbols agrees with rotation_sign."""
        assert koszul_sign([1, 1, 1], [2, 0, 1]) == rotation_sign([1, 1], [1]) == 1

    def test_invalid_permutation(self):
        with pytest.raises(ParameterOutOfRange):
            koszul_sign([1, 1], [0, 0])


# =============================================================================
# Linear algebra
# =============================================================================


class TestLinearAlgebra:
    """Tests for exact elimination over Q and the Novikov field."""

    def test_rational_rank_and_kernel(self, rationals):
        """Test a rank-one rational matrix."""
        one = RingElement.constant(rationals, 1)
        two = RingElement.constant(rationals, 2)
        four = RingElement.constant(rationals, 4)
        columns = [{0: one, 1: two}, {0: two, 1: four}]
        assert rank(columns, 2).rank == 1
        (vector,) = kernel(rationals, columns, 2)
        assert vector[1] == one
        assert vector[0] == RingElement.constant(rationals, -2)

    def test_novikov_rank(self, novikov):
        """Test that a T-multiple column does not raise the rank."""
        t = RingElement.t_power(novikov, 1)
        t2 = RingElement.t_power(novikov, 2)
        one = RingElement.one(novikov)
        assert rank([{0: t, 1: one}, {0: t2, 1: t}], 2).rank == 1

    def test_solve(self, rationals):
        """Test a particular solution of a diagonal system."""
        one = RingElement.one(rationals)
        target = {0: RingElement.constant(rationals, 3), 1: RingElement.constant(rationals, -1)}
        solution = solve(rationals, [{0: one}, {1: one}], 2, target)
        assert solution == {0: target[0], 1: target[1]}

    def test_solve_inconsistent(self, rationals):
        one = RingElement.one(rationals)
        assert solve(rationals, [{0: one}], 2, {1: one}) is None

    def test_determinant_valuation(self, novikov):
        """Test the T-valuation of diag(T, T^2)."""
        zero = RingElement.zero(novikov)
        t = RingElement.t_power(novikov, 1)
        t2 = RingElement.t_power(novikov, 2)
        assert determinant_valuation([[t, zero], [zero, t2]]) == 3
        assert determinant_valuation([[t, zero], [zero, zero]]) is None


class TestBulkLinearAlgebra:
    """Tests for elimination over rings with bulk variables."""

    def test_solve_keeps_bulk_dependence(self):
        """Test that 1 * x = t is solved by x = t."""
        ring = bulk_ring()
        t = RingElement.variable(ring, "t")
        solution = solve(ring, [{0: RingElement.one(ring)}], 1, {0: t})
        assert solution == {0: t}

    def test_solve_inverts_unit_pivot(self):
        """Test that (1 + t) x = 1 gives the truncated series 1 - t + t^2."""
        ring = bulk_ring()
        one = RingElement.one(ring)
        t = RingElement.variable(ring, "t")
        solution = solve(ring, [{0: one + t}], 1, {0: one})
        assert solution == {0: one - t + t * t}

    def test_bulk_ideal_entry_is_not_free(self):
        """Test that the rank of [[t]] is refused."""
        ring = bulk_ring()
        with pytest.raises(NotFree):
            rank([{0: RingElement.variable(ring, "t")}], 1)

    def test_free_image_with_bulk_entries(self):
        """Test [[t, 1]]: rank one with kernel vector (1, -t)."""
        ring = bulk_ring()
        one = RingElement.one(ring)
        t = RingElement.variable(ring, "t")
        columns = [{0: t}, {0: one}]
        assert rank(columns, 1).rank == 1
        (vector,) = kernel(ring, columns, 1)
        assert vector[0] == one
        assert vector[1] == -t
        assert in_span([{0: one}], 1, {0: t})

    def test_unsolvable_bulk_system(self):
        ring = bulk_ring()
        t = RingElement.variable(ring, "t")
        assert solve(ring, [{0: RingElement.one(ring)}], 2, {0: t, 1: t}) is None

    def test_determinant_over_bulk_ring(self):
        """Test that 1 - t^2 is a unit and t is not."""
        ring = bulk_ring()
        one = RingElement.one(ring)
        t = RingElement.variable(ring, "t")
        assert determinant_valuation([[one, t], [t, one]]) == 0
        assert determinant_valuation([[t]]) is None

    def test_residue_rank(self):
        ring = bulk_ring()
        one = RingElement.one(ring)
        t = RingElement.variable(ring, "t")
        assert residue_rank([{0: one + t}, {1: t}], 2) == 1


# =============================================================================
# Derivations and morphisms
# =============================================================================


class TestDerivation:
    """Tests for Derivation."""

    def test_d_log_t(self, novikov):
        """Test T d/dT on 3T^(1/2)."""
        d = Derivation.d_log_t(novikov)
        value = d.apply(RingElement.t_power(novikov, Fraction(1, 2), 3))
        assert value == {"dlogT": RingElement.t_power(novikov, Fraction(1, 2), Fraction(3, 2))}

    def test_standard_on_divided_power(self):
        """Test D(t^[2]) = t dt."""
        ring = bulk_ring()
        d = Derivation.standard(ring)
        value = d.apply(RingElement.variable(ring, "t", 2))
        assert value == {"dt": RingElement.variable(ring, "t")}

    def test_leibniz(self):
        """Test that the standard derivation has no Leibniz defect."""
        ring = bulk_ring()
        d = Derivation.standard(ring)
        x = parse_element(ring, "T*t")
        y = parse_element(ring, "1 + T^(1/2)*t")
        assert d.leibniz_defect(x, y) == {}

    def test_undeclared_label(self, novikov):
        with pytest.raises(UnknownSymbol):
            Derivation(ring=novikov, labels=(), t_log={"dlogT": Fraction(1)})


class TestRingDifferential:
    """Tests for check_differential."""

    def test_valid_differential(self):
        ring = BulkRingDescriptor(
            variables=(BulkVariable("a", 0), BulkVariable("b", 1)),
            differential=(("a", (("b", Fraction(1)),)),),
        )
        assert check_differential(ring) == []

    def test_square_nonzero(self):
        """Test that d(d(a)) != 0 is reported."""
        ring = BulkRingDescriptor(
            variables=(BulkVariable("a", 0), BulkVariable("b", 1), BulkVariable("c", 2)),
            differential=(("a", (("b", Fraction(1)),)), ("b", (("c", Fraction(1)),))),
        )
        problems = check_differential(ring)
        assert any("d(d(a))" in p for p in problems)


class TestRingMorphism:
    """Tests for RingMorphismWithDerivation."""

    def _symbol_ring(self):
        return BulkRingDescriptor(
            symbols=("r",), truncation=TruncationPolicy(Fraction(12), 2, 2, 4)
        )

    def test_symbol_to_t_power(self, novikov):
        """Test r^u -> T^(u kappa)."""
        source = self._symbol_ring()
        f = RingMorphismWithDerivation(
            source=source, target=novikov, exponent_map={"r": Fraction(1, 2)}
        )
        x = RingElement.symbol(source, "r") * RingElement.t_power(source, 1, 3)
        assert f.apply(x) == RingElement.t_power(novikov, Fraction(3, 2), 3)

    def test_compatible_df(self, novikov):
        """Test that Df(dlog r) = kappa dlogT is compatible with the derivations."""
        source = self._symbol_ring()
        one = RingElement.one(novikov)
        f = RingMorphismWithDerivation(
            source=source,
            target=novikov,
            exponent_map={"r": Fraction(2)},
            omega_map={"dlogT": {"dlogT": one}, "dlog_r": {"dlogT": one.scale(2)}},
        )
        f.require_compatible(Derivation.standard(source), Derivation.d_log_t(novikov))

    def test_incompatible_df(self, novikov):
        """Test that a wrong Df is rejected."""
        source = self._symbol_ring()
        one = RingElement.one(novikov)
        f = RingMorphismWithDerivation(
            source=source,
            target=novikov,
            exponent_map={"r": Fraction(2)},
            omega_map={"dlogT": {"dlogT": one}, "dlog_r": {"dlogT": one}},
        )
        assert f.incompatible_generators(
            Derivation.standard(source), Derivation.d_log_t(novikov)
        ) == ["r"]
        with pytest.raises(IncompatibleDf):
            f.require_compatible(Derivation.standard(source), Derivation.d_log_t(novikov))

    def test_compose_with_identity(self, novikov):
        """Test that composing with the identity of the target changes nothing."""
        source = self._symbol_ring()
        f = RingMorphismWithDerivation(
            source=source, target=novikov, exponent_map={"r": Fraction(1, 2)}
        )
        composite = f.compose(RingMorphismWithDerivation.identity(novikov))
        assert composite.target == novikov
        x = RingElement.symbol(source, "r") * RingElement.t_power(source, 1)
        assert composite.apply(x) == f.apply(x)

    def test_compose_not_composable(self, novikov):
        source = self._symbol_ring()
        f = RingMorphismWithDerivation(
            source=source, target=novikov, exponent_map={"r": Fraction(1, 2)}
        )
        with pytest.raises(UnknownSymbol):
            f.compose(f)

    def test_specialize_bulk_to_zero(self):
        """Test the quotient by the bulk ideal."""
        ring = bulk_ring()
        f = RingMorphismWithDerivation.specialize_bulk_to_zero(ring)
        x = parse_element(ring, "2 + T*t")
        assert f.apply(x) == RingElement.constant(f.target, 2)
