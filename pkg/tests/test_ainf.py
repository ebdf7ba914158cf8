"""Tests for curved A-infinity structures, units, bounding cochains and gauge families."""

from fractions import Fraction

import pytest

from nchodge.ainf import (
    AInfStructure,
    BoundingCochainAssignment,
    CochainVector,
    Generator,
    ModIdeal,
    base_change,
    check_ainf_relations,
    check_cohomological_units,
    check_maurer_cartan,
    check_strict_units,
    coboundary_family,
    deform_by_bounding_cochains,
    first_order_coboundary,
    gauge_transform,
    gerstenhaber_bracket,
    structure_cochain,
    unit_plus_name,
    unitalize,
    validate_gauge,
)
from nchodge.errors import (
    DegreeMismatch,
    NonconvergentSum,
    NotComposable,
    ParameterOutOfRange,
    UnknownSymbol,
)
from nchodge.hochschild import deformation_class
from nchodge.scalars import RingElement, RingMorphismWithDerivation


def broken_unit(structure: AInfStructure) -> AInfStructure:
    """Dual numbers with mu2(1, eps) = 2 eps."""
    mu = {k: dict(v) for k, v in structure.mu.items()}
    mu[("1", "eps")] = {"eps": RingElement.constant(structure.ring, 2)}
    return structure.with_mu(mu)


# =============================================================================
# Structure validation
# =============================================================================


class TestAInfStructure:
    """Tests for AInfStructure construction and validation."""

    def test_paths(self, dual_numbers):
        """Test that a one-object category has |gens|^k paths of length k."""
        assert len(list(dual_numbers.paths(3))) == 8
        assert list(dual_numbers.paths(0)) == [()]

    def test_non_composable_entry(self, rationals):
        """Test that a product of non-composable generators is rejected."""
        generators = [Generator("f", "A", "B", 0), Generator("g", "A", "B", 0)]
        with pytest.raises(NotComposable):
            AInfStructure(
                rationals,
                ["A", "B"],
                generators,
                {("f", "g"): {"f": RingElement.one(rationals)}},
            )

    def test_wrong_degree(self, rationals):
        """Test that mu2 of two degree-0 elements cannot land in degree 1."""
        generators = [Generator("1", "X", "X", 0), Generator("y", "X", "X", 1)]
        with pytest.raises(DegreeMismatch):
            AInfStructure(
                rationals, ["X"], generators, {("1", "1"): {"y": RingElement.one(rationals)}}
            )

    def test_curvature_outside_ideal(self, novikov_mod2):
        """Test that curvature with a T^0 coefficient is rejected."""
        generators = [Generator("e", "X", "X", 0)]
        with pytest.raises(NonconvergentSum):
            AInfStructure(
                novikov_mod2, ["X"], generators, {(): {"e": RingElement.one(novikov_mod2)}}
            )

    def test_duplicate_generator_names(self, rationals):
        with pytest.raises(UnknownSymbol):
            AInfStructure(
                rationals, ["X"], [Generator("a", "X", "X", 0), Generator("a", "X", "X", 0)], {}
            )

    def test_to_dict_lists_entries(self, dual_numbers):
        data = dual_numbers.to_dict()
        assert data["objects"] == ["X"]
        assert data["units"] == {"X": "1"}
        assert {"arity": 2, "inputs": ["1", "eps"], "output": "eps", "coeff": "1"} in data["mu"]


# =============================================================================
# Relations and units
# =============================================================================


class TestRelations:
    """Tests for the A-infinity relation checker."""

    @pytest.mark.parametrize(
        "fixture", ["field_structure", "dual_numbers", "matrix_two"]
    )
    def test_associative_models_pass(self, fixture, request):
        """Test that the associative built-in models satisfy the relations."""
        report = check_ainf_relations(request.getfixturevalue(fixture))
        assert report.passed
        assert report.violations == []
        assert report.unchecked_tail is None

    def test_exterior_algebra_passes(self, exterior_one):
        assert check_ainf_relations(exterior_one.structure).passed

    def test_curved_clifford_passes(self, curved_clifford):
        """Test that curvature T*e is central for x^2 = e."""
        assert check_ainf_relations(curved_clifford.structure).passed

    def test_broken_unit_law_fails(self, dual_numbers):
        """Test that mu2(1, eps) = 2 eps breaks associativity on (1, 1, eps)."""
        report = check_ainf_relations(broken_unit(dual_numbers))
        assert not report.passed
        assert ("1", "1", "eps") in [v.inputs for v in report.violations]

    def test_report_serializes(self, dual_numbers):
        data = check_ainf_relations(broken_unit(dual_numbers)).to_dict()
        assert data["passed"] is False
        assert data["violations"]


class TestUnits:
    """Tests for strict and cohomological units."""

    def test_strict_units_pass(self, matrix_two):
        report = check_strict_units(matrix_two)
        assert report.applicable
        assert report.passed

    def test_strict_units_detect_broken_law(self, dual_numbers):
        report = check_strict_units(broken_unit(dual_numbers))
        assert not report.passed
        assert any("mu2(1, eps)" in f for f in report.failures)

    def test_no_units_not_applicable(self, dual_numbers):
        """Test that a structure without designated units is skipped."""
        bare = dual_numbers.with_mu(dual_numbers.mu, units={})
        report = check_strict_units(bare)
        assert not report.applicable
        assert report.passed

    def test_cohomological_units(self, exterior_one):
        report = check_cohomological_units(exterior_one.structure)
        assert report.applicable
        assert report.passed

    def test_cohomological_units_skip_curved(self, curved_clifford):
        assert not check_cohomological_units(curved_clifford.structure).applicable


class TestUnitalize:
    """Tests for adjoining formal units."""

    def test_unitalized_structure(self, dual_numbers):
        """Test that e+ is a strict unit and the relations still hold."""
        plus = unitalize(dual_numbers)
        assert plus.units == {"X": unit_plus_name("X")}
        assert len(plus.generators) == 3
        assert check_strict_units(plus).passed
        assert check_ainf_relations(plus).passed

    def test_unitalize_twice_rejected(self, dual_numbers):
        with pytest.raises(ParameterOutOfRange):
            unitalize(unitalize(dual_numbers))


# =============================================================================
# Bounding cochains
# =============================================================================


class TestBoundingCochains:
    """Tests for the Maurer-Cartan equation and deformation by b."""

    def test_curved_clifford_bounding_cochain(self, curved_clifford):
        """Test that b = T^(1/2) x cancels the curvature T*e."""
        report = check_maurer_cartan(curved_clifford.structure, curved_clifford.bounding)
        assert report.passed
        assert report.residuals == {}

    def test_zero_cochain_leaves_curvature(self, curved_clifford):
        """Test that b = 0 reports the curvature as residual."""
        structure = curved_clifford.structure
        report = check_maurer_cartan(structure, BoundingCochainAssignment.zero(structure))
        assert not report.passed
        assert report.residuals["X"] == {"e": RingElement.t_power(structure.ring, 1)}

    def test_clifford_deformation(self, clifford):
        """Test that deforming by b = T x gives x*x = T^3 and no curvature."""
        structure = clifford.structure
        assert check_maurer_cartan(structure, clifford.bounding).passed
        deformed = deform_by_bounding_cochains(structure, clifford.bounding)
        assert not deformed.is_curved()
        assert deformed.value(("x1", "x1")) == {"1": RingElement.t_power(structure.ring, 3)}
        assert deformed.value(("x1",)) == {}

    def test_deformed_curved_clifford_is_flat(self, curved_clifford):
        deformed = deform_by_bounding_cochains(
            curved_clifford.structure, curved_clifford.bounding
        )
        assert not deformed.is_curved()
        assert check_ainf_relations(deformed).passed

    def test_even_bounding_cochain_rejected(self, curved_clifford):
        """Test that b must have odd degree."""
        structure = curved_clifford.structure
        with pytest.raises(DegreeMismatch):
            BoundingCochainAssignment(
                structure, {"X": {"e": RingElement.t_power(structure.ring, 1)}}
            )

    def test_bounding_cochain_outside_ideal(self, curved_clifford):
        """Test that b = x is not in the filtration ideal."""
        structure = curved_clifford.structure
        with pytest.raises(NonconvergentSum):
            BoundingCochainAssignment(structure, {"X": {"x": RingElement.one(structure.ring)}})

    def test_mod_bulk_ideal(self, curved_clifford):
        """Test that the mod-ideal tag round-trips through to_dict."""
        structure = curved_clifford.structure
        assignment = BoundingCochainAssignment(
            structure,
            {"X": {"x": RingElement.t_power(structure.ring, Fraction(1, 2))}},
            ModIdeal.BULK,
        )
        assert assignment.to_dict()["mod_ideal"] == "bulk"
        assert check_maurer_cartan(structure, assignment).mod_ideal == "bulk"


# =============================================================================
# Base change and gauge
# =============================================================================


class TestBaseChangeAndGauge:
    """Tests for base change, gauge cochains and coboundary families."""

    def test_identity_base_change(self, curved_clifford):
        structure = curved_clifford.structure
        changed = base_change(structure, RingMorphismWithDerivation.identity(structure.ring))
        assert changed.same_constants(structure)

    def test_gauge_needs_arity_two(self, exterior_one):
        structure = exterior_one.structure
        psi = CochainVector({("x1",): {"x1": RingElement.one(structure.ring)}}, parity=0)
        with pytest.raises(ParameterOutOfRange):
            validate_gauge(structure, psi)

    def test_gauge_degree_checked(self, exterior_one):
        """Test that psi(x1, x1) must land in degree 1."""
        structure = exterior_one.structure
        psi = CochainVector({("x1", "x1"): {"1": RingElement.one(structure.ring)}}, parity=0)
        with pytest.raises(DegreeMismatch):
            validate_gauge(structure, psi)

    def test_gauge_transform_keeps_relations(self, exterior_one):
        """Test that transporting along id + psi preserves the relations."""
        structure = exterior_one.structure
        psi = CochainVector({("x1", "x1"): {"x1": RingElement.one(structure.ring)}}, parity=0)
        transformed = gauge_transform(structure, psi)
        assert transformed.truncated
        assert check_ainf_relations(transformed).passed

    def test_coboundary_family_class_vanishes(self, exterior_one):
        """Test that mu + t*delta(psi) has a closed, null-homologous first-order class."""
        structure = exterior_one.structure
        psi = CochainVector({("x1", "x1"): {"x1": RingElement.one(structure.ring)}}, parity=0)
        family = coboundary_family(structure, psi)
        report = deformation_class(family, "t", arity_bound=2)
        assert report.closed
        assert report.null_homologous

    def test_first_order_coboundary_is_bracket(self, exterior_one):
        """Test that delta(psi) is the odd cochain [mu, psi]."""
        structure = exterior_one.structure
        psi = CochainVector({("x1", "x1"): {"x1": RingElement.one(structure.ring)}}, parity=0)
        delta = first_order_coboundary(structure, psi)
        assert delta.parity == 1
        bracket = gerstenhaber_bracket(structure, structure_cochain(structure), psi)
        assert (delta - bracket).is_zero()

    def test_first_order_coboundary_needs_even_cochain(self, exterior_one):
        structure = exterior_one.structure
        psi = CochainVector({("x1", "x1"): {"1": RingElement.one(structure.ring)}}, parity=1)
        with pytest.raises(ParameterOutOfRange):
            first_order_coboundary(structure, psi)


# =============================================================================
# Gerstenhaber bracket
# =============================================================================


class TestGerstenhaberBracket:
    """Tests for the bracket on Hochschild cochains."""

    def test_mu_brackets_to_zero(self, dual_numbers):
        """Test that [mu, mu] = 0 for an uncurved structure."""
        mu = structure_cochain(dual_numbers)
        assert gerstenhaber_bracket(dual_numbers, mu, mu).is_zero()

    def test_graded_antisymmetry(self, exterior_one):
        """Test that [mu, psi] = -[psi, mu] for even psi."""
        structure = exterior_one.structure
        mu = structure_cochain(structure)
        psi = CochainVector({("x1", "x1"): {"x1": RingElement.one(structure.ring)}}, parity=0)
        left = gerstenhaber_bracket(structure, mu, psi)
        right = gerstenhaber_bracket(structure, psi, mu)
        assert left.parity == right.parity == 1
        assert (left + right).is_zero()
