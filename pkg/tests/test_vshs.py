"""Tests for VSHS data, axiom checks, morphisms, splittings and miniversality."""

from dataclasses import replace

import pytest

from nchodge.cyclic import PairingValue
from nchodge.errors import DegreeMismatch, NotASection, RankMismatch
from nchodge.models import ModelKind, ModelSpec, build_model
from nchodge.scalars import BulkRingDescriptor, Derivation, Grading, RingElement
from nchodge.vshs import (
    CandidateMorphism,
    assemble_from_category,
    build_quantum_like_connection,
    check_miniversal,
    check_morphism,
    check_opposite_subspace,
    check_vshs,
    group_algebra_toy,
    identity_morphism,
    mukai_sign,
    projective_line_toy,
    trivial_vshs,
    u_constant_matrix,
)


def u_entry(vshs, coefficients):
    return PairingValue(vshs.ring, coefficients, vshs.u_max)


# =============================================================================
# Axioms
# =============================================================================


class TestCheckVSHS:
    """Tests for check_vshs."""

    @pytest.mark.parametrize(
        "vshs",
        [projective_line_toy(), projective_line_toy(quantum=False), group_algebra_toy()],
        ids=["quantum", "classical", "group_algebra"],
    )
    def test_toys_pass(self, vshs):
        report = check_vshs(vshs)
        assert report.passed
        assert report.polarized
        assert report.violations == []

    def test_trivial(self, novikov):
        assert check_vshs(trivial_vshs(novikov)).passed

    def test_non_self_adjoint_product_breaks_covariance(self, novikov_mod2):
        """Test that M = E11 is not self-adjoint for the hyperbolic pairing."""
        zero, one = RingElement.zero(novikov_mod2), RingElement.one(novikov_mod2)
        vshs = build_quantum_like_connection(
            Derivation.d_log_t(novikov_mod2),
            basis=("a", "b"),
            degrees=(0, 0),
            product_tables={"dlogT": [[one, zero], [zero, zero]]},
            pairing=[[zero, one], [one, zero]],
        )
        report = check_vshs(vshs)
        assert report.leibniz
        assert report.graded
        assert not report.covariance
        assert {v.check for v in report.violations} == {"covariance"}

    def test_ungraded_pairing(self):
        """Test that <1, 1> = 3 violates the pairing degree."""
        base = projective_line_toy(quantum=False)
        ring = base.ring
        three, one, zero = (
            RingElement.constant(ring, 3),
            RingElement.one(ring),
            RingElement.zero(ring),
        )
        vshs = replace(base, pairing=u_constant_matrix([[three, one], [one, zero]], base.u_max))
        report = check_vshs(vshs)
        assert report.covariance
        assert not report.graded
        assert any(v.check == "graded_pairing" and (v.row, v.column) == (0, 0) for v in report.violations)

    def test_product_table_degree_checked(self):
        """Test that p*1 = 1 does not shift degree by two."""
        ring = BulkRingDescriptor.novikov(Grading.INTEGER, 12)
        zero, one = RingElement.zero(ring), RingElement.one(ring)
        with pytest.raises(DegreeMismatch):
            build_quantum_like_connection(
                Derivation.d_log_t(ring),
                basis=("1", "p"),
                degrees=(0, 2),
                product_tables={"dlogT": [[one, zero], [zero, zero]]},
                pairing=[[zero, one], [one, zero]],
            )

    def test_report_serializes(self):
        data = check_vshs(projective_line_toy()).to_dict()
        assert data["passed"] is True
        assert data["truncation"]["u_max"] == 2


# =============================================================================
# Morphisms
# =============================================================================


class TestCheckMorphism:
    """Tests for check_morphism."""

    def test_identity(self):
        vshs = projective_line_toy()
        report = check_morphism(identity_morphism(vshs), vshs, vshs, require_isomorphism=True)
        assert report.passed
        assert report.isomorphism is True

    def test_scaling_breaks_pairing(self):
        """Test that 2·id intertwines the connection but scales the pairing by 4."""
        vshs = projective_line_toy()
        two, zero = RingElement.constant(vshs.ring, 2), RingElement.zero(vshs.ring)
        candidate = CandidateMorphism(u_constant_matrix([[two, zero], [zero, two]], vshs.u_max))
        report = check_morphism(candidate, vshs, vshs)
        assert report.connection_intertwined
        assert not report.pairing_intertwined

    def test_expected_sign(self):
        """Test that -id pairs to +<,> while id with sign -1 fails."""
        vshs = group_algebra_toy()
        minus = RingElement.constant(vshs.ring, -1)
        zero = RingElement.zero(vshs.ring)
        negated = CandidateMorphism(u_constant_matrix([[minus, zero], [zero, minus]], vshs.u_max))
        assert check_morphism(negated, vshs, vshs).passed
        flipped = CandidateMorphism(identity_morphism(vshs).matrix, expected_sign=-1)
        assert not check_morphism(flipped, vshs, vshs).pairing_intertwined

    def test_wrong_shape(self):
        vshs = projective_line_toy()
        candidate = CandidateMorphism([[u_entry(vshs, {}), u_entry(vshs, {})]])
        with pytest.raises(RankMismatch):
            check_morphism(candidate, vshs, vshs)

    def test_mukai_sign(self):
        assert [mukai_sign(n) for n in range(4)] == [1, -1, -1, 1]
        vshs = group_algebra_toy()
        assert CandidateMorphism.with_mukai_sign(identity_morphism(vshs).matrix, 1).expected_sign == -1


# =============================================================================
# Splittings and miniversality
# =============================================================================


class TestOppositeSubspace:
    """Tests for check_opposite_subspace."""

    def test_constant_splitting(self):
        vshs = group_algebra_toy()
        report = check_opposite_subspace(vshs, identity_morphism(vshs).matrix)
        assert report.passed

    def test_non_isotropic(self):
        """Test that sigma(e_2) = e_2 + u e_1 pairs non-constantly."""
        vshs = group_algebra_toy()
        one = RingElement.one(vshs.ring)
        splitting = [
            [u_entry(vshs, {0: one}), u_entry(vshs, {1: one})],
            [u_entry(vshs, {}), u_entry(vshs, {0: one})],
        ]
        report = check_opposite_subspace(vshs, splitting)
        assert report.complementary
        assert report.graded
        assert not report.isotropic

    def test_not_a_section(self):
        vshs = group_algebra_toy()
        two = RingElement.constant(vshs.ring, 2)
        splitting = [
            [u_entry(vshs, {0: two}), u_entry(vshs, {})],
            [u_entry(vshs, {}), u_entry(vshs, {0: two})],
        ]
        with pytest.raises(NotASection):
            check_opposite_subspace(vshs, splitting)


class TestMiniversality:
    """Tests for check_miniversal."""

    def test_unit_section(self):
        """Test that the unit section of Z/2 is miniversal and dilaton-shiftable."""
        vshs = group_algebra_toy()
        section = [u_entry(vshs, {0: RingElement.one(vshs.ring)}), u_entry(vshs, {})]
        report = check_miniversal(vshs, section)
        assert report.bijective
        assert report.rank == 2
        assert report.dilaton_shift

    def test_zero_section(self):
        vshs = group_algebra_toy()
        report = check_miniversal(vshs, [u_entry(vshs, {}), u_entry(vshs, {})])
        assert not report.bijective
        assert report.rank == 0
        assert not report.dilaton_shift

    def test_too_few_directions(self):
        vshs = group_algebra_toy()
        section = [u_entry(vshs, {0: RingElement.one(vshs.ring)}), u_entry(vshs, {})]
        report = check_miniversal(vshs, section, tangent_labels=["dt0"])
        assert not report.passed


# =============================================================================
# End-to-end
# =============================================================================


class TestAssembleFromCategory:
    """Tests for the categorical VSHS pipeline."""

    def test_exterior_algebra(self):
        """Test that Λ(x) yields a VSHS whose identity is an isomorphism."""
        ring = BulkRingDescriptor.novikov(Grading.INTEGER, 12, length_max=2, u_max=1)
        structure = build_model(ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=1, ring=ring)).structure
        vshs = assemble_from_category(
            structure, Derivation.d_log_t(ring), degrees=(0, 0), length_max=2, u_max=1
        )
        assert vshs.rank >= 1
        assert vshs.diagnostics["descends"]
        assert check_vshs(vshs).passed
        assert check_morphism(identity_morphism(vshs), vshs, vshs, require_isomorphism=True).passed
