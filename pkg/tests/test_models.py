"""Tests for the built-in models, mutations and the brute-force oracle."""

from fractions import Fraction

import pytest

from nchodge.ainf import (
    BoundingCochainAssignment,
    check_ainf_relations,
    check_maurer_cartan,
    check_strict_units,
)
from nchodge.config import get_settings
from nchodge.cyclic import hc_minus_ranks, mukai_pairing
from nchodge.errors import ParameterOutOfRange, TooLarge
from nchodge.hochschild import ChainVector, ComplexKind, HochschildComplex, homology_ranks
from nchodge.models import (
    Constraint,
    ModelKind,
    ModelSpec,
    NaiveHochschild,
    OracleCaps,
    OracleQuantity,
    brute_force_oracle,
    build_model,
    constrained_entries,
    exterior_algebra,
    mutations,
    standard_models,
)
from nchodge.scalars import BulkRingDescriptor, Grading, RingElement


class TestModelSpec:
    """Tests for ModelSpec names and serialization."""

    @pytest.mark.parametrize(
        "spec,name",
        [
            (ModelSpec(ModelKind.FIELD), "field"),
            (ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=2), "exterior_algebra(2)"),
            (ModelSpec(ModelKind.DUAL_NUMBERS, t_weights=(Fraction(1),)), "dual_numbers(T^1)"),
            (ModelSpec(ModelKind.RANDOM_DGA, seed=3), "random_dga(seed=3, dims=[2, 2])"),
        ],
    )
    def test_names(self, spec, name):
        assert spec.name == name

    def test_to_dict(self):
        data = ModelSpec(ModelKind.CLIFFORD_DEFORMATION, t_weights=(Fraction(3, 2),)).to_dict()
        assert data["kind"] == "clifford_deformation"
        assert data["t_weights"] == ["3/2"]


class TestBuilders:
    """Tests for the model builders."""

    @pytest.mark.parametrize("spec", standard_models(), ids=lambda s: s.name)
    def test_standard_models_satisfy_relations(self, spec):
        assert check_ainf_relations(build_model(spec).structure).passed

    def test_matrix_algebra_basis(self, matrix_two):
        assert [g.name for g in matrix_two.generators] == ["1", "H2", "E12", "E21"]
        assert matrix_two.value(("E12", "E21")) == {
            "1": RingElement.one(matrix_two.ring),
            "H2": RingElement.constant(matrix_two.ring, -1),
        }

    def test_exterior_trace_is_top_coefficient(self):
        model = build_model(ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=2))
        assert list(model.trace) == [("x1x2",)]

    def test_random_dga_is_seeded(self):
        """Test that the same seed gives the same structure constants."""
        first = build_model(ModelSpec(ModelKind.RANDOM_DGA, seed=5)).structure
        second = build_model(ModelSpec(ModelKind.RANDOM_DGA, seed=5)).structure
        assert first.to_dict() == second.to_dict()
        assert check_ainf_relations(first).passed

    @pytest.mark.parametrize(
        "spec",
        [
            ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=5),
            ModelSpec(ModelKind.CLIFFORD_DEFORMATION, n=2),
            ModelSpec(ModelKind.CLIFFORD_DEFORMATION, t_weights=(Fraction(-1),)),
            ModelSpec(ModelKind.RANDOM_DGA, dims=(7, 1)),
            ModelSpec(ModelKind.CURVED_CLIFFORD, ring=BulkRingDescriptor.novikov(Grading.INTEGER)),
        ],
        ids=["exterior_too_big", "clifford_n2", "negative_weight", "layer_too_big", "wrong_grading"],
    )
    def test_out_of_range(self, spec):
        with pytest.raises(ParameterOutOfRange):
            build_model(spec)

    def test_built_model_to_dict(self, curved_clifford):
        data = curved_clifford.to_dict()
        assert data["spec"]["kind"] == "curved_clifford"
        assert data["bounding_cochains"] is not None
        assert data["trace"] is None

    def test_per_generator_higher_products_do_not_combine(self, novikov_mod2):
        """Test that Clifford products on both x1 and x2 break the relations.

        On (x1, x1, x1, x2) the term mu2(mu3(x1, x1, x1), x2) = T^2 x2 has nothing to
        cancel against.
        """
        structure, _ = exterior_algebra(novikov_mod2, 2)
        mu = {k: dict(v) for k, v in structure.mu.items()}
        for x in ("x1", "x2"):
            mu[(x,) * 3] = {"1": RingElement.t_power(novikov_mod2, 2)}
            mu[(x,) * 4] = {"1": RingElement.t_power(novikov_mod2, 1, -2)}
            mu[(x,) * 5] = {"1": RingElement.one(novikov_mod2)}
        assert not check_ainf_relations(structure.with_mu(mu)).passed


# =============================================================================
# Mutations
# =============================================================================


class TestMutations:
    """Tests for single-constant perturbations."""

    def test_constrained_entries(self, dual_numbers):
        assert constrained_entries(dual_numbers) == [
            (("1", "1"), "1", Constraint.UNIT),
            (("1", "eps"), "eps", Constraint.UNIT),
            (("eps", "1"), "eps", Constraint.UNIT),
        ]

    def test_every_mutation_is_caught(self, dual_numbers):
        """Test that each perturbed unit law fails the strict unit check."""
        for mutation in mutations(dual_numbers, count=6, seed=1):
            assert not check_strict_units(mutation.structure).passed

    def test_matrix_products_are_associativity_constrained(self, matrix_two):
        found = {
            (entry.inputs, entry.output)
            for entry in constrained_entries(matrix_two)
            if entry.constraint == Constraint.ASSOCIATIVITY
        }
        assert found == {
            (("E12", "E21"), "1"),
            (("E12", "E21"), "H2"),
            (("E21", "E12"), "H2"),
            (("E12", "H2"), "E12"),
            (("H2", "E21"), "E21"),
            (("H2", "H2"), "H2"),
        }

    def test_associativity_mutations_break_relations(self, matrix_two):
        """Test that every perturbed non-unit product of M_2 fails the A-infinity relations."""
        found = [
            m
            for m in mutations(matrix_two, count=24, seed=2)
            if m.constraint == Constraint.ASSOCIATIVITY
        ]
        assert len(found) >= 6
        for mutation in found:
            assert not check_ainf_relations(mutation.structure).passed, mutation.description

    @pytest.mark.parametrize(
        "spec",
        [
            ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=2),
            ModelSpec(ModelKind.RANDOM_DGA, seed=7),
            ModelSpec(ModelKind.DUAL_NUMBERS, t_weights=(Fraction(1),)),
        ],
        ids=lambda s: s.name,
    )
    def test_rescalable_products_are_not_constrained(self, spec):
        """Test that products whose rescaling stays associative are left alone."""
        entries = constrained_entries(build_model(spec).structure)
        assert all(entry.constraint == Constraint.UNIT for entry in entries)

    def test_clifford_higher_products_pinned_by_maurer_cartan(self, clifford):
        entries = constrained_entries(clifford.structure, clifford.bounding)
        pinned = {e.inputs for e in entries if e.constraint == Constraint.MAURER_CARTAN}
        assert pinned == {("x1",) * 3, ("x1",) * 4, ("x1",) * 5}
        assert constrained_entries(clifford.structure) == [
            e for e in entries if e.constraint == Constraint.UNIT
        ]

    def test_maurer_cartan_mutations_are_caught(self, clifford):
        """Test that a shifted higher product keeps the relations but breaks the MC equation."""
        found = [
            m
            for m in mutations(clifford.structure, count=12, bounding=clifford.bounding)
            if m.constraint == Constraint.MAURER_CARTAN
        ]
        assert found
        for mutation in found:
            assert check_ainf_relations(mutation.structure).passed
            assignment = BoundingCochainAssignment(
                mutation.structure, clifford.bounding.per_object, clifford.bounding.mod_ideal
            )
            assert not check_maurer_cartan(mutation.structure, assignment).passed

    def test_cancelling_shift_skipped(self, exterior_one):
        """Test that mu2(x1, 1) = -x1 is never shifted to zero."""
        found = mutations(exterior_one.structure, count=6)
        assert len(found) == 6
        assert all(not m.value.is_zero() for m in found)

    def test_description(self, dual_numbers):
        (mutation,) = mutations(dual_numbers, count=1)
        assert mutation.description == "mu['1', '1'] -> 1: 1 => 2"
        assert mutation.to_dict()["value"] == "2"
        assert mutation.to_dict()["constraint"] == "unit"

    def test_needs_units(self, dual_numbers):
        bare = dual_numbers.with_mu(dual_numbers.mu, units={})
        with pytest.raises(ParameterOutOfRange):
            mutations(bare)


# =============================================================================
# Oracle
# =============================================================================


class TestOracle:
    """Tests for brute_force_oracle against the optimized code paths."""

    def test_naive_words(self, field_structure):
        naive = NaiveHochschild(field_structure, length_max=3)
        assert naive.words(2) == [("1", "1", "1")]

    def test_hh_field(self, field_structure):
        caps = OracleCaps(degrees=(0, 2), length_max=4)
        table = brute_force_oracle(field_structure, OracleQuantity.HH_RANKS, caps)
        assert table.ranks == {0: 1, 1: 0, 2: 0}

    def test_hh_dual_numbers_agree(self, dual_numbers):
        caps = OracleCaps(degrees=(0, 3), length_max=4)
        table = brute_force_oracle(dual_numbers, "hh_ranks", caps)
        report = homology_ranks(dual_numbers, ComplexKind.HOCHSCHILD, (0, 3), length_max=4)
        assert table.ranks == report.ranks

    def test_hc_agrees(self, field_structure):
        caps = OracleCaps(degrees=(0, 2), length_max=2, u_max=1)
        table = brute_force_oracle(field_structure, OracleQuantity.HC_RANKS, caps)
        assert table.ranks == hc_minus_ranks(field_structure, (0, 2), length_max=2, u_max=1).ranks

    def test_mukai_gram(self, dual_numbers):
        """Test the dense Gram matrix of k[eps]/eps^2 and its agreement with the chain pairing."""
        table = brute_force_oracle(dual_numbers, OracleQuantity.MUKAI_GRAM)
        assert table.labels == ["1", "eps"]
        assert table.gram == [[Fraction(-2), Fraction(0)], [Fraction(0), Fraction(0)]]
        ring = dual_numbers.ring
        complex_ = HochschildComplex(dual_numbers, nonunital=True, length_max=0)
        one = ChainVector.word(("1",), RingElement.one(ring))
        assert mukai_pairing(complex_, one, one) == table.gram_elements(ring)[0][0]

    def test_curved_rejected(self, curved_clifford):
        with pytest.raises(ParameterOutOfRange):
            brute_force_oracle(curved_clifford.structure, OracleQuantity.HH_RANKS)

    def test_dimension_cap(self, dual_numbers, monkeypatch):
        monkeypatch.setenv("NCHODGE_ORACLE_MAX_DIMENSION", "3")
        get_settings.cache_clear()
        with pytest.raises(TooLarge):
            brute_force_oracle(dual_numbers, OracleQuantity.HH_RANKS, OracleCaps(length_max=4))
