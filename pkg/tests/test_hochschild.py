"""Tests for Hochschild complexes, homology ranks and chain-level operations."""

from fractions import Fraction

import pytest

from nchodge.ainf import BoundingCochainAssignment, CochainVector
from nchodge.errors import ParameterOutOfRange
from nchodge.hochschild import (
    ChainVector,
    ComplexKind,
    HochschildComplex,
    Sector,
    cap_product,
    degree_window,
    format_word,
    homology_ranks,
    homology_representatives,
    is_boundary,
    nonunital_comparison,
    pushforward_along_f,
    sector_of,
    solve_mod_boundaries,
)
from nchodge.models import field_model
from nchodge.scalars import (
    BulkRingDescriptor,
    BulkVariable,
    Grading,
    RingElement,
    TruncationPolicy,
)


def word_chain(ring, *letters):
    return ChainVector.word(letters, RingElement.one(ring))


# =============================================================================
# Words
# =============================================================================


class TestWords:
    """Tests for word formatting, sectors and normal forms."""

    def test_format_word(self):
        assert format_word(("x", "y", "z")) == "x[y|z]"
        assert format_word(("e+:X", "a", "b")) == "e+[a|b]"
        assert format_word(("1",)) == "1[]"

    def test_sector(self):
        assert sector_of(("e+:X", "a")) is Sector.WEDGE
        assert sector_of(("a", "b")) is Sector.VEE

    def test_unit_only_in_leading_wedge_position(self, dual_numbers):
        """Test the normal words of the non-unital complex."""
        complex_ = HochschildComplex(dual_numbers, nonunital=True, length_max=3)
        assert complex_.is_normal(("e+:X", "eps"))
        assert not complex_.is_normal(("e+:X",))
        assert not complex_.is_normal(("eps", "e+:X"))

    def test_degree_counts_bar_entries(self, exterior_one):
        """Test deg x0[x1|...|xs] = s - sum |x_i|."""
        complex_ = HochschildComplex(exterior_one.structure, length_max=3)
        assert complex_.degree(("1", "x1", "x1")) == 0
        assert complex_.degree(("x1",)) == -1

    def test_negative_length_rejected(self, dual_numbers):
        with pytest.raises(ParameterOutOfRange):
            HochschildComplex(dual_numbers, length_max=-1)


# =============================================================================
# Differentials
# =============================================================================


class TestDifferentials:
    """Tests for b and Connes' B."""

    @pytest.mark.parametrize("nonunital", [False, True])
    def test_b_squared_exterior(self, exterior_one, nonunital):
        structure = exterior_one.structure
        complex_ = HochschildComplex(structure, nonunital=nonunital, length_max=5)
        x = word_chain(structure.ring, "x1", "x1", "1", "x1")
        assert complex_.b(complex_.b(x)).is_zero()

    def test_b_squared_curved(self, curved_clifford):
        """Test that the curved differential squares to zero below the length cap."""
        structure = curved_clifford.structure
        complex_ = HochschildComplex(structure, length_max=6)
        x = word_chain(structure.ring, "x", "x", "e", "x")
        assert complex_.b(complex_.b(x)).is_zero()

    def test_b_on_field(self, field_structure):
        """Test b(1[1]) = 0 and b(1[1|1]) = ±1[1]."""
        ring = field_structure.ring
        complex_ = HochschildComplex(field_structure, length_max=4)
        assert complex_.b(word_chain(ring, "1", "1")).is_zero()
        image = complex_.b(word_chain(ring, "1", "1", "1"))
        assert image.words() == [("1", "1")]

    def test_connes_b_needs_nonunital(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, length_max=4)
        with pytest.raises(ParameterOutOfRange):
            complex_.connes_b(word_chain(dual_numbers.ring, "eps"))

    def test_connes_b_identities(self, dual_numbers):
        """Test B^2 = 0 and bB + Bb = 0 on the non-unital complex."""
        complex_ = HochschildComplex(dual_numbers, nonunital=True, length_max=5)
        x = word_chain(dual_numbers.ring, "eps", "eps", "1")
        assert complex_.connes_b(complex_.connes_b(x)).is_zero()
        total = complex_.b(complex_.connes_b(x)) + complex_.connes_b(complex_.b(x))
        assert total.is_zero()

    def test_connes_b_kills_wedge(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, nonunital=True, length_max=4)
        assert complex_.connes_b(word_chain(dual_numbers.ring, "e+:X", "eps")).is_zero()

    def test_connes_b_lands_in_wedge(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, nonunital=True, length_max=4)
        image = complex_.connes_b(word_chain(dual_numbers.ring, "eps", "eps"))
        assert all(sector_of(w) is Sector.WEDGE for w in image.words())


# =============================================================================
# Homology
# =============================================================================


class TestHomologyRanks:
    """Tests for homology_ranks."""

    def test_dual_numbers(self, dual_numbers):
        """Test HH_* of k[eps]/eps^2: 2, 1, 1, 1, 1."""
        report = homology_ranks(dual_numbers, ComplexKind.HOCHSCHILD, (0, 4), length_max=6)
        assert report.ranks == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}

    def test_field(self, field_structure):
        """Test that the bar complex of the ground field is acyclic above degree 0."""
        report = homology_ranks(field_structure, "hochschild", (0, 2), length_max=4)
        assert report.ranks == {0: 1, 1: 0, 2: 0}
        assert report.chain_dimensions == {0: 1, 1: 1, 2: 1}
        assert report.all_stable

    def test_nonunital_field(self, field_structure):
        """Test that the non-unital complex of the field has the same homology."""
        report = homology_ranks(field_structure, ComplexKind.NONUNITAL, (0, 2), length_max=4)
        assert report.ranks == {0: 1, 1: 0, 2: 0}

    def test_mod2_window(self, curved_clifford):
        assert degree_window(curved_clifford.structure, 0, 4) == [0, 1]

    def test_report_to_dict(self, field_structure):
        data = homology_ranks(field_structure, degrees=(0, 1), length_max=3).to_dict()
        assert data["complex"] == "hochschild"
        assert data["ranks"] == {"0": 1, "1": 0}
        assert data["length_max"] == 3

    def test_nonunital_comparison_agrees(self, dual_numbers):
        report = nonunital_comparison(dual_numbers, (0, 2), length_max=4)
        assert report.applicable
        assert report.agree
        assert report.disagreeing_degrees == []

    def test_nonunital_comparison_without_units(self, dual_numbers):
        bare = dual_numbers.with_mu(dual_numbers.mu, units={})
        report = nonunital_comparison(bare, (0, 2), length_max=4)
        assert not report.applicable
        assert "not applicable" in report.reason


class TestRepresentatives:
    """Tests for homology representatives and reduction modulo boundaries."""

    def test_degree_zero_of_dual_numbers(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, length_max=4)
        homology = homology_representatives(complex_, 0)
        assert homology.rank == 2
        coordinates = solve_mod_boundaries(homology, word_chain(dual_numbers.ring, "eps"))
        assert coordinates is not None
        assert any(not c.is_zero() for c in coordinates)

    def test_boundaries_are_recognized(self, dual_numbers):
        """Test that b of a degree-1 chain is a boundary in degree 0."""
        complex_ = HochschildComplex(dual_numbers, length_max=4)
        homology = homology_representatives(complex_, 0)
        x = complex_.b(word_chain(dual_numbers.ring, "eps", "eps"))
        assert is_boundary(homology, x)
        assert not is_boundary(homology, word_chain(dual_numbers.ring, "1"))

    def test_words_outside_basis(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, length_max=4)
        homology = homology_representatives(complex_, 0)
        assert solve_mod_boundaries(homology, word_chain(dual_numbers.ring, "eps", "eps")) is None

    def test_coordinates_keep_bulk_dependence(self):
        """Test that t·1[] has coordinate t in HH_0 of the ground field over Q[t]."""
        ring = BulkRingDescriptor(
            grading=Grading.INTEGER,
            variables=(BulkVariable("t", 0),),
            truncation=TruncationPolicy(Fraction(12), 2, 2, 4),
        )
        t = RingElement.variable(ring, "t")
        complex_ = HochschildComplex(field_model(ring), length_max=2)
        homology = homology_representatives(complex_, 0)
        assert homology.rank == 1
        assert solve_mod_boundaries(homology, ChainVector.word(("1",), t)) == [t]


# =============================================================================
# Chain maps
# =============================================================================


class TestChainMaps:
    """Tests for cap products and the pushforward along bounding cochains."""

    def test_cap_with_zero_cochain(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, length_max=4)
        x = word_chain(dual_numbers.ring, "eps", "eps")
        assert cap_product(complex_, CochainVector(parity=1), x).is_zero()

    def test_pushforward_along_zero_cochain(self, curved_clifford):
        structure = curved_clifford.structure
        x = word_chain(structure.ring, "x", "x")
        pushed = pushforward_along_f(structure, BoundingCochainAssignment.zero(structure), x)
        assert pushed == x

    def test_pushforward_inserts_bounding_cochain(self, curved_clifford):
        """Test that F_* of e[] contains the single insertion e[x] with coefficient T^(1/2)."""
        structure = curved_clifford.structure
        complex_ = HochschildComplex(structure, nonunital=True, length_max=4)
        pushed = pushforward_along_f(
            structure, curved_clifford.bounding, word_chain(structure.ring, "e"), complex_
        )
        assert pushed.coefficient(("e",)) == RingElement.one(structure.ring)
        assert pushed.coefficient(("e", "x")) == curved_clifford.bounding.on("X")["x"]
