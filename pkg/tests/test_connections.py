"""Tests for module connections, pullbacks and the GGM connection."""

from fractions import Fraction

import pytest

from nchodge.ainf import CochainVector
from nchodge.ainf.cochains import cochain_differential
from nchodge.connections import (
    BasisConnection,
    GGMConnection,
    ModuleConnection,
    b11,
    chain_commutation_diagnostic,
    nabla_of_mu,
    pullback_connection,
    random_basis_connection,
    tilde_independence,
)
from nchodge.cyclic import NegativeCyclicComplex, free_generators
from nchodge.errors import DegreeMismatch, IncompatibleDf, RankMismatch, UnknownSymbol
from nchodge.hochschild import ChainVector, HochschildComplex, cap_product, degree_window
from nchodge.models import ModelKind, ModelSpec, build_model
from nchodge.scalars import (
    BulkRingDescriptor,
    BulkVariable,
    Derivation,
    Grading,
    RingElement,
    RingMorphismWithDerivation,
    TruncationPolicy,
)

KAPPAS = {"r1": Fraction(1), "r2": Fraction(1, 2), "r3": Fraction(2)}


@pytest.fixture
def integer_ring():
    return BulkRingDescriptor.novikov(Grading.INTEGER, 6, length_max=3, u_max=1)


@pytest.fixture
def deformed_dual(integer_ring):
    """k[eps] with eps^2 = T."""
    spec = ModelSpec(ModelKind.DUAL_NUMBERS, t_weights=(Fraction(1),), ring=integer_ring)
    return build_model(spec).structure


@pytest.fixture
def exterior_novikov(integer_ring):
    return build_model(ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=1, ring=integer_ring)).structure


# =============================================================================
# Connections on based modules
# =============================================================================


class TestModuleConnection:
    """Tests for ModuleConnection."""

    def test_trivial_connection_differentiates_coefficients(self, novikov):
        """Test ∇(T^2 a) = 2 T^2 a along dlogT."""
        derivation = Derivation.d_log_t(novikov)
        connection = ModuleConnection.trivial(derivation, ["a", "b"], [0, 0])
        image = connection.apply({"a": RingElement.t_power(novikov, 2)})
        assert image == {"dlogT": {"a": RingElement.t_power(novikov, 2).scale(2)}}

    def test_matrix_acts_on_basis(self, novikov):
        derivation = Derivation.d_log_t(novikov)
        zero = RingElement.zero(novikov)
        one = RingElement.one(novikov)
        connection = ModuleConnection(
            derivation, ("a", "b"), (0, 0), {"dlogT": [[zero, zero], [one, zero]]}
        )
        assert connection.apply({"a": one}) == {"dlogT": {"b": one}}
        assert connection.apply({"b": one}) == {}

    def test_leibniz_rule(self, novikov):
        """Test that ∇(f m) = Df ⊗ m + f ∇m holds for a nontrivial matrix."""
        derivation = Derivation.d_log_t(novikov)
        t = RingElement.t_power(novikov, 1)
        zero = RingElement.zero(novikov)
        connection = ModuleConnection(
            derivation, ("a", "b"), (0, 0), {"dlogT": [[t, zero], [t, t]]}
        )
        f = RingElement.one(novikov) + RingElement.t_power(novikov, Fraction(1, 2))
        assert connection.leibniz_defect(f, {"a": t, "b": RingElement.one(novikov)}) == {}

    def test_unknown_label_rejected(self, novikov):
        derivation = Derivation.d_log_t(novikov)
        with pytest.raises(UnknownSymbol):
            ModuleConnection(derivation, ("a",), (0,), {"dq": [[RingElement.one(novikov)]]})

    def test_wrong_shape_rejected(self, novikov):
        derivation = Derivation.d_log_t(novikov)
        with pytest.raises(RankMismatch):
            ModuleConnection(derivation, ("a", "b"), (0, 0), {"dlogT": [[RingElement.one(novikov)]]})

    def test_commutation_with_differential(self, novikov):
        """Test that the trivial connection commutes with d exactly when D(d) = 0."""
        derivation = Derivation.d_log_t(novikov)
        connection = ModuleConnection.trivial(derivation, ["a", "b"], [0, 0])
        zero = RingElement.zero(novikov)
        constant = [[zero, RingElement.one(novikov)], [zero, zero]]
        assert connection.commutation_report(constant).passed
        weighted = [[zero, RingElement.t_power(novikov, 1)], [zero, zero]]
        report = connection.commutation_report(weighted)
        assert not report.passed
        assert report.failures == {"dlogT": [(0, 1)]}


class TestPullback:
    """Tests for pullback_connection."""

    def _symbol_ring(self):
        return BulkRingDescriptor(
            grading=Grading.INTEGER,
            symbols=tuple(KAPPAS),
            truncation=TruncationPolicy(Fraction(12), 2, 2, 4),
        )

    def _morphism(self, source, target, kappas):
        omega = {"dlogT": {"dlogT": RingElement.one(target)}}
        for q, kappa in kappas.items():
            omega[f"dlog_{q}"] = {"dlogT": RingElement.constant(target, kappa)}
        return RingMorphismWithDerivation(
            source=source, target=target, exponent_map=dict(KAPPAS), omega_map=omega
        )

    def test_identity_pullback(self, novikov):
        derivation = Derivation.d_log_t(novikov)
        t = RingElement.t_power(novikov, 1)
        zero = RingElement.zero(novikov)
        connection = ModuleConnection(derivation, ("a", "b"), (0, 0), {"dlogT": [[t, zero], [zero, t]]})
        identity = RingMorphismWithDerivation.identity(novikov, derivation)
        pulled = pullback_connection(identity, connection, derivation)
        assert pulled.matrix == connection.matrix

    def test_symbol_labels_collapse_onto_dlogT(self, novikov):
        """Test f^*A = f(A_T) + sum_q kappa_q f(A_q) along dlogT."""
        source = self._symbol_ring()
        zero = RingElement.zero(source)
        one = RingElement.one(source)
        r1 = RingElement.symbol(source, "r1")
        matrices = {
            "dlogT": [[r1]],
            "dlog_r1": [[one]],
            "dlog_r2": [[zero]],
            "dlog_r3": [[one.scale(2)]],
        }
        connection = ModuleConnection(Derivation.standard(source), ("a",), (0,), matrices)
        pulled = pullback_connection(
            self._morphism(source, novikov, KAPPAS), connection, Derivation.d_log_t(novikov)
        )
        expected = RingElement.t_power(novikov, 1) + RingElement.constant(novikov, 5)
        assert pulled.matrix["dlogT"][0][0] == expected

    def test_incompatible_df_rejected(self, novikov):
        source = self._symbol_ring()
        connection = ModuleConnection.trivial(Derivation.standard(source), ["a"], [0])
        wrong = {**KAPPAS, "r1": Fraction(5)}
        with pytest.raises(IncompatibleDf):
            pullback_connection(
                self._morphism(source, novikov, wrong), connection, Derivation.d_log_t(novikov)
            )


# =============================================================================
# Hom-space connections and the derivative of mu
# =============================================================================


class TestBasisConnection:
    """Tests for BasisConnection and nabla_of_mu."""

    def test_flat(self, exterior_novikov, integer_ring):
        tilde = BasisConnection.flat(exterior_novikov, Derivation.d_log_t(integer_ring))
        assert tilde.is_flat()
        assert tilde.gamma("x1") == {}

    def test_degree_changing_entry_rejected(self, exterior_novikov, integer_ring):
        """Test that ∇̃ may not send 1 to x1 with a constant coefficient."""
        derivation = Derivation.d_log_t(integer_ring)
        zero = RingElement.zero(integer_ring)
        matrix = [[zero, zero], [RingElement.one(integer_ring), zero]]
        connection = ModuleConnection(derivation, ("1", "x1"), (0, 1), {"dlogT": matrix})
        with pytest.raises(DegreeMismatch):
            BasisConnection(exterior_novikov, derivation, {("X", "X"): connection})

    def test_random_connection_is_seeded(self, deformed_dual, integer_ring):
        derivation = Derivation.d_log_t(integer_ring)
        first = random_basis_connection(deformed_dual, derivation, seed=4)
        second = random_basis_connection(deformed_dual, derivation, seed=4)
        assert first.to_dict() == second.to_dict()

    def test_nabla_of_mu_differentiates_constants(self, deformed_dual, integer_ring):
        """Test that T d/dT of eps*eps = T gives T on (eps, eps) and nothing else."""
        derivation = Derivation.d_log_t(integer_ring)
        phi = nabla_of_mu(deformed_dual, BasisConnection.flat(deformed_dual, derivation), derivation)
        expected = CochainVector(
            {("eps", "eps"): {"1": RingElement.t_power(integer_ring, 1)}}, parity=1
        )
        assert (phi["dlogT"] - expected).is_zero()

    def test_nabla_of_mu_is_a_cocycle(self, deformed_dual, integer_ring):
        derivation = Derivation.d_log_t(integer_ring)
        tilde = random_basis_connection(deformed_dual, derivation, seed=1)
        phi = nabla_of_mu(deformed_dual, tilde, derivation)
        assert cochain_differential(deformed_dual, phi["dlogT"]).is_zero()


# =============================================================================
# GGM connection
# =============================================================================


class TestGGMConnection:
    """Tests for u∇^GGM on negative cyclic chains."""

    def test_odd_label_rejected(self):
        """Test that an odd bulk variable cannot feed the connection."""
        ring = BulkRingDescriptor(
            grading=Grading.INTEGER,
            variables=(BulkVariable("s", 1),),
            truncation=TruncationPolicy(Fraction(6), bulk_degree_max=2, u_max=1, length_max=2),
        )
        structure = build_model(ModelSpec(ModelKind.DUAL_NUMBERS, ring=ring)).structure
        derivation = Derivation.standard(ring)
        q = NegativeCyclicComplex(structure, length_max=2, u_max=1)
        with pytest.raises(DegreeMismatch):
            GGMConnection(q, BasisConnection.flat(structure, derivation), derivation)

    def test_leibniz_rule(self, deformed_dual, integer_ring):
        """Test u∇(f x) = u Df x + f u∇(x)."""
        derivation = Derivation.d_log_t(integer_ring)
        q = NegativeCyclicComplex(deformed_dual, length_max=3, u_max=1)
        connection = GGMConnection(q, random_basis_connection(deformed_dual, derivation), derivation)
        one = RingElement.one(integer_ring)
        x = q.chain(ChainVector.word(("eps", "eps"), one))
        f = RingElement.t_power(integer_ring, 1, 2)
        assert connection.leibniz_defect(f, x) == {}

    def test_flat_constant_chain(self, exterior_novikov, integer_ring):
        """Test that u∇ kills 1[] when mu has no T-dependence and ∇̃ is flat."""
        derivation = Derivation.d_log_t(integer_ring)
        q = NegativeCyclicComplex(exterior_novikov, length_max=2, u_max=1)
        connection = GGMConnection(q, BasisConnection.flat(exterior_novikov, derivation), derivation)
        x = q.chain(ChainVector.word(("1",), RingElement.one(integer_ring)))
        assert connection.apply(x)["dlogT"].is_zero()

    def test_descends_and_is_independent(self, deformed_dual, integer_ring):
        """Test that flat and random ∇̃ give the same matrix on homology."""
        derivation = Derivation.d_log_t(integer_ring)
        q = NegativeCyclicComplex(deformed_dual, length_max=2, u_max=1)
        generators = [
            s for n in degree_window(deformed_dual, 0, 1) for s in free_generators(q, n)
        ]
        tildes = [
            BasisConnection.flat(deformed_dual, derivation),
            random_basis_connection(deformed_dual, derivation, seed=7),
        ]
        on_homology = GGMConnection(q, tildes[0], derivation).on_homology(generators)
        assert on_homology.descends
        assert tilde_independence(q, derivation, tildes, generators).agree

    def test_commutation_diagnostic_reports(self, deformed_dual, integer_ring):
        derivation = Derivation.d_log_t(integer_ring)
        q = NegativeCyclicComplex(deformed_dual, length_max=2, u_max=1)
        sample = q.chain(ChainVector.word(("eps",), RingElement.one(integer_ring)))
        report = chain_commutation_diagnostic(
            q, BasisConnection.flat(deformed_dual, derivation), derivation, [sample]
        )
        assert report.samples == 1
        assert report.to_dict()["samples"] == 1

    def test_b11_caps_each_label(self, deformed_dual, integer_ring):
        """Test that b11 is the cap product taken label by label."""
        derivation = Derivation.d_log_t(integer_ring)
        phi = nabla_of_mu(deformed_dual, BasisConnection.flat(deformed_dual, derivation), derivation)
        complex_ = HochschildComplex(deformed_dual, length_max=3)
        x = ChainVector.word(("eps", "eps"), RingElement.one(integer_ring))
        capped = b11(complex_, phi, x)
        assert set(capped) == set(phi)
        assert capped["dlogT"].terms == cap_product(complex_, phi["dlogT"], x).terms
