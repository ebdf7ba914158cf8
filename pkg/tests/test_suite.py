"""Tests for the identity suite runner."""

import random

import pytest

from nchodge.errors import RankMismatch
from nchodge.hochschild import HochschildComplex, Sector, sector_of
from nchodge.models import ModelKind, ModelSpec, build_model
from nchodge.suite import CheckResult, SuiteConfig, SuiteReport, SuiteRunner, sample_words


class TestSuiteConfig:
    """Tests for SuiteConfig."""

    def test_full_mode(self):
        config = SuiteConfig()
        assert config.length_caps == (4, 6, 8)
        assert config.dual_numbers_length == 8
        assert config.comparison_length == 4

    def test_quick_mode_shrinks_caps(self):
        """Test that quick mode caps the random models and samples."""
        config = SuiteConfig(quick=True)
        assert config.length_caps == (4, 6)
        assert config.random_models == 5
        assert config.samples == 4
        assert config.dual_numbers_length == 6

    def test_to_dict(self):
        data = SuiteConfig(seed=7).to_dict()
        assert data["seed"] == 7
        assert data["u_caps"] == [0, 2]


class TestSuiteReport:
    """Tests for SuiteReport aggregation."""

    def test_summary(self):
        report = SuiteReport(
            config=SuiteConfig(),
            results=[
                CheckResult("b_squared", "field", True),
                CheckResult("b_squared", "dual_numbers", False, "1 failing"),
                CheckResult("strict_units", "field", True),
            ],
        )
        assert not report.passed
        assert [r.model for r in report.failures] == ["dual_numbers"]
        assert report.check_names == ["b_squared", "strict_units"]
        assert report.summary()["b_squared"] == {"passed": 1, "failed": 1}

    def test_empty_report_passes(self):
        assert SuiteReport(config=SuiteConfig()).passed


class TestSampleWords:
    """Tests for sample_words."""

    def test_seeded(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, nonunital=True, length_max=4)
        first = sample_words(complex_, random.Random(3), 5, 3)
        second = sample_words(complex_, random.Random(3), 5, 3)
        assert first == second

    def test_words_are_normal(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, nonunital=True, length_max=4)
        words = sample_words(complex_, random.Random(0), 8, 3)
        assert words
        assert len(set(words)) == len(words)
        assert all(complex_.is_normal(w) and len(w) - 1 <= 3 for w in words)

    def test_unital_complex_has_no_wedge_words(self, dual_numbers):
        complex_ = HochschildComplex(dual_numbers, length_max=4)
        words = sample_words(complex_, random.Random(0), 8, 3)
        assert all(sector_of(w) is Sector.VEE for w in words)


# =============================================================================
# Individual check groups
# =============================================================================


class TestSuiteRunner:
    """Tests that run single groups of suite checks."""

    def test_structure_checks(self, dual_numbers):
        runner = SuiteRunner(SuiteConfig(quick=True))
        runner._structure_checks("dual_numbers", dual_numbers)
        assert runner.results
        assert all(r.passed for r in runner.results)

    def test_dual_numbers_ranks(self):
        """Test the closed-form HH ranks of k[eps]/eps^2 against the oracle."""
        runner = SuiteRunner(SuiteConfig(quick=True))
        runner._dual_numbers_ranks()
        (result,) = runner.results
        assert result.name == "dual_numbers_ranks"
        assert result.passed, result.detail

    def test_counterexamples_are_caught(self):
        runner = SuiteRunner(SuiteConfig(quick=True))
        runner._vshs_counterexamples()
        assert len(runner.results) == 5
        assert all(r.passed for r in runner.results), [r.detail for r in runner.results]

    def test_pullback(self):
        runner = SuiteRunner(SuiteConfig(quick=True))
        runner._pullback_checks()
        assert {r.name for r in runner.results} == {
            "connection_pullback",
            "pullback_rejects_incompatible_df",
        }
        assert all(r.passed for r in runner.results)

    def test_mutation_robustness(self, exterior_one):
        runner = SuiteRunner(SuiteConfig(quick=True, mutation_count=4))
        runner._mutation_robustness(exterior_one)
        assert runner.results[0].passed

    @pytest.mark.parametrize(
        "spec",
        [ModelSpec(ModelKind.MATRIX_ALGEBRA, n=2), ModelSpec(ModelKind.CLIFFORD_DEFORMATION)],
        ids=lambda s: s.name,
    )
    def test_mutation_robustness_beyond_unit_laws(self, spec):
        """Test that product and Maurer-Cartan mutations are each caught by their own check."""
        runner = SuiteRunner(SuiteConfig(quick=True, mutation_count=16))
        runner._mutation_robustness(build_model(spec))
        assert runner.results[0].passed, runner.results[0].detail

    def test_oracle_checks(self):
        runner = SuiteRunner(SuiteConfig(quick=True))
        runner._oracle_checks(ModelSpec(ModelKind.FIELD))
        assert [r.name for r in runner.results] == ["oracle_hh", "oracle_hc", "oracle_mukai"]
        assert all(r.passed for r in runner.results)

    def test_check_errors_become_failures(self):
        """Test that a library error inside a check is recorded, not raised."""
        runner = SuiteRunner()

        def broken():
            raise RankMismatch("boom")

        runner._record("broken", "toy", broken)
        (result,) = runner.results
        assert not result.passed
        assert "RankMismatch" in result.detail


@pytest.mark.slow
def test_quick_run_passes():
    """Full quick run; every identity must hold."""
    runner = SuiteRunner(SuiteConfig(seed=1, quick=True))
    report = runner.run()
    assert report.passed, [r.to_dict() for r in report.failures]
