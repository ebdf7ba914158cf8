"""Tests for CLI commands and their exit codes."""

import json

import pytest
from click.testing import CliRunner

from nchodge import __version__
from nchodge.cli.document import (
    build_document,
    emit_document,
    load_document,
    parse_document,
    to_document,
)
from nchodge.cli.main import cli, parse_degrees, parse_rational
from nchodge.errors import DocumentError, ParameterOutOfRange
from nchodge.models import build_model, standard_models
from nchodge.scalars import RingElement
from nchodge.vshs import projective_line_toy


# =============================================================================
# Fixtures
# =============================================================================

@pytest.fixture
def cli_runner():
    """Click CLI test runner."""
    return CliRunner()


@pytest.fixture
def broken_document(temp_dir):
    """A document file that is not JSON."""
    path = temp_dir / "broken.json"
    path.write_text("{ not json", encoding="utf-8")
    return path


# =============================================================================
# Option parsing
# =============================================================================

class TestParseDegrees:
    """Tests for parse_degrees helper function."""

    def test_window(self):
        assert parse_degrees("0..4") == (0, 4)

    def test_single_degree(self):
        """Test that a bare degree is a one-degree window."""
        assert parse_degrees("3") == (3, 3)

    def test_negative_bounds(self):
        assert parse_degrees("-2..1") == (-2, 1)

    def test_garbage(self):
        with pytest.raises(DocumentError):
            parse_degrees("zero..four")

    def test_empty_window(self):
        with pytest.raises(ParameterOutOfRange):
            parse_degrees("4..1")


class TestParseRational:
    """Tests for parse_rational helper function."""

    def test_fraction(self):
        assert str(parse_rational("3/2")) == "3/2"

    def test_garbage(self):
        with pytest.raises(DocumentError):
            parse_rational("1/0")


# =============================================================================
# Document commands
# =============================================================================

class TestValidateCommand:
    """Tests for the validate command."""

    def test_shipped_document_passes(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(cli, ["validate", str(dual_numbers_document)])
        assert result.exit_code == 0
        assert "ainf_relations" in result.output
        assert "strict_units" in result.output

    def test_json_report(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(cli, ["validate", str(dual_numbers_document), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["passed"] is True
        assert set(data["checks"]) == {"ainf_relations", "strict_units"}

    def test_not_json_is_a_parse_error(self, cli_runner, broken_document):
        """Test that unparseable input exits 2."""
        result = cli_runner.invoke(cli, ["validate", str(broken_document)])
        assert result.exit_code == 2
        assert "DocumentError" in result.output

    def test_schema_violation_is_a_parse_error(self, cli_runner, temp_dir):
        path = temp_dir / "empty.json"
        path.write_text('{"format_version": 1}', encoding="utf-8")
        result = cli_runner.invoke(cli, ["validate", str(path)])
        assert result.exit_code == 2

    def test_broken_unit_law_fails(self, cli_runner, temp_dir, dual_numbers_document):
        """Test that doubling mu2(1, 1) exits 1."""
        data = json.loads(dual_numbers_document.read_text(encoding="utf-8"))
        for record in data["mu"]:
            if record["inputs"] == ["1", "1"]:
                record["coeff"] = "2"
        path = temp_dir / "mutated.json"
        path.write_text(json.dumps(data), encoding="utf-8")

        result = cli_runner.invoke(cli, ["validate", str(path), "--json"])
        assert result.exit_code == 1
        assert json.loads(result.output)["passed"] is False


class TestHomologyCommands:
    """Tests for the hh and hc commands."""

    def test_dual_numbers_ranks(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(
            cli, ["hh", str(dual_numbers_document), "--degrees", "0..4", "--length", "6", "--json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["ranks"] == {"0": 2, "1": 1, "2": 1, "3": 1, "4": 1}
        assert data["length_max"] == 6

    def test_table_output(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(cli, ["hh", str(dual_numbers_document), "--degrees", "0..1"])
        assert result.exit_code == 0
        assert "homology" in result.output

    def test_empty_window_exits_1(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(cli, ["hh", str(dual_numbers_document), "--degrees", "4..1"])
        assert result.exit_code == 1
        assert "ParameterOutOfRange" in result.output

    def test_dimension_cap_exits_4(self, cli_runner, dual_numbers_document, monkeypatch):
        """Test that exceeding NCHODGE_MAX_COMPLEX_DIMENSION maps to exit code 4."""
        monkeypatch.setenv("NCHODGE_MAX_COMPLEX_DIMENSION", "3")
        result = cli_runner.invoke(
            cli, ["hh", str(dual_numbers_document), "--degrees", "0..4", "--length", "6"]
        )
        assert result.exit_code == 4
        assert "TooLarge" in result.output

    def test_hc_json(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(
            cli,
            ["hc", str(dual_numbers_document), "--degrees", "0..0", "--length", "2", "--umax", "1", "--json"],
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert "0" in data["ranks"]


class TestPairCommand:
    """Tests for the pair command."""

    def test_mukai_gram(self, cli_runner, dual_numbers_document):
        """Test that the Gram matrix is square over the listed classes."""
        result = cli_runner.invoke(
            cli, ["pair", str(dual_numbers_document), "--degrees", "0..0", "--json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["kind"] == "mukai"
        assert len(data["gram"]) == len(data["classes"])
        assert all(len(row) == len(data["classes"]) for row in data["gram"])


# =============================================================================
# Models
# =============================================================================

class TestModelCommands:
    """Tests for models and emit-model."""

    def test_models_lists_builtins(self, cli_runner):
        result = cli_runner.invoke(cli, ["models"])
        assert result.exit_code == 0
        assert "dual_numbers" in result.output
        assert "projective_line" in result.output

    def test_emit_then_validate(self, cli_runner, temp_dir):
        """Test that an emitted model validates."""
        path = temp_dir / "exterior.json"
        result = cli_runner.invoke(cli, ["emit-model", "exterior_algebra", "-n", "2", "--output", str(path)])
        assert result.exit_code == 0
        assert path.exists()

        result = cli_runner.invoke(cli, ["validate", str(path), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["passed"] is True
        assert "trace_closed" in data["checks"]

    def test_emit_is_canonical(self, cli_runner, dual_numbers_document):
        """Test that the shipped document is exactly what emit-model writes."""
        result = cli_runner.invoke(cli, ["emit-model", "dual_numbers"])
        assert result.exit_code == 0
        assert result.output == dual_numbers_document.read_text(encoding="utf-8")

    def test_emit_vshs_toy_then_check(self, cli_runner, temp_dir):
        path = temp_dir / "toy.json"
        result = cli_runner.invoke(cli, ["emit-model", "projective_line", "--output", str(path)])
        assert result.exit_code == 0

        result = cli_runner.invoke(cli, ["vshs-check", str(path), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["passed"] is True
        assert data["reports"]["vshs"]["polarized"] is True

    def test_vshs_check_needs_block(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(cli, ["vshs-check", str(dual_numbers_document)])
        assert result.exit_code == 2

    def test_bad_weight(self, cli_runner):
        result = cli_runner.invoke(cli, ["emit-model", "clifford_deformation", "--t-weight=-1"])
        assert result.exit_code == 1
        assert "ParameterOutOfRange" in result.output

    def test_deform_without_bounding_cochains(self, cli_runner, dual_numbers_document):
        result = cli_runner.invoke(cli, ["deform", str(dual_numbers_document)])
        assert result.exit_code == 1


# =============================================================================
# Group options and config
# =============================================================================

class TestCliGroup:
    """Tests for the top-level group."""

    def test_version(self, cli_runner):
        result = cli_runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_help_lists_commands(self, cli_runner):
        result = cli_runner.invoke(cli, ["--help"])
        assert result.exit_code == 0
        for command in ("validate", "hh", "hc", "pair", "ggm", "deform", "vshs-check", "suite"):
            assert command in result.output

    def test_config_shows_env(self, cli_runner, mock_env_vars):
        result = cli_runner.invoke(cli, ["config"])
        assert result.exit_code == 0
        assert "Threads" in result.output
        assert "500" in result.output

    def test_invalid_threads(self, cli_runner, monkeypatch):
        """Test that NCHODGE_THREADS=0 is rejected as invalid configuration."""
        monkeypatch.setenv("NCHODGE_THREADS", "0")
        result = cli_runner.invoke(cli, ["models"])
        assert result.exit_code == 2


# =============================================================================
# Documents
# =============================================================================

class TestDocumentRoundTrip:
    """Tests for parse_document, build_document and emit_document."""

    @pytest.mark.parametrize("spec", standard_models(), ids=lambda s: s.name)
    def test_emit_parse_emit(self, spec):
        """Test that emitting a parsed canonical document reproduces it byte for byte."""
        built = build_model(spec)
        text = emit_document(
            to_document(built.structure, bounding=built.bounding, trace=built.trace)
        )
        loaded = build_document(parse_document(text))
        again = emit_document(
            to_document(loaded.structure, bounding=loaded.bounding, trace=loaded.trace)
        )
        assert again == text

    def test_vshs_document(self):
        vshs = projective_line_toy()
        text = emit_document(to_document(None, ring=vshs.ring, vshs=vshs))
        loaded = build_document(parse_document(text))
        assert loaded.vshs is not None
        assert loaded.vshs.basis == vshs.basis
        assert emit_document(to_document(None, ring=loaded.ring, vshs=loaded.vshs)) == text

    def test_loaded_coefficients(self, dual_numbers_document):
        loaded = load_document(dual_numbers_document)
        one = RingElement.one(loaded.ring)
        assert loaded.structure.value(("eps", "1")) == {"eps": one}
        assert loaded.bounding is None

    @pytest.mark.parametrize(
        "text",
        [
            '{"format_version": 1, "bogus": 1}',
            '{"format_version": 2}',
            '{"format_version": 1, "mu": [{"arity": 2, "inputs": ["a", "b"], "output": "c", "coeff": 0.5}]}',
            "[1, 2, 3]",
            '{"format_version": 1, "ring": {}, "objects": ["X"], "homs": []}',
            '{"format_version": 1, "objects": [], "homs": [], "mu": []}',
        ],
        ids=[
            "unknown_key",
            "future_version",
            "float_coefficient",
            "not_an_object",
            "missing_mu",
            "missing_ring",
        ],
    )
    def test_rejected(self, text):
        with pytest.raises(DocumentError):
            parse_document(text)

    def test_required_blocks_may_be_empty(self):
        document = parse_document(
            '{"format_version": 1, "ring": {}, "objects": [], "homs": [], "mu": []}'
        )
        assert document.mu == []
        assert document.vshs is None

    def test_vshs_block_needs_derivation(self):
        vshs = projective_line_toy()
        document = to_document(None, ring=vshs.ring, vshs=vshs)
        document.derivation = None
        with pytest.raises(DocumentError):
            build_document(parse_document(emit_document(document)))
