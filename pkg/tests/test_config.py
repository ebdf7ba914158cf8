"""Tests for settings and the error hierarchy."""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from nchodge.config import Settings, get_config, get_settings
from nchodge.errors import (
    DocumentError,
    NCHodgeError,
    PrecisionExhausted,
    TooLarge,
    UnknownSymbol,
)
from nchodge.scalars import TruncationPolicy


class TestSettings:
    """Tests for NCHODGE_* settings."""

    def test_defaults(self, monkeypatch):
        """Test the documented defaults."""
        for name in ("NCHODGE_THREADS", "NCHODGE_DEFAULT_LENGTH_MAX", "NCHODGE_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert settings.threads == 1
        assert settings.t_precision == Fraction(12)
        assert settings.floor == Fraction(-1000)
        assert settings.inverse_relative_precision == 20

    def test_environment_overrides(self, mock_env_vars):
        """Test that NCHODGE_* variables are read."""
        settings = get_settings()
        assert settings.threads == 2
        assert settings.max_complex_dimension == 500
        assert settings.default_length_max == 4
        assert settings.log_level == "DEBUG"

    def test_settings_are_cached(self):
        assert get_settings() is get_settings()
        assert get_config() is get_settings()

    def test_zero_threads_rejected(self, monkeypatch):
        """Test that NCHODGE_THREADS must be positive."""
        monkeypatch.setenv("NCHODGE_THREADS", "0")
        with pytest.raises(ValidationError):
            get_settings()

    def test_non_rational_precision_rejected(self, monkeypatch):
        monkeypatch.setenv("NCHODGE_DEFAULT_T_PRECISION", "twelve")
        with pytest.raises(ValidationError):
            get_settings()

    def test_truncation_default_follows_settings(self, mock_env_vars):
        """Test that TruncationPolicy.default reads the configured caps."""
        policy = TruncationPolicy.default()
        assert policy.length_max == 4
        assert policy.t_precision == Fraction(12)


class TestErrors:
    """Tests for exit codes carried by errors."""

    def test_exit_codes(self):
        assert DocumentError("bad").exit_code == 2
        assert PrecisionExhausted("floor").exit_code == 3
        assert UnknownSymbol("x").exit_code == 1

    def test_too_large_message(self):
        """Test that TooLarge reports size and cap."""
        error = TooLarge("chain group", 30000, 20000)
        assert isinstance(error, NCHodgeError)
        assert error.exit_code == 4
        assert "30000" in error.message
        assert "20000" in error.message
