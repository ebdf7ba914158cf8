"""Configuration management for nchodge."""

from fractions import Fraction
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from NCHODGE_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="NCHODGE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Parallelism
    threads: int = Field(default=1, ge=1, description="Cap on internal worker threads")

    # Resource caps
    max_complex_dimension: int = Field(
        default=20000,
        ge=1,
        description="Largest chain-group dimension handed to elimination",
    )
    oracle_max_dimension: int = Field(
        default=5000,
        ge=1,
        description="Largest total complex dimension the brute-force oracle accepts",
    )

    # Precision
    precision_floor: str = Field(
        default="-1000",
        description="Lowest T-exponent elimination may pivot at before giving up",
    )
    inverse_relative_precision: int = Field(
        default=20,
        ge=1,
        description="Relative precision used when inverting an exact Novikov scalar",
    )

    # Truncation defaults
    default_t_precision: str = Field(default="12", description="Default Novikov cutoff")
    default_bulk_degree_max: int = Field(default=2, ge=0)
    default_u_max: int = Field(default=2, ge=0)
    default_length_max: int = Field(default=6, ge=0)

    # Logging
    log_level: str = Field(default="WARNING", description="Logging level")

    @field_validator("precision_floor", "default_t_precision")
    @classmethod
    def _rational(cls, value: str) -> str:
        Fraction(value)
        return value

    @property
    def floor(self) -> Fraction:
        """Precision floor as an exact rational."""
        return Fraction(self.precision_floor)

    @property
    def t_precision(self) -> Fraction:
        """Default Novikov cutoff as an exact rational."""
        return Fraction(self.default_t_precision)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Convenience function for CLI
def get_config() -> Settings:
    """Get configuration (alias for get_settings)."""
    return get_settings()
