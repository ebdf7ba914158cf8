"""CLI module for nchodge."""

from nchodge.cli.main import cli

__all__ = ["cli"]
