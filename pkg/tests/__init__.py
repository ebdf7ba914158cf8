"""Tests for nchodge."""
