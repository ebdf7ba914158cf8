"""Pytest configuration and fixtures."""

import tempfile
from fractions import Fraction
from pathlib import Path

import pytest

from nchodge.config import get_settings
from nchodge.models import ModelKind, ModelSpec, build_model
from nchodge.scalars import BulkRingDescriptor, Grading

DOCUMENTS_DIR = Path(__file__).resolve().parent.parent / "documents"


@pytest.fixture(autouse=True)
def fresh_settings():
    """Drop cached settings so monkeypatched NCHODGE_* variables take effect."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def mock_env_vars(monkeypatch):
    """Set up mock environment variables for testing."""
    monkeypatch.setenv("NCHODGE_THREADS", "2")
    monkeypatch.setenv("NCHODGE_MAX_COMPLEX_DIMENSION", "500")
    monkeypatch.setenv("NCHODGE_DEFAULT_LENGTH_MAX", "4")
    monkeypatch.setenv("NCHODGE_LOG_LEVEL", "DEBUG")


@pytest.fixture
def rationals():
    """Plain rational coefficients, integer graded."""
    return BulkRingDescriptor.rationals()


@pytest.fixture
def novikov():
    """Novikov field truncated at T^12, integer graded."""
    return BulkRingDescriptor.novikov(Grading.INTEGER, 12, length_max=4, u_max=2)


@pytest.fixture
def novikov_mod2():
    """Novikov field truncated at T^12, mod-2 graded."""
    return BulkRingDescriptor.novikov(Grading.MOD2, 12, length_max=4, u_max=2)


@pytest.fixture
def field_structure():
    return build_model(ModelSpec(ModelKind.FIELD)).structure


@pytest.fixture
def dual_numbers():
    """k[eps]/eps^2 over the rationals."""
    return build_model(ModelSpec(ModelKind.DUAL_NUMBERS)).structure


@pytest.fixture
def exterior_one():
    """Exterior algebra on one odd generator, with its trace."""
    return build_model(ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=1))


@pytest.fixture
def matrix_two():
    return build_model(ModelSpec(ModelKind.MATRIX_ALGEBRA, n=2)).structure


@pytest.fixture
def clifford():
    """Clifford deformation Cl_1 with weight 3 and its shipped bounding cochain."""
    return build_model(
        ModelSpec(ModelKind.CLIFFORD_DEFORMATION, n=1, t_weights=(Fraction(3),))
    )


@pytest.fixture
def curved_clifford():
    return build_model(ModelSpec(ModelKind.CURVED_CLIFFORD))


@pytest.fixture
def dual_numbers_document():
    """Path of the shipped dual-numbers document."""
    return DOCUMENTS_DIR / "dual_numbers.json"
