"""Seeded identity suite over the built-in models."""

from nchodge.suite.models import CheckResult, SuiteConfig, SuiteReport
from nchodge.suite.runner import SuiteRunner, run_suite, sample_words

__all__ = [
    "CheckResult",
    "SuiteConfig",
    "SuiteReport",
    "SuiteRunner",
    "run_suite",
    "sample_words",
]
