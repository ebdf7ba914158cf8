"""Data models for the identity suite."""

from dataclasses import dataclass, field
from typing import Any


@dataclass
class SuiteConfig:
    """
    Knobs of one suite run.

    Attributes:
        seed: Seed for sampled words, random DGAs, bounding cochains and mutations
        quick: Smaller length caps and fewer random structures
        random_models: Number of seeded random DGAs
        samples: Sampled words per differential identity
        mutation_count: Mutations per model
    """

    seed: int = 1
    quick: bool = False
    random_models: int = 25
    samples: int = 6
    mutation_count: int = 10

    def __post_init__(self) -> None:
        if self.quick:
            self.random_models = min(self.random_models, 5)
            self.samples = min(self.samples, 4)

    @property
    def length_caps(self) -> tuple[int, ...]:
        return (4, 6) if self.quick else (4, 6, 8)

    @property
    def u_caps(self) -> tuple[int, ...]:
        return (0, 2)

    @property
    def comparison_length(self) -> int:
        return 3 if self.quick else 4

    @property
    def dual_numbers_length(self) -> int:
        return 6 if self.quick else 8

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "quick": self.quick,
            "random_models": self.random_models,
            "samples": self.samples,
            "mutation_count": self.mutation_count,
            "length_caps": list(self.length_caps),
            "u_caps": list(self.u_caps),
        }


@dataclass
class CheckResult:
    """Outcome of one named identity on one model."""

    name: str
    model: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "model": self.model,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    """All check results of a suite run."""

    config: SuiteConfig
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def check_names(self) -> list[str]:
        """Distinct check names in the order they first ran."""
        return list(dict.fromkeys(r.name for r in self.results))

    def summary(self) -> dict[str, dict[str, int]]:
        """Passed and failed counts per check name."""
        counts: dict[str, dict[str, int]] = {}
        for r in self.results:
            entry = counts.setdefault(r.name, {"passed": 0, "failed": 0})
            entry["passed" if r.passed else "failed"] += 1
        return counts

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "config": self.config.to_dict(),
            "checks": self.check_names,
            "summary": self.summary(),
            "failures": [r.to_dict() for r in self.failures],
            "results": [r.to_dict() for r in self.results],
        }
