"""Verification report model."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Mode(str, Enum):
    EXACT = "exact"
    MONTE_CARLO = "monte-carlo"


@dataclass(slots=True, frozen=True)
class VerifyReport:
    """Outcome of one verification test.

    Exact tests pass iff ``violations`` is zero. Monte Carlo tests list their
    pass criteria by name in ``criteria``; fitted constants go in ``constants``.
    """

    name: str
    mode: Mode
    instances: int
    violations: int = 0
    constants: dict[str, float] = field(default_factory=dict)
    criteria: dict[str, bool] = field(default_factory=dict)
    seed: int | None = None
    samples: int | None = None
    interval: dict[str, tuple[float, float]] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.mode is Mode.EXACT:
            return self.violations == 0
        return all(self.criteria.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "mode": self.mode.value,
            "instances": self.instances,
            "violations": self.violations,
            "constants": self.constants,
            "criteria": self.criteria,
            "seed": self.seed,
            "samples": self.samples,
            "interval": {key: list(value) for key, value in self.interval.items()},
            "details": self.details,
            "passed": self.passed,
        }
