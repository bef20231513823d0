"""Stopping conditions: a time budget, an iteration cap, or full coverage."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class MaxTime:
    seconds: float

    def __post_init__(self):
        if self.seconds <= 0:
            raise ValueError("time budget must be positive")


@dataclass(frozen=True, slots=True)
class MaxIterations:
    count: int

    def __post_init__(self):
        if self.count <= 0:
            raise ValueError("iteration budget must be positive")


@dataclass(frozen=True, slots=True)
class FullCoverage:
    pass


StoppingCondition = MaxTime | MaxIterations | FullCoverage
