"""Strategy interface, search context, and the shared generation loop.

A strategy implements `iterate`; the base class owns the loop, the stopping
logic, and observer notification. The default hooks keep an archive of the
shortest covering test per goal, so a minimal custom strategy only has to
sample, execute, and feed the archive.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass

from testgen.analysis import TestCluster
from testgen.fitness import CoverageGoal
from testgen.interp import ExecutionResult
from testgen.search.archive import Archive
from testgen.search.executor import SearchExecutor
from testgen.search.stopping import FullCoverage, MaxIterations, MaxTime, StoppingCondition
from testgen.testcase.model import DEFAULT_MAX_LENGTH, TestSuiteChromosome


@dataclass(frozen=True, slots=True)
class SearchConfig:
    population_size: int = 50
    tournament_size: int = 5
    crossover_rate: float = 0.75
    elite_count: int = 1
    test_insertion_probability: float = 0.1
    initial_suite_max_tests: int = 10
    max_suite_size: int = 50
    mio_bucket_size: int = 10
    mio_random_probability: float = 0.5
    mio_focused_fraction: float = 0.5
    max_test_length: int = DEFAULT_MAX_LENGTH


@dataclass(frozen=True, slots=True)
class IterationEvent:
    iteration: int
    elapsed_s: float
    coverage: float
    suite: TestSuiteChromosome
    results: tuple[ExecutionResult, ...]


class SearchObserver:
    """Read-only view of search progress; must not mutate search state."""

    def on_iteration(self, event: IterationEvent) -> None:
        pass


@dataclass(slots=True)
class SearchContext:
    cluster: TestCluster
    goals: tuple[CoverageGoal, ...]
    executor: SearchExecutor
    stop_conditions: tuple[StoppingCondition, ...]
    rng: random.Random
    observers: tuple[SearchObserver, ...] = ()

    def __post_init__(self):
        self.goals = tuple(self.goals)
        self.stop_conditions = tuple(self.stop_conditions)
        self.observers = tuple(self.observers)
        if not self.stop_conditions:
            raise ValueError("at least one stopping condition is required")

    def notify(self, event: IterationEvent) -> None:
        for observer in self.observers:
            observer.on_iteration(event)


def budget_fraction(context: SearchContext, iteration: int) -> float:
    """Fraction of the tightest time or iteration budget consumed so far."""
    used = 0.0
    for condition in context.stop_conditions:
        if isinstance(condition, MaxTime):
            used = max(used, context.executor.elapsed_seconds / condition.seconds)
        elif isinstance(condition, MaxIterations):
            used = max(used, iteration / condition.count)
    return min(1.0, used)


class GenerationStrategy(ABC):
    """One test-generation algorithm; subclasses implement `iterate`."""

    name = "?"

    def __init__(self, config: SearchConfig | None = None):
        self.config = config or SearchConfig()
        self.archive: Archive | None = None

    def generate_tests(self, context: SearchContext) -> TestSuiteChromosome:
        self.prepare(context)
        iteration = 0
        while not self.should_stop(context, iteration):
            iteration += 1
            self.iterate(context, iteration)
            suite, results = self.snapshot(context)
            context.notify(
                IterationEvent(
                    iteration=iteration,
                    elapsed_s=context.executor.elapsed_seconds,
                    coverage=self.current_coverage(context),
                    suite=suite,
                    results=tuple(results),
                )
            )
        return self.build_suite(context)

    def should_stop(self, context: SearchContext, completed_iterations: int) -> bool:
        for condition in context.stop_conditions:
            if isinstance(condition, MaxIterations):
                if completed_iterations >= condition.count:
                    return True
            elif isinstance(condition, MaxTime):
                if context.executor.elapsed_seconds >= condition.seconds:
                    return True
            elif isinstance(condition, FullCoverage):
                if self.current_coverage(context) >= 1.0:
                    return True
        return False

    def prepare(self, context: SearchContext) -> None:
        self.archive = Archive(context.goals)

    @abstractmethod
    def iterate(self, context: SearchContext, iteration: int) -> None:
        """Run one algorithm iteration; population setup happens at iteration 1."""

    def current_coverage(self, context: SearchContext) -> float:
        return self.archive.coverage()

    def snapshot(self, context: SearchContext) -> tuple[TestSuiteChromosome, list[ExecutionResult]]:
        return self.archive.suite()

    def build_suite(self, context: SearchContext) -> TestSuiteChromosome:
        return self.snapshot(context)[0]
