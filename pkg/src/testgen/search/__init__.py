"""Search algorithms, stopping conditions, the archive, and the registry."""

from __future__ import annotations

import random

from testgen.analysis import TestCluster
from testgen.fitness import CoverageGoal
from testgen.search.archive import Archive
from testgen.search.base import (
    GenerationStrategy,
    IterationEvent,
    SearchConfig,
    SearchContext,
    SearchObserver,
    budget_fraction,
)
from testgen.search.executor import (
    EXECUTION_OVERHEAD_STEPS,
    VIRTUAL_STEPS_PER_SECOND,
    SearchExecutor,
)
from testgen.search.mio import Mio
from testgen.search.mosa import DynaMosa, Mosa
from testgen.search.random_strategies import FeedbackDirectedRandom, RandomTestCaseSearch
from testgen.search.registry import (
    DuplicateNameError,
    UnknownNameError,
    create_strategy,
    register_strategy,
    registered_strategies,
    unregister_strategy,
)
from testgen.search.stopping import FullCoverage, MaxIterations, MaxTime, StoppingCondition
from testgen.search.whole_suite import WholeSuite, WholeSuiteArchive
from testgen.testcase.model import TestSuiteChromosome

ALGORITHM_NAMES = (
    "RANDOM",
    "RANDOM_TEST_CASE_SEARCH",
    "MOSA",
    "DYNAMOSA",
    "MIO",
    "WHOLE_SUITE",
    "WHOLE_SUITE_ARCHIVE",
)

for _strategy in (
    FeedbackDirectedRandom,
    RandomTestCaseSearch,
    Mosa,
    DynaMosa,
    Mio,
    WholeSuite,
    WholeSuiteArchive,
):
    register_strategy(_strategy.name, _strategy)


def _run(
    name: str,
    cluster: TestCluster,
    goals,
    executor: SearchExecutor,
    stop,
    rng: random.Random,
    observers=(),
    config: SearchConfig | None = None,
) -> TestSuiteChromosome:
    strategy = create_strategy(name, config)
    context = SearchContext(
        cluster=cluster,
        goals=tuple(goals),
        executor=executor,
        stop_conditions=tuple(stop),
        rng=rng,
        observers=tuple(observers),
    )
    return strategy.generate_tests(context)


def run_random(cluster, goals, executor, stop, rng, observers=(), config=None):
    return _run("RANDOM", cluster, goals, executor, stop, rng, observers, config)


def run_random_testcase_search(cluster, goals, executor, stop, rng, observers=(), config=None):
    return _run("RANDOM_TEST_CASE_SEARCH", cluster, goals, executor, stop, rng, observers, config)


def run_mosa(cluster, goals, executor, stop, rng, observers=(), config=None):
    return _run("MOSA", cluster, goals, executor, stop, rng, observers, config)


def run_dynamosa(cluster, goals, executor, stop, rng, observers=(), config=None):
    return _run("DYNAMOSA", cluster, goals, executor, stop, rng, observers, config)


def run_mio(cluster, goals, executor, stop, rng, observers=(), config=None):
    return _run("MIO", cluster, goals, executor, stop, rng, observers, config)


def run_whole_suite(
    cluster, goals, executor, stop, rng, use_archive: bool = False, observers=(), config=None
):
    name = "WHOLE_SUITE_ARCHIVE" if use_archive else "WHOLE_SUITE"
    return _run(name, cluster, goals, executor, stop, rng, observers, config)


__all__ = [
    "ALGORITHM_NAMES",
    "Archive",
    "DuplicateNameError",
    "DynaMosa",
    "EXECUTION_OVERHEAD_STEPS",
    "FeedbackDirectedRandom",
    "FullCoverage",
    "GenerationStrategy",
    "IterationEvent",
    "MaxIterations",
    "MaxTime",
    "Mio",
    "Mosa",
    "RandomTestCaseSearch",
    "SearchConfig",
    "SearchContext",
    "SearchExecutor",
    "SearchObserver",
    "StoppingCondition",
    "TestSuiteChromosome",
    "UnknownNameError",
    "VIRTUAL_STEPS_PER_SECOND",
    "WholeSuite",
    "WholeSuiteArchive",
    "budget_fraction",
    "create_strategy",
    "register_strategy",
    "registered_strategies",
    "run_dynamosa",
    "run_mio",
    "run_mosa",
    "run_random",
    "run_random_testcase_search",
    "run_whole_suite",
    "unregister_strategy",
]
