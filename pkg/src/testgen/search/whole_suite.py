"""Suite-level genetic algorithm, plain or with the goal archive.

Individuals are whole test suites scored by suite fitness. Execution results
travel with their tests, so unchanged tests are never re-executed. The
archive variant snapshots covering tests and optimizes only the goals that
remain uncovered.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from testgen.fitness import coverage, suite_fitness
from testgen.interp import ExecutionResult
from testgen.search.base import GenerationStrategy, SearchContext
from testgen.testcase.factory import sample_random_test_case
from testgen.testcase.model import TestCase, TestSuiteChromosome
from testgen.testcase.variation import mutate


@dataclass(slots=True)
class _SuiteMember:
    tests: list[TestCase]
    results: list[ExecutionResult | None] = field(default_factory=list)
    fitness: float = 0.0

    def statement_count(self) -> int:
        return sum(test.size for test in self.tests)


class WholeSuite(GenerationStrategy):
    name = "WHOLE_SUITE"
    use_archive = False

    def prepare(self, context: SearchContext) -> None:
        super().prepare(context)
        self.population: list[_SuiteMember] = []

    def iterate(self, context: SearchContext, iteration: int) -> None:
        rng = context.rng
        size = self.config.population_size
        if iteration == 1:
            self.population = [self._random_member(context) for _ in range(size)]
        else:
            next_population = self.population[: self.config.elite_count]
            while len(next_population) < size:
                first = self._rank_select(rng)
                second = self._rank_select(rng)
                if rng.random() < self.config.crossover_rate:
                    child_a, child_b = self._crossover(first, second, rng)
                else:
                    child_a = _SuiteMember(list(first.tests), list(first.results))
                    child_b = _SuiteMember(list(second.tests), list(second.results))
                for child in (child_a, child_b):
                    if len(next_population) >= size:
                        break
                    self._mutate_member(child, context)
                    next_population.append(child)
            self.population = next_population
        self._evaluate_population(context)
        self.population.sort(key=lambda member: (member.fitness, member.statement_count()))

    def _random_member(self, context: SearchContext) -> _SuiteMember:
        count = context.rng.randint(1, self.config.initial_suite_max_tests)
        tests = [
            sample_random_test_case(context.cluster, context.rng, self.config.max_test_length)
            for _ in range(count)
        ]
        return _SuiteMember(tests, [None] * count)

    def _rank_select(self, rng: random.Random) -> _SuiteMember:
        """Linear rank selection over the fitness-sorted population."""
        n = len(self.population)
        pick = rng.random() * (n * (n + 1) / 2)
        cumulative = 0.0
        for index, member in enumerate(self.population):
            cumulative += n - index
            if pick < cumulative:
                return member
        return self.population[-1]

    def _crossover(
        self, a: _SuiteMember, b: _SuiteMember, rng: random.Random
    ) -> tuple[_SuiteMember, _SuiteMember]:
        # Same relative-cut exchange as the suite crossover operator, but
        # carrying each test's cached execution result along.
        alpha = rng.random()
        cut_a = min(int(alpha * (len(a.tests) + 1)), len(a.tests))
        cut_b = min(int(alpha * (len(b.tests) + 1)), len(b.tests))
        child_a = _SuiteMember(
            a.tests[:cut_a] + b.tests[cut_b:], a.results[:cut_a] + b.results[cut_b:]
        )
        child_b = _SuiteMember(
            b.tests[:cut_b] + a.tests[cut_a:], b.results[:cut_b] + a.results[cut_a:]
        )
        for child in (child_a, child_b):
            cap = self.config.max_suite_size
            del child.tests[cap:]
            del child.results[cap:]
        return child_a, child_b

    def _mutate_member(self, member: _SuiteMember, context: SearchContext) -> None:
        rng = context.rng
        if member.tests:
            probability = 1.0 / len(member.tests)
            for index in range(len(member.tests)):
                if rng.random() < probability:
                    member.tests[index] = mutate(
                        member.tests[index],
                        context.cluster,
                        rng,
                        self.config.max_test_length,
                    )
                    member.results[index] = None
        exponent = 1
        while (
            len(member.tests) < self.config.max_suite_size
            and rng.random() < self.config.test_insertion_probability ** exponent
        ):
            member.tests.append(
                sample_random_test_case(context.cluster, rng, self.config.max_test_length)
            )
            member.results.append(None)
            exponent += 1

    def _evaluate_population(self, context: SearchContext) -> None:
        for member in self.population:
            for index, result in enumerate(member.results):
                if result is None:
                    executed = context.executor.execute(member.tests[index])
                    member.results[index] = executed
                    if self.use_archive:
                        self.archive.consider(member.tests[index], executed)
        targets = list(self.archive.uncovered()) if self.use_archive else list(context.goals)
        for member in self.population:
            member.fitness = suite_fitness(
                TestSuiteChromosome(list(member.tests)), member.results, targets
            )

    def current_coverage(self, context: SearchContext) -> float:
        if self.use_archive:
            return self.archive.coverage()
        if not self.population:
            return 1.0 if not context.goals else 0.0
        best = self.population[0]
        return coverage(best.results, list(context.goals))

    def snapshot(self, context: SearchContext) -> tuple[TestSuiteChromosome, list[ExecutionResult]]:
        if self.use_archive:
            return self.archive.suite()
        if not self.population:
            return TestSuiteChromosome([]), []
        best = self.population[0]
        return TestSuiteChromosome(list(best.tests)), list(best.results)


class WholeSuiteArchive(WholeSuite):
    name = "WHOLE_SUITE_ARCHIVE"
    use_archive = True
