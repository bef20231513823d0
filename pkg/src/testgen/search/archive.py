"""The archive: per goal, the shortest test case known to cover it."""

from __future__ import annotations

from testgen.fitness import CoverageGoal, goal_covered
from testgen.interp import ExecutionResult
from testgen.testcase.model import TestCase, TestSuiteChromosome


class Archive:
    def __init__(self, goals):
        self._goals: tuple[CoverageGoal, ...] = tuple(goals)
        self._entries: dict[CoverageGoal, tuple[TestCase, ExecutionResult]] = {}

    @property
    def goals(self) -> tuple[CoverageGoal, ...]:
        return self._goals

    def consider(self, test: TestCase, result: ExecutionResult) -> bool:
        """Store `test` for every goal it covers better; True if anything changed.

        An existing entry is replaced only by a strictly shorter test. Tests
        cut off by the step budget never enter the archive: whatever they
        cover en route, they are not worth keeping as tests.
        """
        if result.exhausted:
            return False
        improved = False
        for goal in self._goals:
            stored = self._entries.get(goal)
            if stored is not None and stored[0].size <= test.size:
                continue
            if goal_covered(goal, result):
                self._entries[goal] = (test, result)
                improved = True
        return improved

    def covers(self, goal: CoverageGoal) -> bool:
        return goal in self._entries

    def uncovered(self) -> tuple[CoverageGoal, ...]:
        return tuple(goal for goal in self._goals if goal not in self._entries)

    def coverage(self) -> float:
        if not self._goals:
            return 1.0
        return len(self._entries) / len(self._goals)

    def suite(self) -> tuple[TestSuiteChromosome, list[ExecutionResult]]:
        """Deduplicated covering tests in goal order, with their results."""
        tests: list[TestCase] = []
        results: list[ExecutionResult] = []
        for goal in self._goals:
            entry = self._entries.get(goal)
            if entry is None:
                continue
            test, result = entry
            if any(test == kept for kept in tests):
                continue
            tests.append(test)
            results.append(result)
        return TestSuiteChromosome(tests), results
