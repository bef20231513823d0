"""Per-goal test populations with a schedule that narrows toward exploitation.

Every goal keeps a bucket of the most promising tests seen for it. Early on,
new tests are mostly random samples and buckets are wide; as the budget runs
down, the random probability decays to zero and buckets shrink to a single
test (the focused phase).
"""

from __future__ import annotations

from testgen.fitness import CoverageGoal, goal_fitness, max_goal_fitness
from testgen.interp import ExecutionResult
from testgen.search.base import GenerationStrategy, SearchContext, budget_fraction
from testgen.testcase.factory import sample_random_test_case
from testgen.testcase.model import TestCase
from testgen.testcase.variation import mutate

# (fitness, test size, insertion sequence, test, result): tuple order sorts
# better tests first and breaks ties deterministically.
_Entry = tuple[float, int, int, TestCase, ExecutionResult]


class Mio(GenerationStrategy):
    name = "MIO"

    def prepare(self, context: SearchContext) -> None:
        super().prepare(context)
        self.buckets: dict[CoverageGoal, list[_Entry]] = {goal: [] for goal in context.goals}
        self._inserts = 0

    def iterate(self, context: SearchContext, iteration: int) -> None:
        rng = context.rng
        progress = self._progress(context, iteration)
        random_probability = self.config.mio_random_probability * (1.0 - progress)
        capacity = max(1, round(self.config.mio_bucket_size * (1.0 - progress)))
        source_goals = [
            goal
            for goal in context.goals
            if self.buckets[goal] and not self.archive.covers(goal)
        ]
        if not source_goals or rng.random() < random_probability:
            test = sample_random_test_case(context.cluster, rng, self.config.max_test_length)
        else:
            goal = source_goals[rng.randrange(len(source_goals))]
            bucket = self.buckets[goal]
            base = bucket[rng.randrange(len(bucket))][3]
            test = mutate(base, context.cluster, rng, self.config.max_test_length)
        result = context.executor.execute(test)
        self.archive.consider(test, result)
        self._feed_buckets(context, test, result, capacity)

    def _feed_buckets(
        self,
        context: SearchContext,
        test: TestCase,
        result: ExecutionResult,
        capacity: int,
    ) -> None:
        for goal in context.goals:
            bucket = self.buckets[goal]
            if self.archive.covers(goal):
                # The archive already holds the best covering test.
                if bucket:
                    bucket.clear()
                continue
            fitness = goal_fitness(goal, result)
            if fitness >= max_goal_fitness(goal):
                continue
            self._inserts += 1
            bucket.append((fitness, test.size, self._inserts, test, result))
            bucket.sort(key=lambda entry: entry[:3])
            del bucket[capacity:]

    def _progress(self, context: SearchContext, iteration: int) -> float:
        """0 at the start, 1 from the focused phase onward."""
        focused = self.config.mio_focused_fraction
        if focused <= 0:
            return 1.0
        return min(1.0, budget_fraction(context, iteration) / focused)
