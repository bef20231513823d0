"""The two random baselines: plain sampling and feedback-directed extension."""

from __future__ import annotations

from testgen.search.base import GenerationStrategy, SearchContext
from testgen.testcase.factory import fulfill_parameters, sample_random_test_case
from testgen.testcase.model import TestCase


class RandomTestCaseSearch(GenerationStrategy):
    """Sample a fresh random test, execute it, keep it if the archive improves."""

    name = "RANDOM_TEST_CASE_SEARCH"

    def iterate(self, context: SearchContext, iteration: int) -> None:
        test = sample_random_test_case(
            context.cluster, context.rng, self.config.max_test_length
        )
        result = context.executor.execute(test)
        self.archive.consider(test, result)


class FeedbackDirectedRandom(GenerationStrategy):
    """Grow call sequences one call at a time, never extending erroring ones."""

    name = "RANDOM"

    def prepare(self, context: SearchContext) -> None:
        super().prepare(context)
        self.sequences: list[TestCase] = [TestCase()]
        self.error_pool: list[TestCase] = []

    def iterate(self, context: SearchContext, iteration: int) -> None:
        rng = context.rng
        cluster = context.cluster
        test = self._extend_one(context)
        if test is None:
            test = sample_random_test_case(cluster, rng, self.config.max_test_length)
        result = context.executor.execute(test)
        self.archive.consider(test, result)
        if result.ok:
            self.sequences.append(test)
        else:
            self.error_pool.append(test)

    def _extend_one(self, context: SearchContext) -> TestCase | None:
        rng = context.rng
        cluster = context.cluster
        if not cluster.accessible_callables:
            return TestCase()
        base = self.sequences[rng.randrange(len(self.sequences))]
        if base.size >= self.config.max_test_length:
            base = TestCase()
        extended = base.clone()
        target = cluster.accessible_callables[rng.randrange(len(cluster.accessible_callables))]
        fragment = fulfill_parameters(
            target,
            cluster,
            rng,
            test=extended,
            position=extended.size,
            max_len=self.config.max_test_length,
        )
        if fragment is None:
            return None
        extended.statements.extend(fragment)
        return extended
