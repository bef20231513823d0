"""Many-objective search over test cases.

Each uncovered goal is one objective. Selection combines the preference
criterion (the single best test per goal forms rank 0) with non-dominated
sorting and crowding distance. The dynamic variant restricts objectives to
goals whose control-dependency parent is already covered.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from testgen.fitness import BranchGoal, CoverageGoal, LineGoal, goal_fitness
from testgen.interp import ExecutionResult
from testgen.search.base import GenerationStrategy, SearchContext
from testgen.testcase.factory import sample_random_test_case
from testgen.testcase.model import TestCase
from testgen.testcase.variation import mutate

_INF = float("inf")


@dataclass(slots=True)
class _Member:
    test: TestCase
    result: ExecutionResult
    rank: int = 0
    crowding: float = 0.0


class Mosa(GenerationStrategy):
    name = "MOSA"

    def prepare(self, context: SearchContext) -> None:
        super().prepare(context)
        self.population: list[_Member] = []

    def targets(self, context: SearchContext) -> tuple[CoverageGoal, ...]:
        return self.archive.uncovered()

    def iterate(self, context: SearchContext, iteration: int) -> None:
        rng = context.rng
        size = self.config.population_size
        if iteration == 1:
            candidates = [
                self._evaluate(
                    context,
                    sample_random_test_case(context.cluster, rng, self.config.max_test_length),
                )
                for _ in range(size)
            ]
        else:
            offspring = [
                self._evaluate(
                    context,
                    mutate(
                        self._tournament(rng).test,
                        context.cluster,
                        rng,
                        self.config.max_test_length,
                    ),
                )
                for _ in range(size)
            ]
            candidates = self.population + offspring
        self.population = self._environmental_selection(candidates, self.targets(context), size)

    def _evaluate(self, context: SearchContext, test: TestCase) -> _Member:
        result = context.executor.execute(test)
        self.archive.consider(test, result)
        return _Member(test, result)

    def _tournament(self, rng: random.Random) -> _Member:
        best = None
        for _ in range(self.config.tournament_size):
            candidate = self.population[rng.randrange(len(self.population))]
            if best is None or (candidate.rank, -candidate.crowding) < (best.rank, -best.crowding):
                best = candidate
        return best

    def _environmental_selection(
        self,
        candidates: list[_Member],
        targets: tuple[CoverageGoal, ...],
        size: int,
    ) -> list[_Member]:
        if not targets:
            for member in candidates:
                member.rank = 0
                member.crowding = 0.0
            return candidates[:size]
        vectors = [
            tuple(goal_fitness(goal, member.result) for goal in targets)
            for member in candidates
        ]
        population: list[_Member] = []
        rank = 0
        for front in _preference_sorting(candidates, vectors, len(targets)):
            if len(population) >= size:
                break
            crowding = _crowding_distances(front, vectors, len(targets))
            for i in front:
                candidates[i].rank = rank
                candidates[i].crowding = crowding[i]
            room = size - len(population)
            if len(front) <= room:
                population.extend(candidates[i] for i in front)
            else:
                kept = sorted(front, key=lambda i: (-crowding[i], i))[:room]
                population.extend(candidates[i] for i in kept)
            rank += 1
        return population


class DynaMosa(Mosa):
    name = "DYNAMOSA"

    def targets(self, context: SearchContext) -> tuple[CoverageGoal, ...]:
        return tuple(goal for goal in self.archive.uncovered() if self._unlocked(goal))

    def _unlocked(self, goal: CoverageGoal) -> bool:
        parent = _parent_dependence(goal)
        if parent is None:
            return True
        return self.archive.covers(BranchGoal(parent[0], parent[1]))


def _parent_dependence(goal: CoverageGoal) -> tuple[int, bool] | None:
    if isinstance(goal, BranchGoal):
        return goal.chain[1] if len(goal.chain) > 1 else None
    if isinstance(goal, LineGoal):
        return goal.ancestors[0] if goal.ancestors else None
    return None


def _preference_sorting(
    candidates: list[_Member],
    vectors: list[tuple[float, ...]],
    width: int,
) -> list[list[int]]:
    """Rank-0 front holds the best test per objective; the rest is sorted."""
    preferred: list[int] = []
    for objective in range(width):
        best = min(
            range(len(candidates)),
            key=lambda i: (vectors[i][objective], candidates[i].test.size, i),
        )
        if best not in preferred:
            preferred.append(best)
    rest = [i for i in range(len(candidates)) if i not in preferred]
    return [preferred, *_nondominated_fronts(rest, vectors)]


def _nondominated_fronts(
    indices: list[int], vectors: list[tuple[float, ...]]
) -> list[list[int]]:
    if not indices:
        return []
    dominated_by: dict[int, list[int]] = {i: [] for i in indices}
    counts: dict[int, int] = {i: 0 for i in indices}
    for position, a in enumerate(indices):
        for b in indices[position + 1 :]:
            relation = _dominance(vectors[a], vectors[b])
            if relation < 0:
                dominated_by[a].append(b)
                counts[b] += 1
            elif relation > 0:
                dominated_by[b].append(a)
                counts[a] += 1
    fronts: list[list[int]] = []
    current = [i for i in indices if counts[i] == 0]
    while current:
        fronts.append(current)
        upcoming: list[int] = []
        for a in current:
            for b in dominated_by[a]:
                counts[b] -= 1
                if counts[b] == 0:
                    upcoming.append(b)
        current = upcoming
    return fronts


def _dominance(first: tuple[float, ...], second: tuple[float, ...]) -> int:
    """-1 if first dominates second, 1 for the reverse, 0 otherwise."""
    first_better = False
    second_better = False
    for x, y in zip(first, second):
        if x < y:
            if second_better:
                return 0
            first_better = True
        elif y < x:
            if first_better:
                return 0
            second_better = True
    if first_better:
        return -1
    if second_better:
        return 1
    return 0


def _crowding_distances(
    front: list[int], vectors: list[tuple[float, ...]], width: int
) -> dict[int, float]:
    distance = {i: 0.0 for i in front}
    if len(front) <= 2:
        return {i: _INF for i in front}
    for objective in range(width):
        ordered = sorted(front, key=lambda i: (vectors[i][objective], i))
        low = vectors[ordered[0]][objective]
        high = vectors[ordered[-1]][objective]
        distance[ordered[0]] = _INF
        distance[ordered[-1]] = _INF
        if high <= low:
            continue
        span = high - low
        for position in range(1, len(ordered) - 1):
            middle = ordered[position]
            if distance[middle] == _INF:
                continue
            gap = (
                vectors[ordered[position + 1]][objective]
                - vectors[ordered[position - 1]][objective]
            )
            distance[middle] += gap / span
    return distance
