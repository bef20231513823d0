"""Regression assertions from differential execution traces.

Every test is executed with state observation on the original module and on
each mutant. Where the traces first diverge, an assertion pins the original
(ground-truth) value; replaying the suite then kills the mutant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from testgen.assertgen.mutation import Mutant
from testgen.interp import (
    ModuleImage,
    Observation,
    execute_test,
    prepare_module,
    value_to_literal,
)
from testgen.interp.values import is_numeric, snapshot_equal
from testgen.lang import AstModule
from testgen.testcase.model import TestCase, TestSuiteChromosome

FLOAT_TOLERANCE = 1e-6
DEFAULT_SYNTHESIS_BUDGET = 50_000_000


@dataclass(frozen=True, slots=True)
class PrimitiveEquals:
    statement_index: int
    path: str
    var_index: int
    expected: object


@dataclass(frozen=True, slots=True)
class FloatApprox:
    statement_index: int
    path: str
    var_index: int
    expected: float
    attr: str | None = None
    tolerance: float = FLOAT_TOLERANCE


@dataclass(frozen=True, slots=True)
class IsNone:
    statement_index: int
    path: str
    var_index: int
    attr: str | None = None


@dataclass(frozen=True, slots=True)
class AttributeEquals:
    statement_index: int
    path: str
    var_index: int
    attr: str
    expected: object


Assertion = Union[PrimitiveEquals, FloatApprox, IsNone, AttributeEquals]


@dataclass(frozen=True, slots=True)
class ObservationPoint:
    statement_index: int
    kind: str
    path: str


@dataclass(frozen=True, slots=True)
class AssertedTest:
    test: TestCase
    assertions: tuple[Assertion, ...]


@dataclass(frozen=True, slots=True)
class KillRecord:
    mutant_id: int
    operator: str
    killed_by: str  # test name, or "" when the mutant survived


@dataclass(frozen=True, slots=True)
class KillReport:
    records: tuple[KillRecord, ...]
    incomplete: bool = False


def diff_observations(
    original: list[Observation], mutant: list[Observation]
) -> list[ObservationPoint]:
    """Points where the mutant's observed state departs from the original.

    A point the original recorded but the mutant did not (it crashed or ran
    out of budget earlier) counts as differing.
    """
    mutant_values = {
        (obs.statement_index, obs.kind, obs.path): obs.value for obs in mutant
    }
    points: list[ObservationPoint] = []
    for obs in original:
        key = (obs.statement_index, obs.kind, obs.path)
        if key not in mutant_values or not _values_match(obs.value, mutant_values[key]):
            points.append(ObservationPoint(*key))
    return points


def _values_match(a: object, b: object) -> bool:
    """Snapshot equality, with the assertion tolerance applied to floats."""
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(_values_match(x, y) for x, y in zip(a, b))
    if isinstance(a, tuple) or isinstance(b, tuple):
        return False
    a_float = isinstance(a, float)
    b_float = isinstance(b, float)
    if a_float or b_float:
        if not (is_numeric(a) and is_numeric(b)):
            return False
        if a_float and b_float and math.isnan(a) and math.isnan(b):
            return True
        try:
            return abs(a - b) <= FLOAT_TOLERANCE
        except OverflowError:
            return False
    return snapshot_equal(a, b)


def assertion_from_observation(obs: Observation) -> Assertion | None:
    """The strongest renderable assertion pinning this observation, if any."""
    value = obs.value
    if value is None:
        return IsNone(obs.statement_index, obs.path, obs.var_index, obs.attr)
    if isinstance(value, float) and not isinstance(value, bool):
        if not math.isfinite(value):
            return None
        return FloatApprox(obs.statement_index, obs.path, obs.var_index, value, obs.attr)
    try:
        value_to_literal(value)
    except ValueError:
        return None
    if obs.kind == "object-attribute":
        return AttributeEquals(obs.statement_index, obs.path, obs.var_index, obs.attr, value)
    return PrimitiveEquals(obs.statement_index, obs.path, obs.var_index, value)


def synthesize_assertions(
    suite: TestSuiteChromosome,
    original_module: AstModule | ModuleImage,
    mutants: list[Mutant],
    budget: int = DEFAULT_SYNTHESIS_BUDGET,
    resolver=None,
) -> tuple[list[AssertedTest], KillReport]:
    """Attach mutant-killing assertions to the suite and report kill status.

    `budget` caps the total interpreter steps spent; when it runs out the
    report covers only the mutants attempted so far and is flagged
    incomplete. Tests that error on the original module are skipped.
    """
    image = prepare_module(original_module, resolver)
    steps_used = 0
    originals: list[list[Observation] | None] = []
    for test in suite.test_cases:
        result = execute_test(test, image, observe=True)
        steps_used += result.steps
        originals.append(list(result.trace.observations) if result.ok else None)

    assertions: list[list[Assertion]] = [[] for _ in suite.test_cases]
    records: list[KillRecord] = []
    incomplete = False
    for mutant in mutants:
        if steps_used >= budget:
            incomplete = True
            break
        mutant_image = prepare_module(mutant.module, resolver)
        killed_by = ""
        for index, test in enumerate(suite.test_cases):
            observed = originals[index]
            if observed is None:
                continue
            if steps_used >= budget:
                incomplete = True
                break
            mutant_result = execute_test(test, mutant_image, observe=True)
            steps_used += mutant_result.steps
            points = diff_observations(observed, list(mutant_result.trace.observations))
            if not points:
                continue
            placed = _place_assertion(observed, points, assertions[index])
            if placed:
                killed_by = f"test_case_{index}"
                break
        records.append(KillRecord(mutant.id, mutant.operator, killed_by))
    return (
        [
            AssertedTest(test, _ordered(assertions[index]))
            for index, test in enumerate(suite.test_cases)
        ],
        KillReport(tuple(records), incomplete),
    )


def _place_assertion(
    observed: list[Observation],
    points: list[ObservationPoint],
    existing: list[Assertion],
) -> bool:
    """Add the assertion for the first renderable differing point.

    Returns True when the point is pinned, including when an identical
    assertion is already present (the mutant is killed either way).
    """
    by_key = {(obs.statement_index, obs.kind, obs.path): obs for obs in observed}
    for point in points:
        obs = by_key[(point.statement_index, point.kind, point.path)]
        assertion = assertion_from_observation(obs)
        if assertion is None:
            continue
        if assertion not in existing:
            existing.append(assertion)
        return True
    return False


def _ordered(assertions: list[Assertion]) -> tuple[Assertion, ...]:
    return tuple(sorted(assertions, key=lambda a: (a.statement_index, a.path)))
