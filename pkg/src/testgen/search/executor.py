"""Test execution on a deterministic virtual clock.

Search time is measured in interpreter steps, not wall-clock seconds: the
same seed and configuration then spend the budget identically on every
machine and every run. Each execution also pays a small fixed overhead so
that even empty test cases consume budget.
"""

from __future__ import annotations

import logging

from testgen.interp import (
    DEFAULT_MAX_STEPS,
    Budget,
    ExecutionResult,
    ModuleImage,
    execute_test,
    prepare_module,
)
from testgen.lang import AstModule
from testgen.testcase.model import TestCase

VIRTUAL_STEPS_PER_SECOND = 50_000
EXECUTION_OVERHEAD_STEPS = 50

logger = logging.getLogger(__name__)


class SearchExecutor:
    """Runs test cases against one module and accounts for their cost."""

    def __init__(
        self,
        module: AstModule | ModuleImage,
        resolver=None,
        max_steps_per_test: int = DEFAULT_MAX_STEPS,
    ):
        self._image = prepare_module(module, resolver)
        self._budget = Budget(max_steps_per_test)
        self.steps_consumed = 0
        self.executions = 0

    @property
    def module_name(self) -> str:
        return self._image.name

    def execute(self, test: TestCase, observe: bool = False) -> ExecutionResult:
        result = execute_test(test, self._image, budget=self._budget, observe=observe)
        self.steps_consumed += result.steps + EXECUTION_OVERHEAD_STEPS
        self.executions += 1
        if logger.isEnabledFor(logging.DEBUG):
            outcome = "ok" if result.ok else result.first_failure.kind
            logger.debug(
                "execution %d: %d statements, %d steps, %s",
                self.executions,
                test.size,
                result.steps,
                outcome,
            )
        return result

    @property
    def elapsed_seconds(self) -> float:
        return self.steps_consumed / VIRTUAL_STEPS_PER_SECOND
