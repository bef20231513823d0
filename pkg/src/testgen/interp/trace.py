"""Execution traces, observations, statement outcomes, and step budgets."""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_MAX_STEPS = 100_000


@dataclass(frozen=True, slots=True)
class Budget:
    """Interpreter step allowance for one test execution."""

    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self) -> None:
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


@dataclass(frozen=True, slots=True)
class Observation:
    """A snapshot of one visible value after one test statement."""

    statement_index: int
    kind: str  # return-value | object-attribute
    path: str  # e.g. "var_2" or "var_2.items"
    value: object  # immutable snapshot
    var_index: int
    attr: str | None = None


@dataclass(slots=True)
class ExecutionTrace:
    lines_hit: set[int] = field(default_factory=set)
    # predicate id -> (min true distance, min false distance) over evaluations
    branch_results: dict[int, tuple[float, float]] = field(default_factory=dict)
    calls_entered: set[str] = field(default_factory=set)
    observations: list[Observation] = field(default_factory=list)

    def record_branch(self, predicate_id: int, true_d: float, false_d: float) -> None:
        previous = self.branch_results.get(predicate_id)
        if previous is None:
            self.branch_results[predicate_id] = (true_d, false_d)
        else:
            self.branch_results[predicate_id] = (
                min(previous[0], true_d),
                min(previous[1], false_d),
            )


OUTCOME_OK = "ok"
OUTCOME_ERROR = "runtime-error"
OUTCOME_BUDGET = "budget-exhausted"


@dataclass(frozen=True, slots=True)
class StatementOutcome:
    kind: str  # ok | runtime-error | budget-exhausted
    error_kind: str | None = None
    message: str = ""

    @property
    def is_ok(self) -> bool:
        return self.kind == OUTCOME_OK


@dataclass(slots=True)
class ExecutionResult:
    trace: ExecutionTrace
    outcomes: list[StatementOutcome]
    steps: int

    @property
    def ok(self) -> bool:
        return all(outcome.is_ok for outcome in self.outcomes)

    @property
    def first_failure(self) -> StatementOutcome | None:
        for outcome in self.outcomes:
            if not outcome.is_ok:
                return outcome
        return None

    @property
    def exhausted(self) -> bool:
        """True when execution was cut off by the step budget."""
        return any(outcome.kind == OUTCOME_BUDGET for outcome in self.outcomes)
