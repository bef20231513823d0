"""Coverage goals and fitness: approach level plus normalized branch distance.

Control dependencies come from AST nesting: an if/while is the parent of
every goal inside its blocks, an elif hangs off the false side of the
predicate before it. Each goal carries its own dependency chain so fitness
needs nothing beyond the execution result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from testgen.interp.trace import ExecutionResult
from testgen.lang import (
    AssertStmt,
    Assign,
    AstModule,
    ExprStmt,
    FunctionDef,
    If,
    Node,
    Return,
    While,
)
from testgen.testcase.model import TestSuiteChromosome

# (predicate id, polarity that leads toward the goal)
Dependence = tuple[int, bool]


@dataclass(frozen=True, slots=True)
class LineGoal:
    line: int
    ancestors: tuple[Dependence, ...] = field(default=(), compare=False)


@dataclass(frozen=True, slots=True)
class BranchGoal:
    predicate_id: int
    polarity: bool
    # chain[0] is this goal's own predicate; outward from there.
    chain: tuple[Dependence, ...] = field(default=(), compare=False)


@dataclass(frozen=True, slots=True)
class RootGoal:
    """A branchless callable: covered as soon as it is entered."""

    callable_id: str


CoverageGoal = LineGoal | BranchGoal | RootGoal

CRITERIA = ("branch", "line")


def norm(distance: float) -> float:
    """Map a non-negative distance into [0, 1)."""
    return distance / (distance + 1.0)


def build_goals(module: AstModule, criterion: str) -> list[CoverageGoal]:
    """The deterministic goal set of a module for one coverage criterion."""
    if criterion not in CRITERIA:
        raise ValueError(f"unknown coverage criterion {criterion!r}")
    goals: list[CoverageGoal] = []
    for qualname, func in _named_functions(module):
        collector = _GoalCollector(criterion)
        collector.walk(func.body, ())
        if criterion == "branch":
            if collector.branch_goals:
                goals.extend(collector.branch_goals)
            else:
                goals.append(RootGoal(qualname))
        else:
            goals.extend(collector.line_goals)
    return goals


class _GoalCollector:
    def __init__(self, criterion: str):
        self._criterion = criterion
        self.branch_goals: list[BranchGoal] = []
        self.line_goals: list[LineGoal] = []

    def walk(self, body: list[Node], context: tuple[Dependence, ...]) -> None:
        for stmt in body:
            if isinstance(stmt, (Assign, Return, ExprStmt, AssertStmt)):
                self._line(stmt.line, context)
            elif isinstance(stmt, While):
                self._line(stmt.line, context)
                self._branches(stmt.predicate_id, context)
                self.walk(stmt.body, ((stmt.predicate_id, True),) + context)
            elif isinstance(stmt, If):
                self._line(stmt.line, context)
                self._branches(stmt.predicate_id, context)
                self.walk(stmt.then_body, ((stmt.predicate_id, True),) + context)
                previous = (stmt.predicate_id, False)
                for pid, (cond, clause_body) in zip(stmt.elif_predicate_ids, stmt.elif_clauses):
                    elif_context = (previous,) + context
                    self._line(cond.line, elif_context)
                    self._branches(pid, elif_context)
                    self.walk(clause_body, ((pid, True),) + elif_context)
                    previous = (pid, False)
                if stmt.else_body is not None:
                    self.walk(stmt.else_body, (previous,) + context)

    def _line(self, line: int, context: tuple[Dependence, ...]) -> None:
        if self._criterion == "line":
            self.line_goals.append(LineGoal(line, context))

    def _branches(self, predicate_id: int, context: tuple[Dependence, ...]) -> None:
        if self._criterion == "branch":
            self.branch_goals.append(
                BranchGoal(predicate_id, True, ((predicate_id, True),) + context)
            )
            self.branch_goals.append(
                BranchGoal(predicate_id, False, ((predicate_id, False),) + context)
            )


def _named_functions(module: AstModule) -> list[tuple[str, FunctionDef]]:
    named = [(func.name, func) for func in module.functions]
    for cls in module.classes:
        named.extend((f"{cls.name}.{method.name}", method) for method in cls.methods)
    return named


def goal_fitness(goal: CoverageGoal, result: ExecutionResult) -> float:
    """0 iff covered; otherwise approach level plus normalized distance."""
    trace = result.trace
    if isinstance(goal, RootGoal):
        return 0.0 if goal.callable_id in trace.calls_entered else 1.0
    if isinstance(goal, BranchGoal):
        branch_results = trace.branch_results
        for level, (pid, needed) in enumerate(goal.chain):
            record = branch_results.get(pid)
            if record is not None:
                distance = record[0] if needed else record[1]
                return level + norm(distance)
        return float(len(goal.chain))
    # Line goal: hit, or shaped by the closest executed ancestor predicate.
    if goal.line in trace.lines_hit:
        return 0.0
    branch_results = trace.branch_results
    best = None
    for pid, needed in goal.ancestors:
        record = branch_results.get(pid)
        if record is not None:
            distance = norm(record[0] if needed else record[1])
            if best is None or distance < best:
                best = distance
    if best is None:
        return 2.0
    return 1.0 + best


def max_goal_fitness(goal: CoverageGoal) -> float:
    """The worst possible fitness for a goal (used for empty suites)."""
    if isinstance(goal, RootGoal):
        return 1.0
    if isinstance(goal, BranchGoal):
        return float(len(goal.chain))
    return 2.0


def goal_covered(goal: CoverageGoal, result: ExecutionResult) -> bool:
    trace = result.trace
    if isinstance(goal, RootGoal):
        return goal.callable_id in trace.calls_entered
    if isinstance(goal, BranchGoal):
        record = trace.branch_results.get(goal.predicate_id)
        if record is None:
            return False
        return (record[0] if goal.polarity else record[1]) == 0.0
    return goal.line in trace.lines_hit


def suite_fitness(
    suite: TestSuiteChromosome,
    results: list[ExecutionResult],
    goals: list[CoverageGoal],
) -> float:
    """Sum over goals of the best (minimum) per-test fitness."""
    if len(results) != suite.size:
        raise ValueError("one execution result per test case is required")
    if not results:
        return sum(max_goal_fitness(goal) for goal in goals)
    total = 0.0
    for goal in goals:
        total += min(goal_fitness(goal, result) for result in results)
    return total


def coverage(results: list[ExecutionResult], goals: list[CoverageGoal]) -> float:
    """Fraction of goals covered by at least one result; 1.0 for no goals."""
    if not goals:
        return 1.0
    covered = 0
    for goal in goals:
        if any(goal_covered(goal, result) for result in results):
            covered += 1
    return covered / len(goals)
