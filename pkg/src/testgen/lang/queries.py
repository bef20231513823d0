"""Structural queries over parsed modules used by coverage bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass

from testgen.lang.ast import (
    AssertStmt,
    Assign,
    AstModule,
    ClassDef,
    ExprStmt,
    FunctionDef,
    If,
    Node,
    Return,
    While,
)


@dataclass(frozen=True, slots=True)
class PredicateInfo:
    """One branching point: an if, elif, or while condition."""

    predicate_id: int
    line: int
    kind: str
    function: str


def collect_lines(module: AstModule) -> list[int]:
    """Return the sorted executable line numbers of a module.

    A line is executable if a statement starts on it; branch headers count,
    def and class lines do not.
    """
    lines: set[int] = set()
    for func in _all_functions(module):
        _statement_lines(func.body, lines)
    return sorted(lines)


def collect_predicates(module: AstModule) -> list[PredicateInfo]:
    """Return all predicates of a module in predicate-id order."""
    found: list[PredicateInfo] = []
    for name, func in _named_functions(module):
        _predicates(func.body, name, found)
    found.sort(key=lambda info: info.predicate_id)
    return found


def _all_functions(module: AstModule) -> list[FunctionDef]:
    return [func for _, func in _named_functions(module)]


def _named_functions(module: AstModule) -> list[tuple[str, FunctionDef]]:
    """All function definitions paired with their qualified names."""
    named = [(func.name, func) for func in module.functions]
    for cls in module.classes:
        named.extend((f"{cls.name}.{method.name}", method) for method in cls.methods)
    return named


def _statement_lines(body: list[Node], lines: set[int]) -> None:
    for stmt in body:
        if isinstance(stmt, (Assign, Return, ExprStmt, AssertStmt)):
            lines.add(stmt.line)
        elif isinstance(stmt, While):
            lines.add(stmt.line)
            _statement_lines(stmt.body, lines)
        elif isinstance(stmt, If):
            lines.add(stmt.line)
            _statement_lines(stmt.then_body, lines)
            for cond, clause_body in stmt.elif_clauses:
                lines.add(cond.line)
                _statement_lines(clause_body, lines)
            if stmt.else_body is not None:
                _statement_lines(stmt.else_body, lines)


def _predicates(body: list[Node], function: str, found: list[PredicateInfo]) -> None:
    for stmt in body:
        if isinstance(stmt, While):
            found.append(PredicateInfo(stmt.predicate_id, stmt.line, "while", function))
            _predicates(stmt.body, function, found)
        elif isinstance(stmt, If):
            found.append(PredicateInfo(stmt.predicate_id, stmt.line, "if", function))
            _predicates(stmt.then_body, function, found)
            for pid, (cond, clause_body) in zip(stmt.elif_predicate_ids, stmt.elif_clauses):
                found.append(PredicateInfo(pid, cond.line, "elif", function))
                _predicates(clause_body, function, found)
            if stmt.else_body is not None:
                _predicates(stmt.else_body, function, found)
