"""Render evolved suites as runnable MiniDyn test modules.

The output is a flat module of ``test_case_<i>`` functions preceded by a
single ``use <module> as module0`` directive. Rendering goes through the
regular source renderer, so written files parse back to the same text.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

from testgen.assertgen import (
    AssertedTest,
    Assertion,
    AttributeEquals,
    FloatApprox,
    IsNone,
    PrimitiveEquals,
)
from testgen.interp import value_to_literal
from testgen.lang import (
    AssertStmt,
    Assign,
    AstModule,
    Attribute,
    BinOp,
    Call,
    FloatLit,
    FunctionDef,
    ListLit,
    Name,
    Node,
    NoneLit,
    Return,
    UseDirective,
    render_source,
)
from testgen.testcase import (
    ConstructorStatement,
    FunctionStatement,
    ListStatement,
    MethodStatement,
    PrimitiveStatement,
    Statement,
    TestCase,
    TestSuiteChromosome,
)

MODULE_ALIAS = "module0"

SuiteLike = Union[TestSuiteChromosome, Sequence[Union[AssertedTest, TestCase]]]


@dataclass(frozen=True, slots=True)
class RenderedTestModule:
    """A rendered test module ready to be written to disk."""

    module_name: str
    text: str
    test_names: tuple[str, ...]


def render_test_module(tests: SuiteLike, module_name: str) -> RenderedTestModule:
    """Render ``tests`` as the source text of a test module for ``module_name``.

    Accepts a suite chromosome, plain test cases, or asserted tests; an empty
    suite yields a module with the header and no test functions.
    """
    functions = [
        _render_test(entry, index) for index, entry in enumerate(_asserted(tests))
    ]
    module = AstModule(
        name=f"test_{module_name}",
        uses=[UseDirective(module=module_name, alias=MODULE_ALIAS)],
        functions=functions,
        classes=[],
    )
    return RenderedTestModule(
        module_name=module_name,
        text=render_source(module),
        test_names=tuple(func.name for func in functions),
    )


def write_test_module(rendered: RenderedTestModule, output_dir: Path | str) -> Path:
    """Write ``rendered`` to ``test_<module>.mdyn`` under ``output_dir``."""
    directory = Path(output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    target = directory / f"test_{rendered.module_name}.mdyn"
    target.write_text(rendered.text, encoding="utf-8")
    return target


def _asserted(tests: SuiteLike) -> Iterable[AssertedTest]:
    entries = tests.test_cases if isinstance(tests, TestSuiteChromosome) else tests
    for entry in entries:
        if isinstance(entry, AssertedTest):
            yield entry
        else:
            yield AssertedTest(test=entry, assertions=())


def _render_test(entry: AssertedTest, index: int) -> FunctionDef:
    names = _variable_names(entry.test)
    body: list[Node] = []
    for stmt_index, stmt in enumerate(entry.test.statements):
        body.append(Assign(target=Name(names[stmt_index]), value=_expression(stmt, names)))
        for assertion in entry.assertions:
            if assertion.statement_index == stmt_index:
                body.append(AssertStmt(test=_assertion_expr(assertion, names)))
    if not body:
        # The grammar wants at least one statement per function body.
        body.append(Return())
    return FunctionDef(name=f"test_case_{index}", params=[], body=body)


def _variable_names(test: TestCase) -> list[str]:
    counters: dict[str, int] = {}
    names: list[str] = []
    for stmt in test.statements:
        prefix = _name_prefix(stmt)
        ordinal = counters.get(prefix, 0)
        counters[prefix] = ordinal + 1
        names.append(f"{prefix}_{ordinal}")
    return names


def _name_prefix(stmt: Statement) -> str:
    if isinstance(stmt, PrimitiveStatement):
        if stmt.value is None:
            return "none"
        if isinstance(stmt.value, bool):
            return "bool"
        return type(stmt.value).__name__
    if isinstance(stmt, ListStatement):
        return "list"
    if isinstance(stmt, ConstructorStatement):
        return stmt.callable.name.lower()
    declared = stmt.ret_type
    if declared is None:
        return "var"
    return declared.base_name.lower()


def _expression(stmt: Statement, names: list[str]) -> Node:
    if isinstance(stmt, PrimitiveStatement):
        return value_to_literal(stmt.value)
    if isinstance(stmt, ListStatement):
        return ListLit(elements=[Name(names[ref]) for ref in stmt.elements])
    if isinstance(stmt, (ConstructorStatement, FunctionStatement)):
        func = Attribute(obj=Name(MODULE_ALIAS), attr=stmt.callable.name)
        return Call(func=func, args=[Name(names[ref]) for ref in stmt.args])
    method = stmt.callable.name.rsplit(".", 1)[-1]
    func = Attribute(obj=Name(names[stmt.receiver]), attr=method)
    return Call(func=func, args=[Name(names[ref]) for ref in stmt.args])


def _assertion_expr(assertion: Assertion, names: list[str]) -> Node:
    subject: Node = Name(names[assertion.var_index])
    if isinstance(assertion, PrimitiveEquals):
        return BinOp(op="==", left=subject, right=value_to_literal(assertion.expected))
    if isinstance(assertion, AttributeEquals):
        subject = Attribute(obj=subject, attr=assertion.attr)
        return BinOp(op="==", left=subject, right=value_to_literal(assertion.expected))
    if assertion.attr is not None:
        subject = Attribute(obj=subject, attr=assertion.attr)
    if isinstance(assertion, IsNone):
        return BinOp(op="==", left=subject, right=NoneLit())
    delta = Call(
        func=Name("abs"),
        args=[BinOp(op="-", left=subject, right=FloatLit(assertion.expected))],
    )
    return BinOp(op="<=", left=delta, right=FloatLit(assertion.tolerance))
