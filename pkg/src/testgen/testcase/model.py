"""Statement-list test cases and the suite chromosome evolved by search.

A test case is an ordered list of statements; statement i defines variable i,
and arguments refer to variables by index, always backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from testgen.analysis import GenericCallable, TypeInfo

DEFAULT_MAX_LENGTH = 40

PrimitiveValue = Union[int, float, str, bool, None]


@dataclass(slots=True)
class PrimitiveStatement:
    value: PrimitiveValue
    ret_type: TypeInfo | None

    def references(self) -> list[int]:
        return []

    def clone(self) -> PrimitiveStatement:
        return PrimitiveStatement(self.value, self.ret_type)


@dataclass(slots=True)
class ListStatement:
    elements: list[int]
    ret_type: TypeInfo | None

    def references(self) -> list[int]:
        return list(self.elements)

    def clone(self) -> ListStatement:
        return ListStatement(list(self.elements), self.ret_type)


@dataclass(slots=True)
class ConstructorStatement:
    callable: GenericCallable
    args: list[int]

    @property
    def ret_type(self) -> TypeInfo | None:
        return self.callable.owner

    def references(self) -> list[int]:
        return list(self.args)

    def clone(self) -> ConstructorStatement:
        return ConstructorStatement(self.callable, list(self.args))


@dataclass(slots=True)
class FunctionStatement:
    callable: GenericCallable
    args: list[int]

    @property
    def ret_type(self) -> TypeInfo | None:
        return self.callable.return_type

    def references(self) -> list[int]:
        return list(self.args)

    def clone(self) -> FunctionStatement:
        return FunctionStatement(self.callable, list(self.args))


@dataclass(slots=True)
class MethodStatement:
    receiver: int
    callable: GenericCallable
    args: list[int]

    @property
    def ret_type(self) -> TypeInfo | None:
        return self.callable.return_type

    def references(self) -> list[int]:
        return [self.receiver, *self.args]

    def clone(self) -> MethodStatement:
        return MethodStatement(self.receiver, self.callable, list(self.args))


Statement = Union[
    PrimitiveStatement, ListStatement, ConstructorStatement, FunctionStatement, MethodStatement
]


@dataclass(slots=True)
class TestCase:
    statements: list[Statement] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.statements)

    def clone(self) -> TestCase:
        return TestCase([stmt.clone() for stmt in self.statements])

    def is_valid(self) -> bool:
        """Definition-before-use and arity checks over all statements."""
        for index, stmt in enumerate(self.statements):
            for ref in stmt.references():
                if not 0 <= ref < index:
                    return False
            if isinstance(stmt, (ConstructorStatement, FunctionStatement, MethodStatement)):
                if len(stmt.args) != stmt.callable.arity:
                    return False
        return True

    def variables_of_type(self, wanted: TypeInfo | None, before: int) -> list[int]:
        """Indices below `before` whose declared type could satisfy `wanted`."""
        return [
            i
            for i in range(min(before, len(self.statements)))
            if types_compatible(self.statements[i].ret_type, wanted)
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TestCase):
            return NotImplemented
        return self.statements == other.statements

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.statements)


def types_compatible(have: TypeInfo | None, wanted: TypeInfo | None) -> bool:
    """Whether a variable of declared type `have` can fill a `wanted` slot.

    Unknown types match anything: the language is dynamic, declared types are
    only guidance.
    """
    if have is None or wanted is None:
        return True
    if have.is_list and wanted.is_list:
        if have.elem is None or wanted.elem is None:
            return True
        return have.elem.name == wanted.elem.name
    return have.name == wanted.name


@dataclass(slots=True)
class TestSuiteChromosome:
    test_cases: list[TestCase] = field(default_factory=list)
    _fitness_cache: dict[object, float] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.test_cases)

    def total_statements(self) -> int:
        return sum(test.size for test in self.test_cases)

    def clone(self) -> TestSuiteChromosome:
        return TestSuiteChromosome([test.clone() for test in self.test_cases])

    def touch(self) -> None:
        """Invalidate cached fitness after any structural change."""
        self._fitness_cache.clear()

    def cached_fitness(self, key: object) -> float | None:
        return self._fitness_cache.get(key)

    def set_cached_fitness(self, key: object, value: float) -> None:
        self._fitness_cache[key] = value
