"""Backwards test construction: pick a call, then fill its inputs.

Parameters are satisfied right-to-left against the growing statement list:
reuse an in-scope variable of a fitting type, or prepend statements that
create one, recursing through constructors for class-typed inputs.
"""

from __future__ import annotations

import random
import string

from testgen.analysis import GenericCallable, TestCluster, TypeInfo, candidates_for_type
from testgen.testcase.model import (
    DEFAULT_MAX_LENGTH,
    ConstructorStatement,
    FunctionStatement,
    ListStatement,
    MethodStatement,
    PrimitiveStatement,
    Statement,
    TestCase,
    types_compatible,
)

REUSE_PROBABILITY = 0.5
BOUNDARY_BIAS = 0.1
MAX_FILL_DEPTH = 10
INT_POOL_LIMIT = 100
FLOAT_POOL_LIMIT = 100.0
MAX_STRING_LENGTH = 10
MAX_LIST_ELEMENTS = 3


class _FragmentTooLong(Exception):
    pass


def sample_random_test_case(
    cluster: TestCluster,
    rng: random.Random,
    max_len: int = DEFAULT_MAX_LENGTH,
) -> TestCase:
    """A fresh test whose final statement calls a random accessible callable."""
    if not cluster.accessible_callables:
        return TestCase()
    target = cluster.accessible_callables[rng.randrange(len(cluster.accessible_callables))]
    fragment = fulfill_parameters(target, cluster, rng, test=None, position=0, max_len=max_len)
    if fragment is None:
        return TestCase()
    return TestCase(fragment)


def fulfill_parameters(
    target: GenericCallable,
    cluster: TestCluster,
    rng: random.Random,
    depth: int = MAX_FILL_DEPTH,
    test: TestCase | None = None,
    position: int | None = None,
    max_len: int = DEFAULT_MAX_LENGTH,
) -> list[Statement] | None:
    """Statements ending in a call of `target`, inserted at `position` of `test`.

    References to existing variables point below `position`; references to
    fragment variables use their final absolute indices. Falls back to a
    minimal, none-filled fragment when the budgeted length is exceeded, and
    returns None when even that does not fit.
    """
    if test is None:
        test = TestCase()
        position = 0
    if position is None:
        position = test.size
    room = max_len - test.size
    try:
        return _build(target, cluster, rng, depth, test, position, room, minimal=False)
    except _FragmentTooLong:
        pass
    try:
        return _build(target, cluster, rng, depth, test, position, room, minimal=True)
    except _FragmentTooLong:
        return None


def _build(
    target: GenericCallable,
    cluster: TestCluster,
    rng: random.Random,
    depth: int,
    test: TestCase,
    position: int,
    room: int,
    minimal: bool,
) -> list[Statement]:
    builder = _FragmentBuilder(cluster, rng, test, position, room, minimal)
    receiver = None
    if target.kind == "method":
        receiver = builder.variable_for(target.owner, depth)
    args = [
        builder.variable_for(candidates_for_type(cluster, spec.declared, rng), depth)
        for spec in target.params
    ]
    if target.kind == "function":
        builder.append(FunctionStatement(target, args))
    elif target.kind == "constructor":
        builder.append(ConstructorStatement(target, args))
    else:
        builder.append(MethodStatement(receiver, target, args))
    return builder.statements


class _FragmentBuilder:
    def __init__(
        self,
        cluster: TestCluster,
        rng: random.Random,
        test: TestCase,
        position: int,
        room: int,
        minimal: bool,
    ):
        self._cluster = cluster
        self._rng = rng
        self._test = test
        self._position = position
        self._room = room
        self._minimal = minimal
        self.statements: list[Statement] = []

    def append(self, stmt: Statement) -> int:
        if len(self.statements) >= self._room:
            raise _FragmentTooLong
        self.statements.append(stmt)
        return self._position + len(self.statements) - 1

    def variable_for(self, wanted: TypeInfo, depth: int) -> int:
        """Index of a variable of type `wanted`: reused or freshly created."""
        reusable = self._reusable(wanted)
        if reusable and self._rng.random() < REUSE_PROBABILITY:
            return reusable[self._rng.randrange(len(reusable))]
        created = self._create(wanted, depth)
        if created is not None:
            return created
        if reusable:
            return reusable[self._rng.randrange(len(reusable))]
        return self.append(PrimitiveStatement(None, self._cluster.builtins["none"]))

    def _reusable(self, wanted: TypeInfo) -> list[int]:
        existing = self._test.variables_of_type(wanted, self._position)
        base = self._position
        fragment = [
            base + i
            for i, stmt in enumerate(self.statements)
            if types_compatible(stmt.ret_type, wanted)
        ]
        return existing + fragment

    def _create(self, wanted: TypeInfo, depth: int) -> int | None:
        if depth <= 0 or self._minimal:
            return None
        rng = self._rng
        base = wanted.base_name
        if base in ("int", "float", "str", "bool", "none"):
            return self.append(PrimitiveStatement(random_primitive(base, rng), wanted))
        if base == "list":
            elem = wanted.elem
            if elem is None:
                elem = candidates_for_type(self._cluster, None, rng)
            count = rng.randint(0, MAX_LIST_ELEMENTS)
            elements = [self.variable_for(elem, depth - 1) for _ in range(count)]
            return self.append(ListStatement(elements, wanted))
        constructors = self._cluster.type_registry.get(wanted)
        if constructors is None or not constructors.constructors:
            return None
        ctor = constructors.constructors[rng.randrange(len(constructors.constructors))]
        receiver = None
        if ctor.kind == "method":
            receiver = self.variable_for(ctor.owner, depth - 1)
        args = [
            self.variable_for(
                candidates_for_type(self._cluster, spec.declared, rng), depth - 1
            )
            for spec in ctor.params
        ]
        if ctor.kind == "constructor":
            return self.append(ConstructorStatement(ctor, args))
        if ctor.kind == "method":
            return self.append(MethodStatement(receiver, ctor, args))
        return self.append(FunctionStatement(ctor, args))


def random_primitive(kind: str, rng: random.Random) -> int | float | str | bool | None:
    """Draw a primitive from the default pools."""
    if kind == "int":
        if rng.random() < BOUNDARY_BIAS:
            return rng.choice((0, 1, -1))
        return rng.randint(-INT_POOL_LIMIT, INT_POOL_LIMIT)
    if kind == "float":
        if rng.random() < BOUNDARY_BIAS:
            return rng.choice((0.0, 1.0, -1.0))
        return rng.uniform(-FLOAT_POOL_LIMIT, FLOAT_POOL_LIMIT)
    if kind == "str":
        length = rng.randint(0, MAX_STRING_LENGTH)
        return "".join(rng.choice(string.ascii_lowercase) for _ in range(length))
    if kind == "bool":
        return rng.random() < 0.5
    return None
