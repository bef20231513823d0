"""Runtime value model: primitives, lists, objects, and callable handles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from testgen.lang import (
    BoolLit,
    FloatLit,
    FunctionDef,
    IntLit,
    ListLit,
    Node,
    NoneLit,
    StrLit,
)

if TYPE_CHECKING:
    from testgen.interp.interpreter import ModuleImage


@dataclass(eq=False, slots=True)
class ObjectInstance:
    """A class instance: attribute map with identity equality."""

    class_name: str
    attrs: dict[str, object] = field(default_factory=dict)


@dataclass(eq=False, slots=True)
class FunctionRef:
    owner: str  # defining module name
    qualname: str
    func: FunctionDef
    globals_map: dict[str, object]


@dataclass(eq=False, slots=True)
class ClassRef:
    owner: str
    name: str
    methods: dict[str, FunctionRef]
    init: FunctionRef | None


@dataclass(eq=False, slots=True)
class BoundMethod:
    instance: ObjectInstance
    ref: FunctionRef


@dataclass(eq=False, slots=True)
class NamespaceRef:
    """Alias binding from `use m as a`: attribute access into m's namespace."""

    module_name: str
    globals_map: dict[str, object]


@dataclass(eq=False, slots=True)
class BuiltinRef:
    name: str  # len | abs


@dataclass(eq=False, slots=True)
class BoundListMethod:
    target: list
    name: str  # append | pop


_CALLABLE_TYPES = (FunctionRef, ClassRef, BoundMethod, NamespaceRef, BuiltinRef, BoundListMethod)


def is_truthy(value: object) -> bool:
    if value is None:
        return False
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return value != 0
    if isinstance(value, (str, list)):
        return len(value) > 0
    return True


def is_numeric(value: object) -> bool:
    """ints, floats, and bools all live on the number line."""
    return isinstance(value, (int, float))


def type_name(value: object) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "bool"
    if isinstance(value, int):
        return "int"
    if isinstance(value, float):
        return "float"
    if isinstance(value, str):
        return "str"
    if isinstance(value, list):
        return "list"
    if isinstance(value, ObjectInstance):
        return value.class_name
    return "callable"


def values_equal(a: object, b: object) -> bool:
    """MiniDyn ==: numeric across int/float/bool, element-wise on lists,
    identity on objects, False across kinds."""
    if isinstance(a, _CALLABLE_TYPES) or isinstance(b, _CALLABLE_TYPES):
        return a is b
    if isinstance(a, ObjectInstance) or isinstance(b, ObjectInstance):
        return a is b
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return False
        return all(values_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, str) or isinstance(b, str):
        return isinstance(a, str) and isinstance(b, str) and a == b
    if a is None or b is None:
        return a is None and b is None
    # Remaining: numeric pairs.
    return a == b


def snapshot(value: object) -> tuple[bool, object]:
    """Deep, immutable copy of a primitive or (nested) list value.

    Lists freeze to tuples. Objects and callables are not snapshotable here;
    object state is recorded attribute-by-attribute by the caller.
    """
    if value is None or isinstance(value, (bool, int, float, str)):
        return True, value
    if isinstance(value, list):
        parts = []
        for item in value:
            ok, snap = snapshot(item)
            if not ok:
                return False, None
            parts.append(snap)
        return True, tuple(parts)
    return False, None


def snapshot_equal(a: object, b: object) -> bool:
    """Compare snapshots with MiniDyn == semantics, plus NaN equal to itself.

    Must match what a rendered `assert x == <literal>` can distinguish, so
    numeric values compare across int/float/bool.
    """
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(snapshot_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, float) and isinstance(b, float) and a != a and b != b:
        return True
    if is_numeric(a) and is_numeric(b):
        return a == b
    if type(a) is type(b):
        return a == b
    return False


def value_to_literal(snap: object) -> Node:
    """Turn a snapshot back into a literal expression node."""
    if snap is None:
        return NoneLit()
    if isinstance(snap, bool):
        return BoolLit(value=snap)
    if isinstance(snap, int):
        return IntLit(value=snap)
    if isinstance(snap, float):
        if snap != snap or snap in (float("inf"), float("-inf")):
            raise ValueError("non-finite float has no literal form")
        return FloatLit(value=snap)
    if isinstance(snap, str):
        return StrLit(value=snap)
    if isinstance(snap, (tuple, list)):
        return ListLit(elements=[value_to_literal(item) for item in snap])
    raise ValueError(f"no literal form for {type(snap).__name__}")
