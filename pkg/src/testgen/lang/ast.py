"""AST node definitions for MiniDyn.

MiniDyn is the small dynamically-typed scripting language this toolkit
generates tests for.  A module consists of ``use`` directives, function
definitions, and class definitions; statement and expression forms cover
structured control flow over ints, floats, strings, bools, lists, and
object instances.

Positions (``line``/``col``) and the preorder ``node_id`` are bookkeeping
and excluded from structural equality, so two parses of equivalent source
compare equal regardless of layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator


@dataclass
class SourceModule:
    """A named piece of MiniDyn source text, usually read from a ``.mdyn`` file."""

    name: str
    path: str
    text: str


@dataclass
class Node:
    """Base class for all AST nodes."""

    line: int = field(default=0, compare=False, kw_only=True)
    col: int = field(default=0, compare=False, kw_only=True)
    node_id: int = field(default=-1, compare=False, kw_only=True)


# --- Expressions ---------------------------------------------------------


@dataclass
class IntLit(Node):
    value: int = 0


@dataclass
class FloatLit(Node):
    value: float = 0.0


@dataclass
class StrLit(Node):
    value: str = ""


@dataclass
class BoolLit(Node):
    value: bool = False


@dataclass
class NoneLit(Node):
    pass


@dataclass
class ListLit(Node):
    elements: list[Node] = field(default_factory=list)


@dataclass
class Name(Node):
    ident: str = ""


@dataclass
class BinOp(Node):
    """Arithmetic or relational binary operator.

    ``op`` is one of ``+ - * / % == != < <= > >=``.
    """

    op: str = "+"
    left: Node = None  # type: ignore[assignment]
    right: Node = None  # type: ignore[assignment]


@dataclass
class BoolOp(Node):
    """``and`` / ``or``; kept distinct from BinOp for branch instrumentation."""

    op: str = "and"
    left: Node = None  # type: ignore[assignment]
    right: Node = None  # type: ignore[assignment]


@dataclass
class UnaryOp(Node):
    """``not`` or unary ``-``."""

    op: str = "-"
    operand: Node = None  # type: ignore[assignment]


@dataclass
class Call(Node):
    func: Node = None  # type: ignore[assignment]
    args: list[Node] = field(default_factory=list)


@dataclass
class Attribute(Node):
    obj: Node = None  # type: ignore[assignment]
    attr: str = ""


@dataclass
class Index(Node):
    obj: Node = None  # type: ignore[assignment]
    index: Node = None  # type: ignore[assignment]


# --- Type annotations -----------------------------------------------------

BUILTIN_ANNOTATION_KINDS = ("int", "float", "str", "bool", "list", "none")


@dataclass
class TypeAnnotation(Node):
    """Declared type: a builtin kind, ``list[T]``, ``None``, or a class reference."""

    kind: str = "int"
    elem: TypeAnnotation | None = None
    class_name: str | None = None


# --- Statements -----------------------------------------------------------


@dataclass
class Assign(Node):
    """Assignment to a name or an attribute (``x = e`` / ``obj.f = e``)."""

    target: Node = None  # type: ignore[assignment]
    value: Node = None  # type: ignore[assignment]


@dataclass
class If(Node):
    cond: Node = None  # type: ignore[assignment]
    then_body: list[Node] = field(default_factory=list)
    elif_clauses: list[tuple[Node, list[Node]]] = field(default_factory=list)
    else_body: list[Node] | None = None
    predicate_id: int = field(default=-1, compare=False)
    elif_predicate_ids: list[int] = field(default_factory=list, compare=False)


@dataclass
class While(Node):
    cond: Node = None  # type: ignore[assignment]
    body: list[Node] = field(default_factory=list)
    predicate_id: int = field(default=-1, compare=False)


@dataclass
class Return(Node):
    value: Node | None = None


@dataclass
class ExprStmt(Node):
    value: Node = None  # type: ignore[assignment]


@dataclass
class AssertStmt(Node):
    test: Node = None  # type: ignore[assignment]


# --- Definitions ----------------------------------------------------------


@dataclass
class Param(Node):
    name: str = ""
    annotation: TypeAnnotation | None = None


@dataclass
class FunctionDef(Node):
    name: str = ""
    params: list[Param] = field(default_factory=list)
    return_annotation: TypeAnnotation | None = None
    body: list[Node] = field(default_factory=list)


@dataclass
class ClassDef(Node):
    name: str = ""
    methods: list[FunctionDef] = field(default_factory=list)


@dataclass
class UseDirective(Node):
    module: str = ""
    alias: str | None = None


@dataclass
class AstModule(Node):
    """A parsed MiniDyn module: ``use`` directives plus top-level definitions."""

    name: str = ""
    uses: list[UseDirective] = field(default_factory=list)
    functions: list[FunctionDef] = field(default_factory=list)
    classes: list[ClassDef] = field(default_factory=list)


# --- Traversal ------------------------------------------------------------


def iter_child_nodes(node: Node) -> Iterator[Node]:
    """Yield the direct child nodes of ``node`` in source order."""
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Node):
            yield value
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, Node):
                    yield item
                elif isinstance(item, tuple):
                    for part in item:
                        if isinstance(part, Node):
                            yield part
                        elif isinstance(part, list):
                            for sub in part:
                                if isinstance(sub, Node):
                                    yield sub


def walk(node: Node) -> Iterator[Node]:
    """Yield ``node`` and all descendants in preorder."""
    yield node
    for child in iter_child_nodes(node):
        yield from walk(child)


def assign_node_ids(module: AstModule) -> None:
    """Assign preorder node ids and predicate ids.

    Both are pure functions of the module structure: descendants of a node
    occupy a contiguous id range, and every ``if``/``elif``/``while``
    condition receives the next predicate id in source order.
    """
    counters = {"node": 0, "predicate": 0}

    def next_id(kind: str) -> int:
        value = counters[kind]
        counters[kind] = value + 1
        return value

    def visit(node: Node) -> None:
        node.node_id = next_id("node")
        if isinstance(node, If):
            node.predicate_id = next_id("predicate")
            visit(node.cond)
            for stmt in node.then_body:
                visit(stmt)
            node.elif_predicate_ids = []
            for cond, body in node.elif_clauses:
                node.elif_predicate_ids.append(next_id("predicate"))
                visit(cond)
                for stmt in body:
                    visit(stmt)
            for stmt in node.else_body or []:
                visit(stmt)
        elif isinstance(node, While):
            node.predicate_id = next_id("predicate")
            visit(node.cond)
            for stmt in node.body:
                visit(stmt)
        else:
            for child in iter_child_nodes(node):
                visit(child)

    visit(module)
