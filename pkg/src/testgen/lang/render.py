"""Canonical source rendering: parse(render_source(m)) equals m."""

from __future__ import annotations

import math

from testgen.lang.ast import (
    AssertStmt,
    Assign,
    AstModule,
    Attribute,
    BinOp,
    BoolLit,
    BoolOp,
    Call,
    ClassDef,
    ExprStmt,
    FloatLit,
    FunctionDef,
    If,
    Index,
    IntLit,
    ListLit,
    Name,
    Node,
    NoneLit,
    Param,
    Return,
    StrLit,
    TypeAnnotation,
    UnaryOp,
    UseDirective,
    While,
)

INDENT = "    "

# Precedence levels; a subexpression is parenthesized when its level is
# below the level its context requires.
_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3
_PREC_COMPARISON = 4
_PREC_ADDITIVE = 5
_PREC_MULTIPLICATIVE = 6
_PREC_UNARY = 7
_PREC_POSTFIX = 8
_PREC_ATOM = 9

_BINOP_PREC = {
    "==": _PREC_COMPARISON,
    "!=": _PREC_COMPARISON,
    "<": _PREC_COMPARISON,
    "<=": _PREC_COMPARISON,
    ">": _PREC_COMPARISON,
    ">=": _PREC_COMPARISON,
    "+": _PREC_ADDITIVE,
    "-": _PREC_ADDITIVE,
    "*": _PREC_MULTIPLICATIVE,
    "/": _PREC_MULTIPLICATIVE,
    "%": _PREC_MULTIPLICATIVE,
}

_STR_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


def render_source(module: AstModule) -> str:
    """Render a module back to parseable source text."""
    chunks: list[str] = []
    if module.uses:
        chunks.append("".join(_render_use(use) for use in module.uses))
    for func in module.functions:
        chunks.append(_render_function(func, 0))
    for cls in module.classes:
        chunks.append(_render_class(cls))
    return "\n".join(chunks) + ("\n" if chunks else "")


def render_expression(expr: Node) -> str:
    """Render a single expression."""
    return _expr(expr, _PREC_OR)


def render_statement(stmt: Node, depth: int = 0) -> str:
    """Render a single statement (possibly a multi-line block) at a depth."""
    return "\n".join(_stmt_lines(stmt, depth))


def _render_use(use: UseDirective) -> str:
    if use.alias is not None:
        return f"use {use.module} as {use.alias}\n"
    return f"use {use.module}\n"


def _render_class(cls: ClassDef) -> str:
    lines = [f"class {cls.name}:"]
    for i, method in enumerate(cls.methods):
        if i:
            lines.append("")
        lines.append(_render_function(method, 1).rstrip("\n"))
    return "\n".join(lines) + "\n"


def _render_function(func: FunctionDef, depth: int) -> str:
    params = ", ".join(_render_param(p) for p in func.params)
    header = f"{INDENT * depth}def {func.name}({params})"
    if func.return_annotation is not None:
        header += f" -> {_render_annotation(func.return_annotation)}"
    header += ":"
    lines = [header]
    for stmt in func.body:
        lines.extend(_stmt_lines(stmt, depth + 1))
    return "\n".join(lines) + "\n"


def _render_param(param: Param) -> str:
    if param.annotation is not None:
        return f"{param.name}: {_render_annotation(param.annotation)}"
    return param.name


def _render_annotation(ann: TypeAnnotation) -> str:
    if ann.kind == "none":
        return "None"
    if ann.kind == "class":
        return ann.class_name
    if ann.kind == "list":
        if ann.elem is not None:
            return f"list[{_render_annotation(ann.elem)}]"
        return "list"
    return ann.kind


def _stmt_lines(stmt: Node, depth: int) -> list[str]:
    pad = INDENT * depth
    if isinstance(stmt, Assign):
        return [f"{pad}{_expr(stmt.target, _PREC_POSTFIX)} = {_expr(stmt.value, _PREC_OR)}"]
    if isinstance(stmt, Return):
        if stmt.value is None:
            return [f"{pad}return"]
        return [f"{pad}return {_expr(stmt.value, _PREC_OR)}"]
    if isinstance(stmt, ExprStmt):
        return [f"{pad}{_expr(stmt.value, _PREC_OR)}"]
    if isinstance(stmt, AssertStmt):
        return [f"{pad}assert {_expr(stmt.test, _PREC_OR)}"]
    if isinstance(stmt, While):
        lines = [f"{pad}while {_expr(stmt.cond, _PREC_OR)}:"]
        for inner in stmt.body:
            lines.extend(_stmt_lines(inner, depth + 1))
        return lines
    if isinstance(stmt, If):
        lines = [f"{pad}if {_expr(stmt.cond, _PREC_OR)}:"]
        for inner in stmt.then_body:
            lines.extend(_stmt_lines(inner, depth + 1))
        for cond, body in stmt.elif_clauses:
            lines.append(f"{pad}elif {_expr(cond, _PREC_OR)}:")
            for inner in body:
                lines.extend(_stmt_lines(inner, depth + 1))
        if stmt.else_body is not None:
            lines.append(f"{pad}else:")
            for inner in stmt.else_body:
                lines.extend(_stmt_lines(inner, depth + 1))
        return lines
    raise TypeError(f"not a statement node: {type(stmt).__name__}")


def _expr(node: Node, context: int) -> str:
    text, prec = _expr_prec(node)
    if prec < context:
        return f"({text})"
    return text


def _expr_prec(node: Node) -> tuple[str, int]:
    if isinstance(node, IntLit):
        return str(node.value), _PREC_ATOM if node.value >= 0 else _PREC_UNARY
    if isinstance(node, FloatLit):
        return _render_float(node.value), _PREC_ATOM if node.value >= 0 else _PREC_UNARY
    if isinstance(node, BoolLit):
        return ("True" if node.value else "False"), _PREC_ATOM
    if isinstance(node, NoneLit):
        return "None", _PREC_ATOM
    if isinstance(node, StrLit):
        return _render_str(node.value), _PREC_ATOM
    if isinstance(node, Name):
        return node.ident, _PREC_ATOM
    if isinstance(node, ListLit):
        inner = ", ".join(_expr(e, _PREC_OR) for e in node.elements)
        return f"[{inner}]", _PREC_ATOM
    if isinstance(node, Attribute):
        return f"{_expr(node.obj, _PREC_POSTFIX)}.{node.attr}", _PREC_POSTFIX
    if isinstance(node, Index):
        return f"{_expr(node.obj, _PREC_POSTFIX)}[{_expr(node.index, _PREC_OR)}]", _PREC_POSTFIX
    if isinstance(node, Call):
        args = ", ".join(_expr(a, _PREC_OR) for a in node.args)
        return f"{_expr(node.func, _PREC_POSTFIX)}({args})", _PREC_POSTFIX
    if isinstance(node, UnaryOp):
        if node.op == "not":
            return f"not {_expr(node.operand, _PREC_NOT)}", _PREC_NOT
        return f"-{_expr(node.operand, _PREC_UNARY)}", _PREC_UNARY
    if isinstance(node, BoolOp):
        prec = _PREC_OR if node.op == "or" else _PREC_AND
        left = _expr(node.left, prec)
        right = _expr(node.right, prec + 1)
        return f"{left} {node.op} {right}", prec
    if isinstance(node, BinOp):
        prec = _BINOP_PREC[node.op]
        # Comparisons do not chain, so both sides of one must sit a level up.
        left_ctx = prec + 1 if prec == _PREC_COMPARISON else prec
        left = _expr(node.left, left_ctx)
        right = _expr(node.right, prec + 1)
        return f"{left} {node.op} {right}", prec
    raise TypeError(f"not an expression node: {type(node).__name__}")


def _render_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"cannot render non-finite float {value!r}")
    return repr(value)


def _render_str(value: str) -> str:
    chars = [_STR_ESCAPES.get(ch, ch) for ch in value]
    return '"' + "".join(chars) + '"'
