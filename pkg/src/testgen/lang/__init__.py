"""Parser, AST, renderer, and static queries for MiniDyn source modules."""

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
    SourceModule,
    StrLit,
    TypeAnnotation,
    UnaryOp,
    UseDirective,
    While,
    iter_child_nodes,
    walk,
)
from testgen.lang.parser import MiniDynSyntaxError, parse_expression, parse_module
from testgen.lang.queries import PredicateInfo, collect_lines, collect_predicates
from testgen.lang.render import render_expression, render_source, render_statement

__all__ = [
    "AssertStmt",
    "Assign",
    "AstModule",
    "Attribute",
    "BinOp",
    "BoolLit",
    "BoolOp",
    "Call",
    "ClassDef",
    "ExprStmt",
    "FloatLit",
    "FunctionDef",
    "If",
    "Index",
    "IntLit",
    "ListLit",
    "MiniDynSyntaxError",
    "Name",
    "Node",
    "NoneLit",
    "Param",
    "PredicateInfo",
    "Return",
    "SourceModule",
    "StrLit",
    "TypeAnnotation",
    "UnaryOp",
    "UseDirective",
    "While",
    "collect_lines",
    "collect_predicates",
    "iter_child_nodes",
    "parse_expression",
    "parse_module",
    "render_expression",
    "render_source",
    "render_statement",
    "walk",
]
