"""Recursive-descent parser turning MiniDyn source into an AST."""

from __future__ import annotations

from testgen.lang import ast
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
)
from testgen.lang.lexer import MiniDynSyntaxError, Token, tokenize

COMPARISON_OPS = ("==", "!=", "<", "<=", ">", ">=")
ADDITIVE_OPS = ("+", "-")
MULTIPLICATIVE_OPS = ("*", "/", "%")


def parse_module(src: SourceModule) -> AstModule:
    """Parse a source module into an AST with node and predicate ids assigned.

    Raises:
        MiniDynSyntaxError: on any lexical or syntactic problem, carrying the
            offending line and column.
    """
    if not src.name.isidentifier():
        raise MiniDynSyntaxError(f"invalid module name {src.name!r}", 0, 0)
    parser = _Parser(tokenize(src.text), src.name)
    module = parser.parse()
    ast.assign_node_ids(module)
    return module


def parse_expression(text: str) -> Node:
    """Parse a single expression, e.g. for building predicates in tests."""
    parser = _Parser(tokenize(text), "expr")
    expr = parser._expression()
    parser._expect("NEWLINE")
    parser._expect("EOF")
    return expr


class _Parser:
    def __init__(self, tokens: list[Token], module_name: str):
        self._tokens = tokens
        self._pos = 0
        self._module_name = module_name

    # -- token helpers --

    @property
    def _cur(self) -> Token:
        return self._tokens[self._pos]

    def _advance(self) -> Token:
        tok = self._tokens[self._pos]
        if tok.kind != "EOF":
            self._pos += 1
        return tok

    def _check(self, kind: str, value: str | None = None) -> bool:
        tok = self._cur
        return tok.kind == kind and (value is None or tok.value == value)

    def _accept(self, kind: str, value: str | None = None) -> Token | None:
        if self._check(kind, value):
            return self._advance()
        return None

    def _expect(self, kind: str, value: str | None = None) -> Token:
        tok = self._cur
        if not self._check(kind, value):
            want = value if value is not None else kind
            found = tok.value or tok.kind
            raise MiniDynSyntaxError(f"expected {want!r}, found {found!r}", tok.line, tok.col)
        return self._advance()

    def _error(self, message: str) -> MiniDynSyntaxError:
        return MiniDynSyntaxError(message, self._cur.line, self._cur.col)

    # -- module level --

    def parse(self) -> AstModule:
        module = AstModule(name=self._module_name, line=1, col=1)
        seen: set[str] = set()
        while not self._check("EOF"):
            if self._check("KEYWORD", "use"):
                module.uses.append(self._use_directive())
            elif self._check("KEYWORD", "def"):
                func = self._function_def()
                self._register(seen, func.name, func.line)
                module.functions.append(func)
            elif self._check("KEYWORD", "class"):
                cls = self._class_def()
                self._register(seen, cls.name, cls.line)
                module.classes.append(cls)
            else:
                raise self._error("expected 'use', 'def', or 'class' at module level")
        return module

    def _register(self, seen: set[str], name: str, line: int) -> None:
        if name in seen:
            raise MiniDynSyntaxError(f"duplicate definition of {name!r}", line, 1)
        seen.add(name)

    def _use_directive(self) -> UseDirective:
        tok = self._expect("KEYWORD", "use")
        module = self._expect("NAME").value
        alias = None
        if self._accept("KEYWORD", "as"):
            alias = self._expect("NAME").value
        self._expect("NEWLINE")
        return UseDirective(module=module, alias=alias, line=tok.line, col=tok.col)

    def _function_def(self) -> FunctionDef:
        tok = self._expect("KEYWORD", "def")
        name = self._expect("NAME").value
        self._expect("OP", "(")
        params: list[Param] = []
        names: set[str] = set()
        while not self._check("OP", ")"):
            if params:
                self._expect("OP", ",")
            ptok = self._expect("NAME")
            if ptok.value in names:
                raise MiniDynSyntaxError(f"duplicate parameter {ptok.value!r}", ptok.line, ptok.col)
            names.add(ptok.value)
            annotation = None
            if self._accept("OP", ":"):
                annotation = self._type_annotation()
            params.append(Param(name=ptok.value, annotation=annotation, line=ptok.line, col=ptok.col))
        self._expect("OP", ")")
        return_annotation = None
        if self._accept("OP", "->"):
            return_annotation = self._type_annotation()
        self._expect("OP", ":")
        body = self._block()
        return FunctionDef(
            name=name,
            params=params,
            return_annotation=return_annotation,
            body=body,
            line=tok.line,
            col=tok.col,
        )

    def _class_def(self) -> ClassDef:
        tok = self._expect("KEYWORD", "class")
        name = self._expect("NAME").value
        self._expect("OP", ":")
        self._expect("NEWLINE")
        self._expect("INDENT")
        methods: list[FunctionDef] = []
        names: set[str] = set()
        while not self._check("DEDENT"):
            if not self._check("KEYWORD", "def"):
                raise self._error("class bodies may only contain method definitions")
            method = self._function_def()
            if method.name in names:
                raise MiniDynSyntaxError(
                    f"duplicate method {method.name!r}", method.line, method.col
                )
            names.add(method.name)
            methods.append(method)
        self._expect("DEDENT")
        if not methods:
            raise MiniDynSyntaxError(f"class {name!r} has an empty body", tok.line, tok.col)
        return ClassDef(name=name, methods=methods, line=tok.line, col=tok.col)

    def _type_annotation(self) -> TypeAnnotation:
        tok = self._cur
        if self._accept("KEYWORD", "None"):
            return TypeAnnotation(kind="none", line=tok.line, col=tok.col)
        name = self._expect("NAME").value
        if name == "list":
            elem = None
            if self._accept("OP", "["):
                elem = self._type_annotation()
                self._expect("OP", "]")
            return TypeAnnotation(kind="list", elem=elem, line=tok.line, col=tok.col)
        if name in ("int", "float", "str", "bool"):
            return TypeAnnotation(kind=name, line=tok.line, col=tok.col)
        return TypeAnnotation(kind="class", class_name=name, line=tok.line, col=tok.col)

    # -- statements --

    def _block(self) -> list[Node]:
        self._expect("NEWLINE")
        self._expect("INDENT")
        body: list[Node] = []
        while not self._check("DEDENT"):
            body.append(self._statement())
        self._expect("DEDENT")
        return body

    def _statement(self) -> Node:
        if self._check("KEYWORD", "if"):
            return self._if_statement()
        if self._check("KEYWORD", "while"):
            return self._while_statement()
        if self._check("KEYWORD", "return"):
            return self._return_statement()
        if self._check("KEYWORD", "assert"):
            return self._assert_statement()
        return self._simple_statement()

    def _if_statement(self) -> If:
        tok = self._expect("KEYWORD", "if")
        cond = self._expression()
        self._expect("OP", ":")
        then_body = self._block()
        elif_clauses: list[tuple[Node, list[Node]]] = []
        while self._check("KEYWORD", "elif"):
            self._advance()
            elif_cond = self._expression()
            self._expect("OP", ":")
            elif_clauses.append((elif_cond, self._block()))
        else_body = None
        if self._accept("KEYWORD", "else"):
            self._expect("OP", ":")
            else_body = self._block()
        return If(
            cond=cond,
            then_body=then_body,
            elif_clauses=elif_clauses,
            else_body=else_body,
            line=tok.line,
            col=tok.col,
        )

    def _while_statement(self) -> While:
        tok = self._expect("KEYWORD", "while")
        cond = self._expression()
        self._expect("OP", ":")
        body = self._block()
        return While(cond=cond, body=body, line=tok.line, col=tok.col)

    def _return_statement(self) -> Return:
        tok = self._expect("KEYWORD", "return")
        value = None
        if not self._check("NEWLINE"):
            value = self._expression()
        self._expect("NEWLINE")
        return Return(value=value, line=tok.line, col=tok.col)

    def _assert_statement(self) -> AssertStmt:
        tok = self._expect("KEYWORD", "assert")
        test = self._expression()
        self._expect("NEWLINE")
        return AssertStmt(test=test, line=tok.line, col=tok.col)

    def _simple_statement(self) -> Node:
        tok = self._cur
        expr = self._expression()
        if self._accept("OP", "="):
            if not isinstance(expr, (Name, Attribute)):
                raise MiniDynSyntaxError("invalid assignment target", tok.line, tok.col)
            value = self._expression()
            self._expect("NEWLINE")
            return Assign(target=expr, value=value, line=tok.line, col=tok.col)
        self._expect("NEWLINE")
        return ExprStmt(value=expr, line=tok.line, col=tok.col)

    # -- expressions --

    def _expression(self) -> Node:
        return self._or_expr()

    def _or_expr(self) -> Node:
        left = self._and_expr()
        while self._check("KEYWORD", "or"):
            tok = self._advance()
            right = self._and_expr()
            left = BoolOp(op="or", left=left, right=right, line=tok.line, col=tok.col)
        return left

    def _and_expr(self) -> Node:
        left = self._not_expr()
        while self._check("KEYWORD", "and"):
            tok = self._advance()
            right = self._not_expr()
            left = BoolOp(op="and", left=left, right=right, line=tok.line, col=tok.col)
        return left

    def _not_expr(self) -> Node:
        if self._check("KEYWORD", "not"):
            tok = self._advance()
            operand = self._not_expr()
            return UnaryOp(op="not", operand=operand, line=tok.line, col=tok.col)
        return self._comparison()

    def _comparison(self) -> Node:
        left = self._additive()
        if self._cur.kind == "OP" and self._cur.value in COMPARISON_OPS:
            tok = self._advance()
            right = self._additive()
            left = BinOp(op=tok.value, left=left, right=right, line=tok.line, col=tok.col)
            if self._cur.kind == "OP" and self._cur.value in COMPARISON_OPS:
                raise self._error("comparison chaining is not supported")
        return left

    def _additive(self) -> Node:
        left = self._multiplicative()
        while self._cur.kind == "OP" and self._cur.value in ADDITIVE_OPS:
            tok = self._advance()
            right = self._multiplicative()
            left = BinOp(op=tok.value, left=left, right=right, line=tok.line, col=tok.col)
        return left

    def _multiplicative(self) -> Node:
        left = self._unary()
        while self._cur.kind == "OP" and self._cur.value in MULTIPLICATIVE_OPS:
            tok = self._advance()
            right = self._unary()
            left = BinOp(op=tok.value, left=left, right=right, line=tok.line, col=tok.col)
        return left

    def _unary(self) -> Node:
        if self._check("OP", "-"):
            tok = self._advance()
            operand = self._unary()
            return UnaryOp(op="-", operand=operand, line=tok.line, col=tok.col)
        return self._postfix()

    def _postfix(self) -> Node:
        expr = self._primary()
        while True:
            if self._check("OP", "("):
                tok = self._advance()
                args: list[Node] = []
                while not self._check("OP", ")"):
                    if args:
                        self._expect("OP", ",")
                    args.append(self._expression())
                self._expect("OP", ")")
                expr = Call(func=expr, args=args, line=tok.line, col=tok.col)
            elif self._check("OP", "."):
                tok = self._advance()
                attr = self._expect("NAME").value
                expr = Attribute(obj=expr, attr=attr, line=tok.line, col=tok.col)
            elif self._check("OP", "["):
                tok = self._advance()
                index = self._expression()
                self._expect("OP", "]")
                expr = Index(obj=expr, index=index, line=tok.line, col=tok.col)
            else:
                return expr

    def _primary(self) -> Node:
        tok = self._cur
        if tok.kind == "INT":
            self._advance()
            return IntLit(value=int(tok.value), line=tok.line, col=tok.col)
        if tok.kind == "FLOAT":
            self._advance()
            return FloatLit(value=float(tok.value), line=tok.line, col=tok.col)
        if tok.kind == "STRING":
            self._advance()
            return StrLit(value=tok.value, line=tok.line, col=tok.col)
        if tok.kind == "KEYWORD" and tok.value in ("True", "False"):
            self._advance()
            return BoolLit(value=tok.value == "True", line=tok.line, col=tok.col)
        if tok.kind == "KEYWORD" and tok.value == "None":
            self._advance()
            return NoneLit(line=tok.line, col=tok.col)
        if tok.kind == "NAME":
            self._advance()
            return Name(ident=tok.value, line=tok.line, col=tok.col)
        if self._accept("OP", "["):
            elements: list[Node] = []
            while not self._check("OP", "]"):
                if elements:
                    self._expect("OP", ",")
                elements.append(self._expression())
            self._expect("OP", "]")
            return ListLit(elements=elements, line=tok.line, col=tok.col)
        if self._accept("OP", "("):
            expr = self._expression()
            self._expect("OP", ")")
            return expr
        raise self._error(f"unexpected token {tok.value or tok.kind!r}")
