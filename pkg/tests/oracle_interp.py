"""Reference re-execution with independent bookkeeping.

A second, deliberately separate evaluator for MiniDyn test cases. It shares
no code with the production interpreter: it walks the parsed tree with its
own environment model and logs which source lines and branch outcomes it
actually saw. Tests compare these logs against the production trace.

The step-cost model is part of the language contract and is replicated
here: one step per executed statement, per evaluated expression node, per
predicate operator, per elif arm, per loop iteration, and per test-case
statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from testgen.lang import (
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
    Return,
    StrLit,
    UnaryOp,
    While,
)
from testgen.testcase import (
    ConstructorStatement,
    FunctionStatement,
    ListStatement,
    MethodStatement,
    PrimitiveStatement,
    TestCase,
)

CALL_DEPTH_LIMIT = 150
_ORDER_OPS = ("<", "<=", ">", ">=")


class OracleBudget(Exception):
    pass


class OracleFault(Exception):
    """Any runtime fault of the executed code; `kind` names the category."""

    def __init__(self, kind: str):
        super().__init__(kind)
        self.kind = kind


class _ReturnValue(Exception):
    def __init__(self, value: object):
        self.value = value


@dataclass
class OracleLog:
    lines: set[int] = field(default_factory=set)
    taken: set[tuple[int, bool]] = field(default_factory=set)
    outcomes: list[str] = field(default_factory=list)
    steps: int = 0


@dataclass(eq=False)
class _Instance:
    class_name: str
    attrs: dict[str, object] = field(default_factory=dict)


@dataclass(eq=False)
class _Func:
    module: str
    node: FunctionDef
    env: dict[str, object]


@dataclass(eq=False)
class _Class:
    module: str
    name: str
    init: _Func | None
    methods: dict[str, _Func]


@dataclass(eq=False)
class _ModuleAlias:
    env: dict[str, object]


@dataclass(eq=False)
class _ListOp:
    target: list
    op: str  # append | pop


@dataclass(eq=False)
class _Builtin:
    name: str  # len | abs


def link(root: AstModule, library: dict[str, AstModule]):
    """Build the root namespace and the class registry, following `use`."""
    registry: dict[str, _Class] = {}
    built: dict[str, dict[str, object]] = {}

    def build(mod: AstModule) -> dict[str, object]:
        if mod.name in built:
            return built[mod.name]
        env: dict[str, object] = {}
        for use in mod.uses:
            dep_env = build(library[use.module])
            if use.alias is not None:
                env[use.alias] = _ModuleAlias(dep_env)
            else:
                env.update(dep_env)
        for func in mod.functions:
            env[func.name] = _Func(mod.name, func, env)
        for cls in mod.classes:
            init = None
            methods: dict[str, _Func] = {}
            for method in cls.methods:
                bound = _Func(mod.name, method, env)
                if method.name == "__init__":
                    init = bound
                else:
                    methods[method.name] = bound
            entry = _Class(mod.name, cls.name, init, methods)
            env[cls.name] = entry
            registry[cls.name] = entry
        built[mod.name] = env
        return env

    return build(root), registry


def oracle_execute(
    test: TestCase,
    root: AstModule,
    library: dict[str, AstModule],
    max_steps: int,
) -> OracleLog:
    """Replay `test` against `root`, logging lines, branch outcomes, outcomes."""
    env, registry = link(root, library)
    log = OracleLog()
    machine = _Machine(root.name, registry, max_steps, log)
    values: list[object] = []
    for stmt in test.statements:
        try:
            values.append(machine.run_test_statement(stmt, env, values))
        except OracleFault:
            log.outcomes.append("runtime-error")
            break
        except OracleBudget:
            log.outcomes.append("budget-exhausted")
            break
        except RecursionError:
            log.outcomes.append("runtime-error")
            break
        log.outcomes.append("ok")
    log.steps = min(log.steps, max_steps)
    return log


class _Machine:
    def __init__(self, root_name: str, registry, max_steps: int, log: OracleLog):
        self.root = root_name
        self.registry = registry
        self.max_steps = max_steps
        self.log = log
        self.depth = 0

    def charge(self) -> None:
        self.log.steps += 1
        if self.log.steps > self.max_steps:
            raise OracleBudget()

    # -- test statements --

    def run_test_statement(self, stmt, env, values: list[object]) -> object:
        self.charge()
        if isinstance(stmt, PrimitiveStatement):
            return stmt.value
        if isinstance(stmt, ListStatement):
            return [values[ref] for ref in stmt.elements]
        if isinstance(stmt, FunctionStatement):
            target = env.get(stmt.callable.name)
            if not isinstance(target, _Func):
                raise OracleFault("name-error")
            return self.call(target, [values[ref] for ref in stmt.args])
        if isinstance(stmt, ConstructorStatement):
            target = env.get(stmt.callable.name)
            if not isinstance(target, _Class):
                raise OracleFault("name-error")
            return self.construct(target, [values[ref] for ref in stmt.args])
        receiver = values[stmt.receiver]
        if not isinstance(receiver, _Instance):
            raise OracleFault("type-error")
        entry = self.registry.get(receiver.class_name)
        short_name = stmt.callable.name.rsplit(".", 1)[-1]
        if entry is None or short_name not in entry.methods:
            raise OracleFault("attribute-error")
        args = [receiver] + [values[ref] for ref in stmt.args]
        return self.call(entry.methods[short_name], args)

    # -- calls --

    def call(self, func: _Func, args: list[object]) -> object:
        if len(args) != len(func.node.params):
            raise OracleFault("arity-error")
        if self.depth >= CALL_DEPTH_LIMIT:
            raise OracleFault("recursion-error")
        scope = {param.name: arg for param, arg in zip(func.node.params, args)}
        self.depth += 1
        try:
            self.block(func.node.body, scope, func.env, func.module)
            return None
        except _ReturnValue as ret:
            return ret.value
        finally:
            self.depth -= 1

    def construct(self, entry: _Class, args: list[object]) -> _Instance:
        instance = _Instance(entry.name)
        if entry.init is not None:
            self.call(entry.init, [instance] + args)
        elif args:
            raise OracleFault("arity-error")
        return instance

    # -- statements --

    def block(self, body, scope, globals_env, owner: str) -> None:
        for stmt in body:
            self.statement(stmt, scope, globals_env, owner)

    def statement(self, stmt, scope, globals_env, owner: str) -> None:
        self.charge()
        if owner == self.root:
            self.log.lines.add(stmt.line)
        if isinstance(stmt, Assign):
            value = self.eval(stmt.value, scope, globals_env, owner)
            if isinstance(stmt.target, Name):
                scope[stmt.target.ident] = value
            elif isinstance(stmt.target, Attribute):
                obj = self.eval(stmt.target.obj, scope, globals_env, owner)
                if not isinstance(obj, _Instance):
                    raise OracleFault("type-error")
                obj.attrs[stmt.target.attr] = value
            else:
                raise OracleFault("type-error")
        elif isinstance(stmt, If):
            self.run_if(stmt, scope, globals_env, owner)
        elif isinstance(stmt, While):
            while True:
                self.charge()
                holds = self.decide(stmt.cond, scope, globals_env, owner)
                self.note_branch(stmt.predicate_id, holds, owner)
                if not holds:
                    return
                self.block(stmt.body, scope, globals_env, owner)
        elif isinstance(stmt, Return):
            value = (
                None
                if stmt.value is None
                else self.eval(stmt.value, scope, globals_env, owner)
            )
            raise _ReturnValue(value)
        elif isinstance(stmt, ExprStmt):
            self.eval(stmt.value, scope, globals_env, owner)
        elif isinstance(stmt, AssertStmt):
            if not _truthy(self.eval(stmt.test, scope, globals_env, owner)):
                raise OracleFault("assertion-error")
        else:
            raise AssertionError(f"unexpected statement {type(stmt).__name__}")

    def run_if(self, stmt: If, scope, globals_env, owner: str) -> None:
        holds = self.decide(stmt.cond, scope, globals_env, owner)
        self.note_branch(stmt.predicate_id, holds, owner)
        if holds:
            self.block(stmt.then_body, scope, globals_env, owner)
            return
        for pid, (cond, body) in zip(stmt.elif_predicate_ids, stmt.elif_clauses):
            self.charge()
            if owner == self.root:
                self.log.lines.add(cond.line)
            holds = self.decide(cond, scope, globals_env, owner)
            self.note_branch(pid, holds, owner)
            if holds:
                self.block(body, scope, globals_env, owner)
                return
        if stmt.else_body is not None:
            self.block(stmt.else_body, scope, globals_env, owner)

    def note_branch(self, predicate_id: int, holds: bool, owner: str) -> None:
        if owner == self.root:
            self.log.taken.add((predicate_id, holds))

    # -- predicates --

    def decide(self, cond, scope, globals_env, owner: str) -> bool:
        if isinstance(cond, BoolOp):
            self.charge()
            left = self.decide(cond.left, scope, globals_env, owner)
            if cond.op == "and":
                if not left:
                    return False
                return self.decide(cond.right, scope, globals_env, owner)
            if left:
                return True
            return self.decide(cond.right, scope, globals_env, owner)
        if isinstance(cond, UnaryOp) and cond.op == "not":
            self.charge()
            return not self.decide(cond.operand, scope, globals_env, owner)
        if isinstance(cond, BinOp) and cond.op in ("==", "!=", *_ORDER_OPS):
            self.charge()
            left = self.eval(cond.left, scope, globals_env, owner)
            right = self.eval(cond.right, scope, globals_env, owner)
            return _compare(cond.op, left, right)
        return _truthy(self.eval(cond, scope, globals_env, owner))

    # -- expressions --

    def eval(self, node: Node, scope, globals_env, owner: str) -> object:
        self.charge()
        if isinstance(node, (IntLit, FloatLit, StrLit, BoolLit)):
            return node.value
        if isinstance(node, NoneLit):
            return None
        if isinstance(node, ListLit):
            return [self.eval(el, scope, globals_env, owner) for el in node.elements]
        if isinstance(node, Name):
            if node.ident in scope:
                return scope[node.ident]
            if node.ident in globals_env:
                return globals_env[node.ident]
            if node.ident in ("len", "abs"):
                return _Builtin(node.ident)
            raise OracleFault("name-error")
        if isinstance(node, BoolOp):
            return self.decide(node, scope, globals_env, owner)
        if isinstance(node, UnaryOp):
            if node.op == "not":
                return not _truthy(self.eval(node.operand, scope, globals_env, owner))
            value = self.eval(node.operand, scope, globals_env, owner)
            if isinstance(value, bool):
                return -int(value)
            if isinstance(value, (int, float)):
                return -value
            raise OracleFault("type-error")
        if isinstance(node, BinOp):
            left = self.eval(node.left, scope, globals_env, owner)
            right = self.eval(node.right, scope, globals_env, owner)
            return _binary(node.op, left, right)
        if isinstance(node, Call):
            callee = self.eval(node.func, scope, globals_env, owner)
            args = [self.eval(arg, scope, globals_env, owner) for arg in node.args]
            return self.apply(callee, args)
        if isinstance(node, Attribute):
            return self.attribute(self.eval(node.obj, scope, globals_env, owner), node.attr)
        if isinstance(node, Index):
            obj = self.eval(node.obj, scope, globals_env, owner)
            idx = self.eval(node.index, scope, globals_env, owner)
            if not isinstance(idx, int) or isinstance(idx, bool):
                raise OracleFault("type-error")
            if isinstance(obj, (list, str)):
                if -len(obj) <= idx < len(obj):
                    return obj[idx]
                raise OracleFault("index-error")
            raise OracleFault("type-error")
        raise AssertionError(f"unexpected expression {type(node).__name__}")

    def attribute(self, obj: object, attr: str) -> object:
        if isinstance(obj, _Instance):
            if attr in obj.attrs:
                return obj.attrs[attr]
            entry = self.registry.get(obj.class_name)
            if entry is not None and attr in entry.methods:
                return ("bound", obj, entry.methods[attr])
            raise OracleFault("attribute-error")
        if isinstance(obj, _ModuleAlias):
            if attr in obj.env:
                return obj.env[attr]
            raise OracleFault("attribute-error")
        if isinstance(obj, list):
            if attr in ("append", "pop"):
                return _ListOp(obj, attr)
            raise OracleFault("attribute-error")
        raise OracleFault("attribute-error")

    def apply(self, callee: object, args: list[object]) -> object:
        if isinstance(callee, _Func):
            return self.call(callee, args)
        if isinstance(callee, tuple) and len(callee) == 3 and callee[0] == "bound":
            return self.call(callee[2], [callee[1], *args])
        if isinstance(callee, _Class):
            return self.construct(callee, args)
        if isinstance(callee, _Builtin):
            if len(args) != 1:
                raise OracleFault("arity-error")
            value = args[0]
            if callee.name == "len":
                if isinstance(value, (str, list)):
                    return len(value)
                raise OracleFault("type-error")
            if isinstance(value, bool):
                return int(value)
            if isinstance(value, (int, float)):
                return abs(value)
            raise OracleFault("type-error")
        if isinstance(callee, _ListOp):
            if callee.op == "append":
                if len(args) != 1:
                    raise OracleFault("arity-error")
                callee.target.append(args[0])
                return None
            if args:
                raise OracleFault("arity-error")
            if not callee.target:
                raise OracleFault("index-error")
            return callee.target.pop()
        raise OracleFault("type-error")


def _truthy(value: object) -> bool:
    if value is None:
        return False
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return value != 0
    if isinstance(value, (str, list)):
        return len(value) > 0
    return True


def _equal(a: object, b: object) -> bool:
    structured = (_Instance, _Func, _Class, _ModuleAlias, _ListOp, _Builtin, tuple)
    if isinstance(a, structured) or isinstance(b, structured):
        return a is b
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, str) or isinstance(b, str):
        return isinstance(a, str) and isinstance(b, str) and a == b
    if a is None or b is None:
        return a is None and b is None
    return a == b


def _numeric(value: object) -> bool:
    return isinstance(value, (int, float))


def _compare(op: str, a: object, b: object) -> bool:
    if op == "==":
        return _equal(a, b)
    if op == "!=":
        return not _equal(a, b)
    if _numeric(a) and _numeric(b):
        diff = a - b
        if diff != diff:  # one operand is NaN
            return False
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
    if isinstance(a, str) and isinstance(b, str):
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
    # Incomparable kinds: ordering comparisons are simply false.
    return False


def _binary(op: str, a: object, b: object) -> object:
    if op in ("==", "!=", *_ORDER_OPS):
        return _compare(op, a, b)
    numeric = _numeric(a) and _numeric(b)
    if op == "+":
        if numeric or (isinstance(a, str) and isinstance(b, str)):
            return a + b
        if isinstance(a, list) and isinstance(b, list):
            return a + b
        raise OracleFault("type-error")
    if not numeric:
        raise OracleFault("type-error")
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise OracleFault("zero-division")
        return a / b
    if op == "%":
        if b == 0:
            raise OracleFault("zero-division")
        return a % b
    raise AssertionError(f"unexpected operator {op!r}")
