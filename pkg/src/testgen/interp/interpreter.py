"""Instrumented tree-walking execution of test cases against a module.

Executing code records, per module under test: statement lines hit, branch
distances per predicate (min-aggregated), callables entered, and optional
value observations after each test statement. Runtime errors are captured
per statement and never escape as tool crashes.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

from testgen.interp.distance import K, comparison_distances, negate, truth_distances
from testgen.interp.trace import (
    OUTCOME_BUDGET,
    OUTCOME_ERROR,
    OUTCOME_OK,
    Budget,
    ExecutionResult,
    ExecutionTrace,
    Observation,
    StatementOutcome,
)
from testgen.interp.values import (
    BoundListMethod,
    BoundMethod,
    BuiltinRef,
    ClassRef,
    FunctionRef,
    NamespaceRef,
    ObjectInstance,
    is_truthy,
    snapshot,
    type_name,
)
from testgen.lang import (
    AssertStmt,
    Assign,
    AstModule,
    Attribute,
    BinOp,
    BoolLit,
    BoolOp,
    Call,
    ExprStmt,
    FloatLit,
    If,
    Index,
    IntLit,
    ListLit,
    Name,
    NoneLit,
    Node,
    Return,
    SourceModule,
    StrLit,
    UnaryOp,
    While,
    parse_module,
)
from testgen.testcase.model import (
    ConstructorStatement,
    FunctionStatement,
    ListStatement,
    MethodStatement,
    PrimitiveStatement,
    TestCase,
)

MAX_CALL_DEPTH = 150

# One MiniDyn call burns around a dozen host frames, so the interpreter's own
# depth check only fires first if the host limit leaves enough headroom.
if sys.getrecursionlimit() < 4000:
    sys.setrecursionlimit(4000)

_COMPARISON_OPS = frozenset(("==", "!=", "<", "<=", ">", ">="))


class MiniDynRuntimeError(Exception):
    """A captured error inside executed MiniDyn code."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class ModuleLoadError(Exception):
    """A module or its dependencies could not be prepared for execution."""


class _BudgetExhausted(Exception):
    pass


class _ReturnSignal(Exception):
    def __init__(self, value: object):
        self.value = value


@dataclass(slots=True)
class ModuleImage:
    """A module ready to execute: resolved namespace plus class registry."""

    name: str
    ast: AstModule | None
    globals: dict[str, object]
    class_registry: dict[str, ClassRef]


@dataclass(slots=True)
class Frame:
    locals: dict[str, object]
    globals: Mapping[str, object]
    owner: str


Resolver = Callable[[str], SourceModule]


def directory_resolver(directory: Path | str) -> Resolver:
    """Resolve `use name` to <directory>/name.mdyn."""
    base = Path(directory)

    def resolve(name: str) -> SourceModule:
        path = base / f"{name}.mdyn"
        if not path.is_file():
            raise ModuleLoadError(f"cannot resolve module {name!r} in {base}")
        return SourceModule(name=name, path=str(path), text=path.read_text(encoding="utf-8"))

    return resolve


def mapping_resolver(modules: Mapping[str, SourceModule]) -> Resolver:
    def resolve(name: str) -> SourceModule:
        if name not in modules:
            raise ModuleLoadError(f"cannot resolve module {name!r}")
        return modules[name]

    return resolve


def prepare_module(
    module: SourceModule | AstModule | ModuleImage,
    resolver: Resolver | None = None,
) -> ModuleImage:
    """Parse (if needed) and link a module and its use-closure for execution."""
    if isinstance(module, ModuleImage):
        return module
    if isinstance(module, SourceModule):
        if resolver is None and module.path:
            parent = Path(module.path).parent
            if parent.is_dir():
                resolver = directory_resolver(parent)
        ast_mod = parse_module(module)
    else:
        ast_mod = module
    registry: dict[str, ClassRef] = {}
    cache: dict[str, ModuleImage] = {}
    return _build_image(ast_mod, resolver, registry, cache, loading=set())


def _build_image(
    ast_mod: AstModule,
    resolver: Resolver | None,
    registry: dict[str, ClassRef],
    cache: dict[str, ModuleImage],
    loading: set[str],
) -> ModuleImage:
    if ast_mod.name in loading:
        raise ModuleLoadError(f"cyclic use of module {ast_mod.name!r}")
    loading.add(ast_mod.name)
    namespace: dict[str, object] = {}
    for use in ast_mod.uses:
        dep = cache.get(use.module)
        if dep is None:
            if resolver is None:
                raise ModuleLoadError(
                    f"module {ast_mod.name!r} uses {use.module!r} but no resolver is available"
                )
            try:
                dep_src = resolver(use.module)
            except ModuleLoadError:
                raise
            except Exception as exc:
                raise ModuleLoadError(f"cannot load module {use.module!r}: {exc}") from exc
            dep = _build_image(parse_module(dep_src), resolver, registry, cache, loading)
        if use.alias is not None:
            namespace[use.alias] = NamespaceRef(dep.name, dep.globals)
        else:
            namespace.update(dep.globals)
    for func in ast_mod.functions:
        namespace[func.name] = FunctionRef(ast_mod.name, func.name, func, namespace)
    for cls in ast_mod.classes:
        methods = {}
        init = None
        for method in cls.methods:
            ref = FunctionRef(ast_mod.name, f"{cls.name}.{method.name}", method, namespace)
            if method.name == "__init__":
                init = ref
            else:
                methods[method.name] = ref
        class_ref = ClassRef(ast_mod.name, cls.name, methods, init)
        namespace[cls.name] = class_ref
        registry[cls.name] = class_ref
    image = ModuleImage(ast_mod.name, ast_mod, namespace, registry)
    cache[ast_mod.name] = image
    loading.discard(ast_mod.name)
    return image


class Interpreter:
    """Single-execution interpreter; create one per execution or reuse serially."""

    def __init__(self, image: ModuleImage, max_steps: int, trace: ExecutionTrace):
        self._image = image
        self._root = image.name
        self._max_steps = max_steps
        self._trace = trace
        self._depth = 0
        self.steps = 0

    # -- bookkeeping --

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self._max_steps:
            raise _BudgetExhausted()

    def _error(self, kind: str, message: str, node: Node | None = None) -> MiniDynRuntimeError:
        if node is not None:
            message = f"{message} (line {node.line})"
        return MiniDynRuntimeError(kind, message)

    # -- calls --

    def invoke(self, ref: FunctionRef, args: list[object]) -> object:
        params = ref.func.params
        if len(args) != len(params):
            raise self._error(
                "arity-error",
                f"{ref.qualname}() takes {len(params)} arguments, got {len(args)}",
            )
        if self._depth >= MAX_CALL_DEPTH:
            raise self._error("recursion-error", f"call depth exceeded in {ref.qualname}()")
        if ref.owner == self._root:
            self._trace.calls_entered.add(ref.qualname)
        frame = Frame({p.name: a for p, a in zip(params, args)}, ref.globals_map, ref.owner)
        self._depth += 1
        try:
            self._exec_block(ref.func.body, frame)
            return None
        except _ReturnSignal as signal:
            return signal.value
        finally:
            self._depth -= 1

    def construct(self, ref: ClassRef, args: list[object]) -> ObjectInstance:
        instance = ObjectInstance(ref.name)
        if ref.init is not None:
            self.invoke_with_self(ref.init, instance, args)
        elif args:
            raise self._error(
                "arity-error", f"{ref.name}() takes 0 arguments, got {len(args)}"
            )
        return instance

    def invoke_with_self(
        self, ref: FunctionRef, instance: ObjectInstance, args: list[object]
    ) -> object:
        return self.invoke(ref, [instance, *args])

    def _call_value(self, callee: object, args: list[object], node: Node) -> object:
        if isinstance(callee, FunctionRef):
            return self.invoke(callee, args)
        if isinstance(callee, BoundMethod):
            return self.invoke(callee.ref, [callee.instance, *args])
        if isinstance(callee, ClassRef):
            return self.construct(callee, args)
        if isinstance(callee, BuiltinRef):
            return self._call_builtin(callee.name, args, node)
        if isinstance(callee, BoundListMethod):
            return self._call_list_method(callee, args, node)
        raise self._error("type-error", f"{type_name(callee)} value is not callable", node)

    def _call_builtin(self, name: str, args: list[object], node: Node) -> object:
        if len(args) != 1:
            raise self._error("arity-error", f"{name}() takes 1 argument, got {len(args)}", node)
        value = args[0]
        if name == "len":
            if isinstance(value, (str, list)):
                return len(value)
            raise self._error("type-error", f"len() of {type_name(value)}", node)
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, (int, float)):
            return abs(value)
        raise self._error("type-error", f"abs() of {type_name(value)}", node)

    def _call_list_method(self, bound: BoundListMethod, args: list[object], node: Node) -> object:
        if bound.name == "append":
            if len(args) != 1:
                raise self._error(
                    "arity-error", f"append() takes 1 argument, got {len(args)}", node
                )
            bound.target.append(args[0])
            return None
        if args:
            raise self._error("arity-error", f"pop() takes 0 arguments, got {len(args)}", node)
        if not bound.target:
            raise self._error("index-error", "pop from empty list", node)
        return bound.target.pop()

    # -- statements --

    def _exec_block(self, body: list[Node], frame: Frame) -> None:
        for stmt in body:
            self._exec(stmt, frame)

    def _exec(self, stmt: Node, frame: Frame) -> None:
        self._tick()
        if frame.owner == self._root:
            self._trace.lines_hit.add(stmt.line)
        handler = _STMT_HANDLERS.get(type(stmt))
        if handler is None:
            raise AssertionError(f"no handler for {type(stmt).__name__}")
        handler(self, stmt, frame)

    def _exec_assign(self, stmt: Assign, frame: Frame) -> None:
        value = self._eval(stmt.value, frame)
        target = stmt.target
        if isinstance(target, Name):
            frame.locals[target.ident] = value
            return
        obj = self._eval(target.obj, frame)
        if not isinstance(obj, ObjectInstance):
            raise self._error(
                "type-error", f"cannot set attribute on {type_name(obj)}", target
            )
        obj.attrs[target.attr] = value

    def _exec_if(self, stmt: If, frame: Frame) -> None:
        record = frame.owner == self._root
        taken, true_d, false_d = self.predicate_outcome(stmt.cond, frame)
        if record:
            self._trace.record_branch(stmt.predicate_id, true_d, false_d)
        if taken:
            self._exec_block(stmt.then_body, frame)
            return
        for pid, (cond, body) in zip(stmt.elif_predicate_ids, stmt.elif_clauses):
            self._tick()
            if record:
                self._trace.lines_hit.add(cond.line)
            taken, true_d, false_d = self.predicate_outcome(cond, frame)
            if record:
                self._trace.record_branch(pid, true_d, false_d)
            if taken:
                self._exec_block(body, frame)
                return
        if stmt.else_body is not None:
            self._exec_block(stmt.else_body, frame)

    def _exec_while(self, stmt: While, frame: Frame) -> None:
        record = frame.owner == self._root
        while True:
            self._tick()
            taken, true_d, false_d = self.predicate_outcome(stmt.cond, frame)
            if record:
                self._trace.record_branch(stmt.predicate_id, true_d, false_d)
            if not taken:
                return
            self._exec_block(stmt.body, frame)

    def _exec_return(self, stmt: Return, frame: Frame) -> None:
        value = None if stmt.value is None else self._eval(stmt.value, frame)
        raise _ReturnSignal(value)

    def _exec_expr(self, stmt: ExprStmt, frame: Frame) -> None:
        self._eval(stmt.value, frame)

    def _exec_assert(self, stmt: AssertStmt, frame: Frame) -> None:
        if not is_truthy(self._eval(stmt.test, frame)):
            raise self._error("assertion-error", "assertion failed", stmt)

    # -- predicates --

    def predicate_outcome(self, expr: Node, frame: Frame) -> tuple[bool, float, float]:
        """(taken, true_distance, false_distance) with short-circuit preserved.

        An unevaluated operand of and/or charges the constant k on the side
        that would have needed it.
        """
        if isinstance(expr, BoolOp):
            self._tick()
            left = self.predicate_outcome(expr.left, frame)
            if expr.op == "and":
                if not left[0]:
                    return False, left[1] + K, left[2]
                right = self.predicate_outcome(expr.right, frame)
                return right[0], left[1] + right[1], min(left[2], right[2])
            if left[0]:
                return True, min(left[1], K), left[2] + K
            right = self.predicate_outcome(expr.right, frame)
            return right[0], min(left[1], right[1]), left[2] + right[2]
        if isinstance(expr, UnaryOp) and expr.op == "not":
            self._tick()
            return negate(self.predicate_outcome(expr.operand, frame))
        if isinstance(expr, BinOp) and expr.op in _COMPARISON_OPS:
            self._tick()
            a = self._eval(expr.left, frame)
            b = self._eval(expr.right, frame)
            return comparison_distances(expr.op, a, b)
        return truth_distances(self._eval(expr, frame))

    # -- expressions --

    def _eval(self, node: Node, frame: Frame) -> object:
        self._tick()
        handler = _EVAL_HANDLERS.get(type(node))
        if handler is None:
            raise AssertionError(f"no handler for {type(node).__name__}")
        return handler(self, node, frame)

    def _eval_int(self, node: IntLit, frame: Frame) -> int:
        return node.value

    def _eval_float(self, node: FloatLit, frame: Frame) -> float:
        return node.value

    def _eval_str(self, node: StrLit, frame: Frame) -> str:
        return node.value

    def _eval_bool(self, node: BoolLit, frame: Frame) -> bool:
        return node.value

    def _eval_none(self, node: NoneLit, frame: Frame) -> None:
        return None

    def _eval_list(self, node: ListLit, frame: Frame) -> list:
        return [self._eval(element, frame) for element in node.elements]

    def _eval_name(self, node: Name, frame: Frame) -> object:
        ident = node.ident
        if ident in frame.locals:
            return frame.locals[ident]
        if ident in frame.globals:
            return frame.globals[ident]
        if ident in ("len", "abs"):
            return BuiltinRef(ident)
        raise self._error("name-error", f"name {ident!r} is not defined", node)

    def _eval_binop(self, node: BinOp, frame: Frame) -> object:
        op = node.op
        a = self._eval(node.left, frame)
        b = self._eval(node.right, frame)
        if op in _COMPARISON_OPS:
            return comparison_distances(op, a, b)[0]
        numeric = isinstance(a, (int, float)) and isinstance(b, (int, float))
        if op == "+":
            if numeric:
                return a + b
            if isinstance(a, str) and isinstance(b, str):
                return a + b
            if isinstance(a, list) and isinstance(b, list):
                return a + b
        elif numeric:
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if op == "/":
                if b == 0:
                    raise self._error("zero-division", "division by zero", node)
                return a / b
            if b == 0:
                raise self._error("zero-division", "modulo by zero", node)
            return a % b
        raise self._error(
            "type-error", f"cannot apply {op!r} to {type_name(a)} and {type_name(b)}", node
        )

    def _eval_boolop(self, node: BoolOp, frame: Frame) -> bool:
        return self.predicate_outcome(node, frame)[0]

    def _eval_unary(self, node: UnaryOp, frame: Frame) -> object:
        if node.op == "not":
            return not is_truthy(self._eval(node.operand, frame))
        value = self._eval(node.operand, frame)
        if isinstance(value, bool):
            return -int(value)
        if isinstance(value, (int, float)):
            return -value
        raise self._error("type-error", f"cannot negate {type_name(value)}", node)

    def _eval_call(self, node: Call, frame: Frame) -> object:
        callee = self._eval(node.func, frame)
        args = [self._eval(arg, frame) for arg in node.args]
        return self._call_value(callee, args, node)

    def _eval_attribute(self, node: Attribute, frame: Frame) -> object:
        obj = self._eval(node.obj, frame)
        attr = node.attr
        if isinstance(obj, ObjectInstance):
            if attr in obj.attrs:
                return obj.attrs[attr]
            class_ref = self._image.class_registry.get(obj.class_name)
            if class_ref is not None and attr in class_ref.methods:
                return BoundMethod(obj, class_ref.methods[attr])
            raise self._error(
                "attribute-error", f"{obj.class_name} object has no attribute {attr!r}", node
            )
        if isinstance(obj, NamespaceRef):
            if attr in obj.globals_map:
                return obj.globals_map[attr]
            raise self._error(
                "attribute-error", f"module {obj.module_name!r} has no attribute {attr!r}", node
            )
        if isinstance(obj, list):
            if attr in ("append", "pop"):
                return BoundListMethod(obj, attr)
            raise self._error("attribute-error", f"list has no attribute {attr!r}", node)
        raise self._error(
            "attribute-error", f"{type_name(obj)} value has no attribute {attr!r}", node
        )

    def _eval_index(self, node: Index, frame: Frame) -> object:
        obj = self._eval(node.obj, frame)
        idx = self._eval(node.index, frame)
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise self._error("type-error", f"index must be int, not {type_name(idx)}", node)
        if isinstance(obj, (list, str)):
            if -len(obj) <= idx < len(obj):
                return obj[idx]
            raise self._error("index-error", f"index {idx} out of range", node)
        raise self._error("type-error", f"cannot index {type_name(obj)}", node)


_STMT_HANDLERS = {
    Assign: Interpreter._exec_assign,
    If: Interpreter._exec_if,
    While: Interpreter._exec_while,
    Return: Interpreter._exec_return,
    ExprStmt: Interpreter._exec_expr,
    AssertStmt: Interpreter._exec_assert,
}

_EVAL_HANDLERS = {
    IntLit: Interpreter._eval_int,
    FloatLit: Interpreter._eval_float,
    StrLit: Interpreter._eval_str,
    BoolLit: Interpreter._eval_bool,
    NoneLit: Interpreter._eval_none,
    ListLit: Interpreter._eval_list,
    Name: Interpreter._eval_name,
    BinOp: Interpreter._eval_binop,
    BoolOp: Interpreter._eval_boolop,
    UnaryOp: Interpreter._eval_unary,
    Call: Interpreter._eval_call,
    Attribute: Interpreter._eval_attribute,
    Index: Interpreter._eval_index,
}


def execute_test(
    test: TestCase,
    module: SourceModule | AstModule | ModuleImage,
    budget: Budget | None = None,
    observe: bool = False,
    resolver: Resolver | None = None,
) -> ExecutionResult:
    """Run a test case against a module, capturing trace and outcomes."""
    image = prepare_module(module, resolver)
    max_steps = (budget or Budget()).max_steps
    trace = ExecutionTrace()
    interp = Interpreter(image, max_steps, trace)
    variables: list[object] = []
    outcomes: list[StatementOutcome] = []
    for index, stmt in enumerate(test.statements):
        try:
            value = _run_statement(interp, image, stmt, variables)
        except MiniDynRuntimeError as exc:
            outcomes.append(StatementOutcome(OUTCOME_ERROR, exc.kind, str(exc)))
            break
        except _BudgetExhausted:
            outcomes.append(StatementOutcome(OUTCOME_BUDGET))
            break
        except RecursionError:
            # Deeply nested expressions can outrun the host stack before the
            # call-depth check does; contain that like any runtime error.
            outcomes.append(
                StatementOutcome(OUTCOME_ERROR, "recursion-error", "host stack exhausted")
            )
            break
        variables.append(value)
        outcomes.append(StatementOutcome(OUTCOME_OK))
        if observe:
            _capture(trace, variables, index)
    return ExecutionResult(trace, outcomes, min(interp.steps, max_steps))


def _run_statement(
    interp: Interpreter, image: ModuleImage, stmt: object, variables: list[object]
) -> object:
    interp._tick()
    if isinstance(stmt, PrimitiveStatement):
        return stmt.value
    if isinstance(stmt, ListStatement):
        return [variables[e] for e in stmt.elements]
    if isinstance(stmt, FunctionStatement):
        ref = image.globals.get(stmt.callable.name)
        if not isinstance(ref, FunctionRef):
            raise MiniDynRuntimeError("name-error", f"no function {stmt.callable.name!r}")
        return interp.invoke(ref, [variables[a] for a in stmt.args])
    if isinstance(stmt, ConstructorStatement):
        ref = image.globals.get(stmt.callable.name)
        if not isinstance(ref, ClassRef):
            raise MiniDynRuntimeError("name-error", f"no class {stmt.callable.name!r}")
        return interp.construct(ref, [variables[a] for a in stmt.args])
    if isinstance(stmt, MethodStatement):
        receiver = variables[stmt.receiver]
        method_name = stmt.callable.name.rsplit(".", 1)[-1]
        if not isinstance(receiver, ObjectInstance):
            raise MiniDynRuntimeError(
                "type-error", f"cannot call method on {type_name(receiver)}"
            )
        class_ref = image.class_registry.get(receiver.class_name)
        if class_ref is None or method_name not in class_ref.methods:
            raise MiniDynRuntimeError(
                "attribute-error",
                f"{receiver.class_name} object has no method {method_name!r}",
            )
        ref = class_ref.methods[method_name]
        return interp.invoke(ref, [receiver, *[variables[a] for a in stmt.args]])
    raise AssertionError(f"unknown statement type {type(stmt).__name__}")


def _capture(trace: ExecutionTrace, variables: list[object], statement_index: int) -> None:
    for var_index, value in enumerate(variables):
        if isinstance(value, ObjectInstance):
            for attr in sorted(value.attrs):
                ok, snap = snapshot(value.attrs[attr])
                if ok:
                    trace.observations.append(
                        Observation(
                            statement_index,
                            "object-attribute",
                            f"var_{var_index}.{attr}",
                            snap,
                            var_index,
                            attr,
                        )
                    )
        else:
            ok, snap = snapshot(value)
            if ok:
                trace.observations.append(
                    Observation(
                        statement_index, "return-value", f"var_{var_index}", snap, var_index
                    )
                )


def eval_predicate(expr: Node, env: Mapping[str, object]) -> tuple[bool, float, float]:
    """Standalone predicate evaluation against a plain variable environment."""
    image = ModuleImage("<predicate>", None, {}, {})
    interp = Interpreter(image, 1_000_000, ExecutionTrace())
    frame = Frame(dict(env), image.globals, "<predicate>")
    return interp.predicate_outcome(expr, frame)


def run_callable(
    image: ModuleImage,
    qualname: str,
    args: list[object],
    budget: Budget | None = None,
) -> object:
    """Call one function of a prepared module directly; errors propagate."""
    ref = image.globals.get(qualname)
    if not isinstance(ref, FunctionRef):
        raise ModuleLoadError(f"no function {qualname!r} in module {image.name!r}")
    interp = Interpreter(image, (budget or Budget()).max_steps, ExecutionTrace())
    try:
        return interp.invoke(ref, args)
    except _BudgetExhausted:
        raise MiniDynRuntimeError("budget-exhausted", f"{qualname}() exceeded step budget")
    except RecursionError:
        raise MiniDynRuntimeError("recursion-error", "host stack exhausted")


def run_test_functions(
    module: SourceModule | AstModule | ModuleImage,
    budget: Budget | None = None,
    resolver: Resolver | None = None,
) -> list[tuple[str, StatementOutcome]]:
    """Execute every zero-argument test_* function of a module, in order.

    Used to replay exported test modules: an assertion-error outcome means a
    failing test.
    """
    image = prepare_module(module, resolver)
    max_steps = (budget or Budget()).max_steps
    results: list[tuple[str, StatementOutcome]] = []
    assert image.ast is not None
    for func in image.ast.functions:
        if not func.name.startswith("test_") or func.params:
            continue
        ref = image.globals[func.name]
        assert isinstance(ref, FunctionRef)
        interp = Interpreter(image, max_steps, ExecutionTrace())
        try:
            interp.invoke(ref, [])
        except MiniDynRuntimeError as exc:
            results.append((func.name, StatementOutcome(OUTCOME_ERROR, exc.kind, str(exc))))
            continue
        except _BudgetExhausted:
            results.append((func.name, StatementOutcome(OUTCOME_BUDGET)))
            continue
        except RecursionError:
            results.append(
                (func.name, StatementOutcome(OUTCOME_ERROR, "recursion-error", "host stack exhausted"))
            )
            continue
        results.append((func.name, StatementOutcome(OUTCOME_OK)))
    return results
