"""Instrumented interpreter: execution, traces, and branch distances."""

from testgen.interp.distance import K, comparison_distances, negate, truth_distances
from testgen.interp.interpreter import (
    MAX_CALL_DEPTH,
    Frame,
    Interpreter,
    MiniDynRuntimeError,
    ModuleImage,
    ModuleLoadError,
    directory_resolver,
    eval_predicate,
    execute_test,
    mapping_resolver,
    prepare_module,
    run_callable,
    run_test_functions,
)
from testgen.interp.trace import (
    DEFAULT_MAX_STEPS,
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
    is_numeric,
    is_truthy,
    snapshot,
    snapshot_equal,
    type_name,
    value_to_literal,
    values_equal,
)

__all__ = [
    "Budget",
    "BoundListMethod",
    "BoundMethod",
    "BuiltinRef",
    "ClassRef",
    "DEFAULT_MAX_STEPS",
    "ExecutionResult",
    "ExecutionTrace",
    "Frame",
    "FunctionRef",
    "Interpreter",
    "K",
    "MAX_CALL_DEPTH",
    "MiniDynRuntimeError",
    "ModuleImage",
    "ModuleLoadError",
    "NamespaceRef",
    "Observation",
    "ObjectInstance",
    "OUTCOME_BUDGET",
    "OUTCOME_ERROR",
    "OUTCOME_OK",
    "StatementOutcome",
    "comparison_distances",
    "directory_resolver",
    "eval_predicate",
    "execute_test",
    "is_numeric",
    "is_truthy",
    "mapping_resolver",
    "negate",
    "prepare_module",
    "run_callable",
    "run_test_functions",
    "snapshot",
    "snapshot_equal",
    "truth_distances",
    "type_name",
    "value_to_literal",
    "values_equal",
]
