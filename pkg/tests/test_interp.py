"""Interpreter semantics, tracing, budgets, and the standalone predicate API."""

import math
import random

import pytest

from testgen.corpus import corpus_dir, load_module
from testgen.interp import (
    DEFAULT_MAX_STEPS,
    Budget,
    ModuleLoadError,
    directory_resolver,
    eval_predicate,
    execute_test,
    mapping_resolver,
    prepare_module,
    run_callable,
    run_test_functions,
    snapshot,
    snapshot_equal,
    value_to_literal,
    values_equal,
)
from testgen.lang import SourceModule, parse_expression, parse_module
from testgen.testcase import (
    ConstructorStatement,
    FunctionStatement,
    MethodStatement,
    PrimitiveStatement,
    TestCase,
)
from testgen.analysis import build_test_cluster
from testgen.testcase import sample_random_test_case

from oracle_interp import oracle_execute


def parse_text(text, name="m"):
    return parse_module(SourceModule(name=name, path="<test>", text=text))


def image_of(text, name="m"):
    return prepare_module(parse_text(text, name))


# -- direct call semantics --


@pytest.mark.parametrize(
    "args,expected",
    [
        ((5, 5, 5), "Equilateral triangle"),
        ((2, 2, 3), "Isosceles triangle"),
        ((3, 4, 5), "Scalene triangle"),
    ],
)
def test_triangle_classification(args, expected):
    image = prepare_module(load_module("triangle"))
    assert run_callable(image, "triangle", list(args)) == expected


def test_arithmetic_and_division():
    image = image_of(
        "def f(a, b):\n    return a / b\n\ndef g(a, b):\n    return a % b\n"
    )
    assert run_callable(image, "f", [7, 2]) == 3.5
    assert run_callable(image, "g", [7, 3]) == 1
    from testgen.interp import MiniDynRuntimeError

    with pytest.raises(MiniDynRuntimeError) as err:
        run_callable(image, "f", [1, 0])
    assert err.value.kind == "zero-division"


def test_values_equal_semantics():
    assert values_equal(True, 1)
    assert values_equal(2, 2.0)
    assert not values_equal("1", 1)
    assert not values_equal(None, 0)
    assert values_equal(None, None)
    assert values_equal([1, [2, "x"]], [1.0, [2, "x"]])
    assert not values_equal([1], [1, 2])


def test_snapshot_freezes_lists():
    ok, snap = snapshot([1, [2, 3], "s"])
    assert ok and snap == (1, (2, 3), "s")
    assert snapshot_equal(snap, (1.0, (2, 3), "s"))
    nan = float("nan")
    assert snapshot_equal(nan, nan)
    assert not snapshot_equal(nan, 0.0)


def test_value_to_literal_rejects_non_finite():
    with pytest.raises(ValueError):
        value_to_literal(float("inf"))
    with pytest.raises(ValueError):
        value_to_literal(float("nan"))


# -- predicate distances, hand-computed spots --


def check(text, env, expected):
    taken, true_d, false_d = eval_predicate(parse_expression(text), env)
    assert (taken, true_d, false_d) == expected


def test_relational_distances_hand_cases():
    # k = 1 in all rules; taken side is exactly zero
    check("a < b", {"a": 3, "b": 5}, (True, 0.0, 2.0))
    check("a < b", {"a": 5, "b": 3}, (False, 3.0, 0.0))
    check("a <= b", {"a": 5, "b": 5}, (True, 0.0, 1.0))
    check("a == b", {"a": 4, "b": 9}, (False, 5.0, 0.0))
    check("a != b", {"a": 4, "b": 4}, (False, 1.0, 0.0))
    check("a > b", {"a": 2, "b": 2}, (False, 1.0, 0.0))
    check("a >= b", {"a": 2, "b": 7}, (False, 5.0, 0.0))


def test_boolean_composition_distances():
    # and: true needs both, false takes the cheaper side
    check("a == 0 and b == 0", {"a": 3, "b": 7}, (False, 3.0 + 1.0, 0.0))
    check("a == 0 and b == 0", {"a": 0, "b": 7}, (False, 0.0 + 7.0, 0.0))
    check("a == 0 and b == 0", {"a": 0, "b": 0}, (True, 0.0, 1.0))
    # or: short-circuit charges k for the unevaluated side
    check("a == 0 or b == 0", {"a": 0, "b": 9}, (True, 0.0, 1.0 + 1.0))
    check("a == 0 or b == 0", {"a": 2, "b": 0}, (True, 0.0, 1.0))
    check("a == 0 or b == 0", {"a": 2, "b": 5}, (False, 2.0, 0.0))
    check("not a == b", {"a": 1, "b": 1}, (False, 1.0, 0.0))


def test_truthiness_predicate_distances():
    check("x", {"x": 7}, (True, 0.0, 7.0))
    check("x", {"x": 0}, (False, 1.0, 0.0))
    check("x", {"x": ""}, (False, 1.0, 0.0))
    check("x", {"x": "a"}, (True, 0.0, 1.0))


def test_float_and_string_and_incomparable_distances():
    check("a < b", {"a": 1.25, "b": 2.0}, (True, 0.0, 0.75))
    # sub-unit float gap: the taken side clamps to zero
    taken, true_d, false_d = eval_predicate(
        parse_expression("a < b"), {"a": 1.0, "b": 1.25}
    )
    assert (taken, true_d) == (True, 0.0) and false_d == 0.25
    check("a < b", {"a": "apple", "b": "pear"}, (True, 0.0, 1.0))
    check("a < b", {"a": "pear", "b": "apple"}, (False, 1.0, 0.0))
    # incomparable kinds are false, never an error
    check("a < b", {"a": None, "b": 3}, (False, 1.0, 0.0))
    nan = float("nan")
    check("a < b", {"a": nan, "b": 3}, (False, 1.0, 0.0))
    check("a == b", {"a": nan, "b": nan}, (False, 1.0, 0.0))


# -- tracing --


def test_trace_lines_and_branches_hand_checked():
    image = image_of(
        "def f(x):\n"  # line 1
        "    if x > 0:\n"  # line 2, predicate 0
        "        return 1\n"  # line 3
        "    return 0\n"  # line 4
    )
    test = TestCase(
        [
            PrimitiveStatement(5, None),
            FunctionStatement(_callable_named(image, "f"), [0]),
        ]
    )
    result = execute_test(test, image)
    assert result.ok
    assert result.trace.lines_hit == {2, 3}
    assert result.trace.branch_results == {0: (0.0, 5.0)}
    assert result.trace.calls_entered == {"f"}

    test = TestCase(
        [
            PrimitiveStatement(-2, None),
            FunctionStatement(_callable_named(image, "f"), [0]),
        ]
    )
    result = execute_test(test, image)
    assert result.trace.lines_hit == {2, 4}
    assert result.trace.branch_results == {0: (3.0, 0.0)}


def _callable_named(image, name):
    from testgen.analysis import GenericCallable, ParamSpec

    func = image.globals[name].func
    params = tuple(ParamSpec(p.name, None) for p in func.params)
    return GenericCallable(
        kind="function", name=name, owner=None, params=params, return_type=None
    )


def test_branch_distances_min_aggregate_over_loop():
    image = image_of(
        "def f(n):\n"
        "    i = 0\n"
        "    while i < n:\n"
        "        i = i + 1\n"
        "    return i\n"
    )
    test = TestCase(
        [
            PrimitiveStatement(3, None),
            FunctionStatement(_callable_named(image, "f"), [0]),
        ]
    )
    result = execute_test(test, image)
    # loop ran i = 0,1,2 (taken) and exited at i == 3: both sides reached zero
    assert result.trace.branch_results[0] == (0.0, 0.0)


def test_error_stops_test_and_is_contained():
    image = image_of("def f(a, b):\n    return a / b\n")
    test = TestCase(
        [
            PrimitiveStatement(1, None),
            PrimitiveStatement(0, None),
            FunctionStatement(_callable_named(image, "f"), [0, 1]),
            PrimitiveStatement(9, None),
        ]
    )
    result = execute_test(test, image)
    assert [o.kind for o in result.outcomes] == ["ok", "ok", "runtime-error"]
    assert result.outcomes[2].error_kind == "zero-division"
    assert not result.ok


def test_budget_exhaustion():
    image = image_of(
        "def spin():\n"
        "    i = 0\n"
        "    while i >= 0:\n"
        "        i = i + 1\n"
        "    return i\n"
    )
    test = TestCase([FunctionStatement(_callable_named(image, "spin"), [])])
    result = execute_test(test, image, budget=Budget(500))
    assert [o.kind for o in result.outcomes] == ["budget-exhausted"]
    assert result.steps == 500
    assert result.exhausted


def test_recursion_limit():
    image = image_of("def f(n):\n    return f(n + 1)\n")
    test = TestCase(
        [
            PrimitiveStatement(0, None),
            FunctionStatement(_callable_named(image, "f"), [0]),
        ]
    )
    result = execute_test(test, image)
    assert result.outcomes[-1].error_kind == "recursion-error"


def test_observations_capture_returns_and_object_state(clusters, resolver):
    cluster = clusters["stack"]
    ctor = next(c for c in cluster.accessible_callables if c.kind == "constructor")
    push = next(
        c for c in cluster.accessible_callables if c.name.endswith(".push")
    )
    image = prepare_module(load_module("stack"), resolver)
    test = TestCase(
        [
            ConstructorStatement(ctor, []),
            PrimitiveStatement(7, None),
            MethodStatement(0, push, [1]),
        ]
    )
    result = execute_test(test, image, observe=True)
    assert result.ok
    kinds = {(o.statement_index, o.kind, o.path) for o in result.trace.observations}
    # after statement 2 the stack object exposes its items attribute
    assert (2, "object-attribute", "var_0.items") in kinds
    final_items = [
        o.value
        for o in result.trace.observations
        if o.statement_index == 2 and o.path == "var_0.items"
    ]
    assert final_items == [(7,)]


# -- module linking --


def test_use_closure_requires_resolver():
    module = parse_module(load_module("geometry_client"))
    with pytest.raises(ModuleLoadError):
        prepare_module(module)
    image = prepare_module(module, directory_resolver(corpus_dir()))
    assert "Point" in image.class_registry


def test_cyclic_use_is_rejected():
    a = SourceModule("a", "<t>", "use b\n\ndef fa():\n    return 1\n")
    b = SourceModule("b", "<t>", "use a\n\ndef fb():\n    return 2\n")
    with pytest.raises(ModuleLoadError):
        prepare_module(a, mapping_resolver({"a": a, "b": b}))


def test_run_test_functions_reports_assertion_failures():
    module = parse_text(
        "def test_case_0():\n    assert 1 == 1\n\ndef test_case_1():\n    assert 1 == 2\n",
        "t",
    )
    outcomes = run_test_functions(module)
    assert [(name, out.kind) for name, out in outcomes] == [
        ("test_case_0", "ok"),
        ("test_case_1", "runtime-error"),
    ]
    assert outcomes[1][1].error_kind == "assertion-error"


# -- agreement with the reference re-executor --


@pytest.mark.parametrize("name", ["triangle", "stack", "geometry_client", "list_ops"])
def test_traces_match_reference_execution(name, corpus_modules, clusters, resolver):
    library = corpus_modules
    image = prepare_module(library[name], resolver)
    rng = random.Random(99)
    for _ in range(50):
        test = sample_random_test_case(clusters[name], rng)
        result = execute_test(test, image)
        log = oracle_execute(test, library[name], library, DEFAULT_MAX_STEPS)
        taken = {(p, True) for p, d in result.trace.branch_results.items() if d[0] == 0.0}
        taken |= {(p, False) for p, d in result.trace.branch_results.items() if d[1] == 0.0}
        assert result.trace.lines_hit == log.lines
        assert taken == log.taken
        assert [o.kind for o in result.outcomes] == log.outcomes
        assert result.steps == log.steps
