"""Test-cluster construction: callables, types, and annotation handling."""

import pytest

from testgen.analysis import (
    BUILTIN_TYPE_NAMES,
    TypeInfo,
    build_test_cluster,
    candidates_for_type,
)
from testgen.corpus import corpus_dir, load_module
from testgen.lang import SourceModule, parse_module


def cluster_of(text, name="m", use_annotations=True):
    module = parse_module(SourceModule(name=name, path="<test>", text=text))
    return build_test_cluster(module, None, use_annotations=use_annotations)


def test_triangle_cluster(clusters):
    cluster = clusters["triangle"]
    assert [c.name for c in cluster.accessible_callables] == ["triangle"]
    func = cluster.accessible_callables[0]
    assert func.kind == "function"
    assert func.arity == 3
    assert [p.declared.name for p in func.params] == ["int", "int", "int"]
    assert func.return_type.name == "str"


def test_untyped_module_has_no_declared_types(clusters):
    func = clusters["triangle_untyped"].accessible_callables[0]
    assert all(p.declared is None for p in func.params)
    assert func.return_type is None


def test_annotations_can_be_ignored(corpus_modules):
    cluster = build_test_cluster(
        corpus_modules["triangle"], corpus_dir(), use_annotations=False
    )
    func = cluster.accessible_callables[0]
    assert all(p.declared is None for p in func.params)
    assert func.return_type is None


def test_geometry_cluster_exposes_class(clusters):
    cluster = clusters["geometry"]
    kinds = {(c.kind, c.name) for c in cluster.accessible_callables}
    assert ("constructor", "Point") in kinds
    assert ("method", "Point.manhattan") in kinds
    assert ("function", "origin") in kinds
    ctor = next(c for c in cluster.accessible_callables if c.kind == "constructor")
    assert ctor.arity == 2  # self excluded
    assert ctor.return_type.name == "Point"
    method = next(c for c in cluster.accessible_callables if c.kind == "method")
    assert method.params[0].declared.name == "Point"
    origin = next(c for c in cluster.accessible_callables if c.kind == "function")
    assert origin.return_type.name == "Point"


def test_stack_constructor_without_init_params(clusters):
    cluster = clusters["stack"]
    ctor = next(c for c in cluster.accessible_callables if c.kind == "constructor")
    assert ctor.arity == 0
    methods = sorted(
        c.name for c in cluster.accessible_callables if c.kind == "method"
    )
    assert methods == [
        "Stack.is_empty",
        "Stack.peek",
        "Stack.pop",
        "Stack.push",
        "Stack.size",
    ]
    push = next(c for c in cluster.accessible_callables if c.name == "Stack.push")
    assert push.params[0].declared is None


def test_context_closure_resolves_types_from_used_modules(clusters):
    cluster = clusters["geometry_client"]
    # Point is defined in geometry, pulled in via use
    box = next(c for c in cluster.accessible_callables if c.name == "box_corner")
    assert box.return_type.name == "Point"
    point_type = box.return_type
    producers = candidates_for_type(cluster, point_type)
    names = {c.name for c in producers}
    # both the context constructor and the local factory can produce a Point
    assert "Point" in names
    assert "box_corner" in names
    # context-only callables are producers, not direct test targets
    accessible = {c.name for c in cluster.accessible_callables}
    assert "origin" not in accessible


def test_list_annotations():
    cluster = cluster_of(
        "def total(xs: list[int]) -> int:\n    return len(xs)\n"
    )
    param = cluster.accessible_callables[0].params[0].declared
    assert param.is_list
    assert param.base_name == "list"
    assert param.elem.name == "int"


def test_unknown_annotation_falls_back_to_dynamic():
    cluster = cluster_of("def f(x: Widget) -> Widget:\n    return x\n")
    func = cluster.accessible_callables[0]
    assert func.params[0].declared is None
    assert func.return_type is None


def test_builtin_type_names_cover_primitives():
    assert set(BUILTIN_TYPE_NAMES) == {"int", "float", "str", "bool", "list", "none"}


def test_underscore_functions_are_not_targets():
    cluster = cluster_of(
        "def _helper(x):\n    return x\n\ndef api(x):\n    return _helper(x)\n"
    )
    assert [c.name for c in cluster.accessible_callables] == ["api"]


def test_type_registry_includes_instance_sources(clusters):
    cluster = clusters["geometry"]
    point = next(t for t in cluster.type_registry if t.name == "Point")
    candidates = cluster.type_registry[point]
    assert [c.name for c in candidates.constructors] == ["Point"]
    assert [c.name for c in candidates.methods] == ["Point.manhattan"]
