"""Parser, renderer, and static query tests."""

import pytest

from testgen.corpus import load_manifest, load_module
from testgen.lang import (
    AssertStmt,
    Assign,
    AstModule,
    BinOp,
    Call,
    FunctionDef,
    If,
    IntLit,
    MiniDynSyntaxError,
    Name,
    SourceModule,
    UseDirective,
    collect_lines,
    collect_predicates,
    parse_expression,
    parse_module,
    render_expression,
    render_source,
    walk,
)

from conftest import MODULE_NAMES


def parse_text(text, name="m"):
    return parse_module(SourceModule(name=name, path="<test>", text=text))


@pytest.mark.parametrize("name", MODULE_NAMES)
def test_render_parse_render_is_identity_on_corpus(name):
    module = parse_module(load_module(name))
    once = render_source(module)
    again = render_source(parse_text(once, name))
    assert once == again


@pytest.mark.parametrize("name", MODULE_NAMES)
def test_manifest_predicate_and_line_counts(name, corpus_modules):
    entry = next(e for e in load_manifest() if e.module == f"{name}.mdyn")
    module = corpus_modules[name]
    assert len(collect_predicates(module)) == entry.predicates
    assert len(collect_lines(module)) == entry.lines


def test_predicate_ids_are_dense_and_ordered(corpus_modules):
    for module in corpus_modules.values():
        ids = [info.predicate_id for info in collect_predicates(module)]
        assert ids == sorted(ids)
        assert len(ids) == len(set(ids))


def test_triangle_structure(corpus_modules):
    module = corpus_modules["triangle"]
    assert [f.name for f in module.functions] == ["triangle"]
    func = module.functions[0]
    assert [p.name for p in func.params] == ["x", "y", "z"]
    assert func.return_annotation.kind == "str"
    branch = func.body[0]
    assert isinstance(branch, If)
    assert len(branch.elif_clauses) == 1
    assert branch.else_body is not None
    # if + elif makes two predicates
    infos = collect_predicates(module)
    assert [info.kind for info in infos] == ["if", "elif"]
    assert all(info.function == "triangle" for info in infos)


def test_node_ids_unique_and_stable():
    text = load_module("deep_nesting").text
    first = parse_text(text, "deep_nesting")
    second = parse_text(text, "deep_nesting")
    ids_a = [node.node_id for node in walk(first)]
    ids_b = [node.node_id for node in walk(second)]
    assert ids_a == ids_b
    assert len(ids_a) == len(set(ids_a))


def test_elif_chain_gets_one_predicate_id_per_arm():
    module = parse_text(
        "def f(x: int) -> int:\n"
        "    if x == 0:\n"
        "        return 0\n"
        "    elif x == 1:\n"
        "        return 1\n"
        "    elif x == 2:\n"
        "        return 2\n"
        "    else:\n"
        "        return 3\n"
    )
    stmt = module.functions[0].body[0]
    assert len(stmt.elif_predicate_ids) == 2
    ids = [stmt.predicate_id, *stmt.elif_predicate_ids]
    assert len(set(ids)) == 3
    assert len(collect_predicates(module)) == 3


def test_use_directive_forms():
    module = parse_text("use geometry\nuse geometry as g\n\ndef f():\n    return\n")
    assert [(u.module, u.alias) for u in module.uses] == [
        ("geometry", None),
        ("geometry", "g"),
    ]
    assert "use geometry\nuse geometry as g" in render_source(module)


def test_assert_statement_round_trip():
    text = "def t():\n    assert 1 == 1\n"
    module = parse_text(text)
    stmt = module.functions[0].body[0]
    assert isinstance(stmt, AssertStmt)
    # every function body ends with a separating blank line
    assert render_source(module).endswith("assert 1 == 1\n\n")


def test_operator_precedence_survives_round_trip():
    cases = [
        "a + b * c",
        "(a + b) * c",
        "a - (b - c)",
        "not a and b",
        "not (a and b)",
        "-a * b",
        "a - -b",
        "xs[i + 1].field",
        "f(a, g(b))[0]",
    ]
    for text in cases:
        expr = parse_expression(text)
        rendered = render_expression(expr)
        again = render_expression(parse_expression(rendered))
        assert rendered == again, text


def test_negative_literal_in_subtraction_keeps_value():
    expr = parse_expression("x - -2.5")
    assert isinstance(expr, BinOp) and expr.op == "-"
    rendered = render_expression(expr)
    reparsed = parse_expression(rendered)
    assert isinstance(reparsed, BinOp) and reparsed.op == "-"


@pytest.mark.parametrize(
    "bad",
    [
        "def f(:\n",
        "def f():\nreturn 1\n",
        "def f():\n    if x\n        return 1\n",
        "def f():\n    x = = 3\n",
        "class C:\n    x = 1\n",
    ],
)
def test_syntax_errors_are_reported(bad):
    with pytest.raises(MiniDynSyntaxError):
        parse_text(bad)


def test_statement_lines_match_source_positions():
    module = parse_text(
        "def f(x: int) -> int:\n"
        "    y = x + 1\n"
        "    if y > 2:\n"
        "        return y\n"
        "    return 0\n"
    )
    lines = collect_lines(module)
    assert lines == [2, 3, 4, 5]


def test_rendered_module_builds_from_nodes():
    module = AstModule(
        name="built",
        uses=[UseDirective(module="stack", alias="module0")],
        functions=[
            FunctionDef(
                name="test_case_0",
                params=[],
                body=[
                    Assign(target=Name("int_0"), value=IntLit(value=7)),
                    AssertStmt(
                        test=BinOp(op="==", left=Name("int_0"), right=IntLit(value=7))
                    ),
                ],
            )
        ],
        classes=[],
    )
    text = render_source(module)
    assert text == (
        "use stack as module0\n"
        "\n"
        "def test_case_0():\n"
        "    int_0 = 7\n"
        "    assert int_0 == 7\n"
        "\n"
    )
    assert render_source(parse_text(text, "built")) == text
