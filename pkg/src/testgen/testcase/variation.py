"""Variation operators: statement-level mutation and suite-level crossover."""

from __future__ import annotations

import random
import string

from testgen.analysis import TestCluster
from testgen.testcase.factory import fulfill_parameters
from testgen.testcase.model import (
    DEFAULT_MAX_LENGTH,
    ConstructorStatement,
    FunctionStatement,
    ListStatement,
    MethodStatement,
    PrimitiveStatement,
    Statement,
    TestCase,
    TestSuiteChromosome,
    types_compatible,
)

INT_PERTURBATION_MAX = 10
FLOAT_PERTURBATION_MAX = 10.0


def mutate(
    test: TestCase,
    cluster: TestCluster,
    rng: random.Random,
    max_len: int = DEFAULT_MAX_LENGTH,
) -> TestCase:
    """One of insert / remove / change with equal probability, on a copy."""
    result = test.clone()
    if result.size == 0:
        _insert(result, cluster, rng, max_len)
        return result
    op = rng.randrange(3)
    if op == 0:
        _insert(result, cluster, rng, max_len)
    elif op == 1:
        _remove(result, rng)
    else:
        _change(result, rng)
    return result


def _insert(test: TestCase, cluster: TestCluster, rng: random.Random, max_len: int) -> None:
    if test.size >= max_len or not cluster.accessible_callables:
        return
    position = rng.randint(0, test.size)
    target = cluster.accessible_callables[rng.randrange(len(cluster.accessible_callables))]
    fragment = fulfill_parameters(
        target, cluster, rng, test=test, position=position, max_len=max_len
    )
    if fragment is None:
        return
    shift = len(fragment)
    for stmt in test.statements[position:]:
        _shift_refs(stmt, position, shift)
    test.statements[position:position] = fragment


def _remove(test: TestCase, rng: random.Random) -> None:
    victim = rng.randrange(test.size)
    removed = {victim}
    removed_types = {victim: test.statements[victim].ret_type}
    # Retarget later references to surviving compatible variables, or cascade.
    for j in range(victim + 1, test.size):
        stmt = test.statements[j]
        if not any(ref in removed for ref in stmt.references()):
            continue
        if not _retarget(test, j, stmt, removed, removed_types, rng):
            removed.add(j)
            removed_types[j] = stmt.ret_type
    _drop(test, removed)


def _retarget(
    test: TestCase,
    index: int,
    stmt: Statement,
    removed: set[int],
    removed_types: dict[int, object],
    rng: random.Random,
) -> bool:
    def replacement(old: int) -> int | None:
        wanted = removed_types[old]
        options = [
            k
            for k in range(index)
            if k not in removed and types_compatible(test.statements[k].ret_type, wanted)
        ]
        if not options:
            return None
        return options[rng.randrange(len(options))]

    updates: dict[int, int] = {}
    for ref in set(stmt.references()):
        if ref in removed and ref not in updates:
            new = replacement(ref)
            if new is None:
                return False
            updates[ref] = new
    _apply_ref_updates(stmt, updates)
    return True


def _drop(test: TestCase, removed: set[int]) -> None:
    remap: dict[int, int] = {}
    kept = 0
    for i in range(test.size):
        if i not in removed:
            remap[i] = kept
            kept += 1
    test.statements = [
        _remapped(stmt, remap) for i, stmt in enumerate(test.statements) if i not in removed
    ]


def _remapped(stmt: Statement, remap: dict[int, int]) -> Statement:
    _apply_ref_updates(stmt, remap)
    return stmt


def _apply_ref_updates(stmt: Statement, updates: dict[int, int]) -> None:
    if isinstance(stmt, ListStatement):
        stmt.elements = [updates.get(e, e) for e in stmt.elements]
    elif isinstance(stmt, (ConstructorStatement, FunctionStatement)):
        stmt.args = [updates.get(a, a) for a in stmt.args]
    elif isinstance(stmt, MethodStatement):
        stmt.receiver = updates.get(stmt.receiver, stmt.receiver)
        stmt.args = [updates.get(a, a) for a in stmt.args]


def _shift_refs(stmt: Statement, position: int, shift: int) -> None:
    def shifted(ref: int) -> int:
        return ref + shift if ref >= position else ref

    if isinstance(stmt, ListStatement):
        stmt.elements = [shifted(e) for e in stmt.elements]
    elif isinstance(stmt, (ConstructorStatement, FunctionStatement)):
        stmt.args = [shifted(a) for a in stmt.args]
    elif isinstance(stmt, MethodStatement):
        stmt.receiver = shifted(stmt.receiver)
        stmt.args = [shifted(a) for a in stmt.args]


def _change(test: TestCase, rng: random.Random) -> None:
    index = rng.randrange(test.size)
    stmt = test.statements[index]
    if isinstance(stmt, PrimitiveStatement):
        stmt.value = _perturbed(stmt.value, rng)
    elif isinstance(stmt, ListStatement):
        _change_list(test, index, stmt, rng)
    elif isinstance(stmt, (ConstructorStatement, FunctionStatement, MethodStatement)):
        _swap_argument(test, index, stmt, rng)


def _perturbed(value, rng: random.Random):
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + rng.choice((1, -1)) * rng.randint(1, INT_PERTURBATION_MAX)
    if isinstance(value, float):
        return value + rng.choice((1.0, -1.0)) * rng.uniform(0.0, FLOAT_PERTURBATION_MAX)
    if isinstance(value, str):
        return _edit_string(value, rng)
    return value


def _edit_string(value: str, rng: random.Random) -> str:
    op = rng.randrange(3)
    letter = rng.choice(string.ascii_lowercase)
    if op == 0 or not value:
        pos = rng.randint(0, len(value))
        return value[:pos] + letter + value[pos:]
    pos = rng.randrange(len(value))
    if op == 1:
        return value[:pos] + value[pos + 1 :]
    return value[:pos] + letter + value[pos + 1 :]


def _change_list(test: TestCase, index: int, stmt: ListStatement, rng: random.Random) -> None:
    elem = stmt.ret_type.elem if stmt.ret_type is not None else None
    options = [
        k for k in range(index) if types_compatible(test.statements[k].ret_type, elem)
    ]
    ops = []
    if options:
        ops.append("add")
    if stmt.elements:
        ops.append("drop")
        if options:
            ops.append("swap")
    if not ops:
        return
    op = ops[rng.randrange(len(ops))]
    if op == "add":
        stmt.elements.insert(
            rng.randint(0, len(stmt.elements)), options[rng.randrange(len(options))]
        )
    elif op == "drop":
        del stmt.elements[rng.randrange(len(stmt.elements))]
    else:
        stmt.elements[rng.randrange(len(stmt.elements))] = options[
            rng.randrange(len(options))
        ]


def _swap_argument(test: TestCase, index: int, stmt: Statement, rng: random.Random) -> None:
    slots: list[tuple[str, int]] = []
    if isinstance(stmt, MethodStatement):
        slots.append(("receiver", 0))
        slots.extend(("arg", i) for i in range(len(stmt.args)))
    else:
        slots.extend(("arg", i) for i in range(len(stmt.args)))
    if not slots:
        return
    kind, slot = slots[rng.randrange(len(slots))]
    if kind == "receiver":
        current = stmt.receiver
        wanted = stmt.callable.owner
    else:
        current = stmt.args[slot]
        wanted = stmt.callable.params[slot].declared
    options = [
        k
        for k in range(index)
        if k != current and types_compatible(test.statements[k].ret_type, wanted)
    ]
    if not options:
        return
    pick = options[rng.randrange(len(options))]
    if kind == "receiver":
        stmt.receiver = pick
    else:
        stmt.args[slot] = pick


def crossover(
    a: TestSuiteChromosome, b: TestSuiteChromosome, rng: random.Random
) -> tuple[TestSuiteChromosome, TestSuiteChromosome]:
    """Single relative cut point; tails exchanged; total test count conserved."""
    alpha = rng.random()
    cut_a = int(alpha * (a.size + 1))
    cut_b = int(alpha * (b.size + 1))
    cut_a = min(cut_a, a.size)
    cut_b = min(cut_b, b.size)
    child1 = TestSuiteChromosome(
        [t.clone() for t in a.test_cases[:cut_a]] + [t.clone() for t in b.test_cases[cut_b:]]
    )
    child2 = TestSuiteChromosome(
        [t.clone() for t in b.test_cases[:cut_b]] + [t.clone() for t in a.test_cases[cut_a:]]
    )
    return child1, child2
