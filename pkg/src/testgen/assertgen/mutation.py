"""Mutant enumeration: one small syntactic change per mutant.

Operators: AOR swaps an arithmetic operator, ROR a relational one, COR
flips and/or, CRP replaces an int constant with 0, 1, c+1, or -c, and NOT
removal deletes a `not`. Sites are visited in preorder, so mutant ids are
stable for a given module.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, fields
from typing import Callable

from testgen.lang import AstModule, BinOp, BoolOp, IntLit, Node, UnaryOp, iter_child_nodes, walk

ARITHMETIC_OPS = ("+", "-", "*", "/", "%")
RELATIONAL_OPS = ("==", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True, slots=True)
class Mutant:
    id: int
    operator: str
    node_id: int
    description: str
    module: AstModule


def generate_mutants(module: AstModule) -> list[Mutant]:
    """All single-node mutants of `module`, in deterministic preorder."""
    mutants: list[Mutant] = []
    for node in walk(module):
        for operator, description, apply in _site_mutations(node):
            mutated = copy.deepcopy(module)
            target = _find_by_id(mutated, node.node_id)
            apply(mutated, target)
            mutants.append(
                Mutant(
                    id=len(mutants),
                    operator=operator,
                    node_id=node.node_id,
                    description=description,
                    module=mutated,
                )
            )
    return mutants


_Application = tuple[str, str, Callable[[AstModule, Node], None]]


def _site_mutations(node: Node) -> list[_Application]:
    out: list[_Application] = []
    if isinstance(node, BinOp):
        if node.op in ARITHMETIC_OPS:
            pool, tag = ARITHMETIC_OPS, "AOR"
        elif node.op in RELATIONAL_OPS:
            pool, tag = RELATIONAL_OPS, "ROR"
        else:
            return out
        for alternative in pool:
            if alternative != node.op:
                out.append(
                    (
                        tag,
                        f"{node.op} -> {alternative}",
                        _set_op(alternative),
                    )
                )
    elif isinstance(node, BoolOp):
        alternative = "or" if node.op == "and" else "and"
        out.append(("COR", f"{node.op} -> {alternative}", _set_op(alternative)))
    elif isinstance(node, UnaryOp) and node.op == "not":
        out.append(("NOT", "drop not", _remove_not))
    elif isinstance(node, IntLit):
        seen = {node.value}
        for candidate in (0, 1, node.value + 1, -node.value):
            if candidate not in seen:
                seen.add(candidate)
                out.append(
                    ("CRP", f"{node.value} -> {candidate}", _set_int(candidate))
                )
    return out


def _set_op(op: str) -> Callable[[AstModule, Node], None]:
    def apply(module: AstModule, target: Node) -> None:
        target.op = op

    return apply


def _set_int(value: int) -> Callable[[AstModule, Node], None]:
    def apply(module: AstModule, target: Node) -> None:
        target.value = value

    return apply


def _remove_not(module: AstModule, target: Node) -> None:
    parent = _find_parent(module, target)
    if parent is None or not _replace_child(parent, target, target.operand):
        raise AssertionError("mutation target has no parent slot")


def _find_by_id(module: AstModule, node_id: int) -> Node:
    for node in walk(module):
        if node.node_id == node_id:
            return node
    raise AssertionError(f"no node with id {node_id}")


def _find_parent(module: AstModule, target: Node) -> Node | None:
    for node in walk(module):
        for child in iter_child_nodes(node):
            if child is target:
                return node
    return None


def _replace_child(parent: Node, old: Node, new: Node) -> bool:
    for f in fields(parent):
        value = getattr(parent, f.name)
        if value is old:
            setattr(parent, f.name, new)
            return True
        if isinstance(value, list):
            for i, item in enumerate(value):
                if item is old:
                    value[i] = new
                    return True
                if isinstance(item, tuple) and _replace_in_tuple(value, i, item, old, new):
                    return True
    return False


def _replace_in_tuple(slot: list, i: int, item: tuple, old: Node, new: Node) -> bool:
    parts = list(item)
    for j, part in enumerate(parts):
        if part is old:
            parts[j] = new
            slot[i] = tuple(parts)
            return True
        if isinstance(part, list):
            for k, sub in enumerate(part):
                if sub is old:
                    part[k] = new
                    return True
    return False
