"""Branch-distance rules for predicate evaluations.

Relational distances follow the classical rule table with constant k = 1;
non-numeric or incomparable operands fall back to distance 1 on the untaken
side. The taken side is always exactly 0: for integer operands the table
already yields that, for sub-unit float differences it is clamped.
"""

from __future__ import annotations

import math

from testgen.interp.values import is_numeric, is_truthy, values_equal

K = 1.0
_CAP = 1e300


def comparison_distances(op: str, a: object, b: object) -> tuple[bool, float, float]:
    """(taken, true_distance, false_distance) for `a <op> b`."""
    if op in ("==", "!="):
        return _equality_distances(op, a, b)
    return _relational_distances(op, a, b)


def truth_distances(value: object) -> tuple[bool, float, float]:
    """Distances for a bare truth-value predicate such as `if x:`."""
    taken = is_truthy(value)
    if is_numeric(value) and not isinstance(value, bool):
        # Distance to non-zero is the constant; distance to zero is |x|.
        if taken:
            return True, 0.0, _finite(abs(value))
        return False, K, 0.0
    return taken, (0.0 if taken else K), (K if taken else 0.0)


def negate(result: tuple[bool, float, float]) -> tuple[bool, float, float]:
    taken, true_d, false_d = result
    return not taken, false_d, true_d


def _equality_distances(op: str, a: object, b: object) -> tuple[bool, float, float]:
    if is_numeric(a) and is_numeric(b):
        equal = a == b
        gap = _finite(abs(a - b))
        if math.isnan(gap):
            equal, gap = False, K
    else:
        equal = values_equal(a, b)
        gap = 0.0 if equal else K
    eq_true, eq_false = (0.0, K) if equal else (gap, 0.0)
    if op == "==":
        return equal, eq_true, eq_false
    return not equal, eq_false, eq_true


def _relational_distances(op: str, a: object, b: object) -> tuple[bool, float, float]:
    if is_numeric(a) and is_numeric(b):
        diff = _finite(a - b)
        if not math.isnan(diff):
            if op == "<":
                taken = a < b
                true_d, false_d = max(diff + K, 0.0), max(-diff, 0.0)
            elif op == "<=":
                taken = a <= b
                true_d, false_d = max(diff, 0.0), max(-diff + K, 0.0)
            elif op == ">":
                taken = a > b
                true_d, false_d = max(-diff + K, 0.0), max(diff, 0.0)
            else:
                taken = a >= b
                true_d, false_d = max(-diff, 0.0), max(diff + K, 0.0)
            # Float gaps below k can leave residue on the side that was taken.
            if taken:
                true_d = 0.0
            else:
                false_d = 0.0
            return taken, _finite(true_d), _finite(false_d)
        return False, K, 0.0
    if isinstance(a, str) and isinstance(b, str):
        if op == "<":
            taken = a < b
        elif op == "<=":
            taken = a <= b
        elif op == ">":
            taken = a > b
        else:
            taken = a >= b
        return taken, (0.0 if taken else K), (K if taken else 0.0)
    # Incomparable operand kinds never raise; the comparison is just false.
    return False, K, 0.0


def _finite(x: float) -> float:
    try:
        x = float(x)
    except OverflowError:
        return _CAP
    if math.isinf(x):
        return _CAP if x > 0 else -_CAP
    return x
