"""Mutation-based assertion generation."""

from testgen.assertgen.assertions import (
    DEFAULT_SYNTHESIS_BUDGET,
    FLOAT_TOLERANCE,
    AssertedTest,
    Assertion,
    AttributeEquals,
    FloatApprox,
    IsNone,
    KillRecord,
    KillReport,
    ObservationPoint,
    PrimitiveEquals,
    assertion_from_observation,
    diff_observations,
    synthesize_assertions,
)
from testgen.assertgen.mutation import (
    ARITHMETIC_OPS,
    RELATIONAL_OPS,
    Mutant,
    generate_mutants,
)

__all__ = [
    "ARITHMETIC_OPS",
    "AssertedTest",
    "Assertion",
    "AttributeEquals",
    "DEFAULT_SYNTHESIS_BUDGET",
    "FLOAT_TOLERANCE",
    "FloatApprox",
    "IsNone",
    "KillRecord",
    "KillReport",
    "Mutant",
    "ObservationPoint",
    "PrimitiveEquals",
    "RELATIONAL_OPS",
    "assertion_from_observation",
    "diff_observations",
    "generate_mutants",
    "synthesize_assertions",
]
