"""Test-case representation, the backwards-filling factory, and variation."""

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
from testgen.testcase.factory import fulfill_parameters, sample_random_test_case
from testgen.testcase.variation import crossover, mutate

__all__ = [
    "DEFAULT_MAX_LENGTH",
    "ConstructorStatement",
    "FunctionStatement",
    "ListStatement",
    "MethodStatement",
    "PrimitiveStatement",
    "Statement",
    "TestCase",
    "TestSuiteChromosome",
    "crossover",
    "fulfill_parameters",
    "mutate",
    "sample_random_test_case",
    "types_compatible",
]
