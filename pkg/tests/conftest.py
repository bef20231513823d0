import random

import pytest

import testgen.testcase
from testgen.analysis import build_test_cluster
from testgen.corpus import corpus_dir, load_manifest, load_module
from testgen.interp import directory_resolver
from testgen.lang import parse_module

# Test-prefixed library classes are data types, not test containers.
testgen.testcase.TestCase.__test__ = False
testgen.testcase.TestSuiteChromosome.__test__ = False

MODULE_NAMES = tuple(entry.module.rsplit(".", 1)[0] for entry in load_manifest())


@pytest.fixture(scope="session")
def corpus_modules():
    """Parsed corpus modules keyed by name, in manifest order."""
    return {name: parse_module(load_module(name)) for name in MODULE_NAMES}


@pytest.fixture(scope="session")
def clusters(corpus_modules):
    return {
        name: build_test_cluster(module, corpus_dir())
        for name, module in corpus_modules.items()
    }


@pytest.fixture(scope="session")
def resolver():
    return directory_resolver(corpus_dir())


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
