"""Search-based unit test generation for MiniDyn modules."""

from testgen.cli import RunConfig, main, run

__version__ = "0.1.0"

__all__ = ["RunConfig", "__version__", "main", "run"]
