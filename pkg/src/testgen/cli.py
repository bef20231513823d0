"""Command line front end: generate a test module for one MiniDyn module.

Running the tool means executing searcher-invented inputs against the module
under test. The interpreter is step-bounded and has no file or network
access, but the gate is still explicit: the TESTGEN_DANGER_AWARE environment
variable must be set, to any value, before anything is executed.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from testgen.analysis import build_test_cluster
from testgen.assertgen import generate_mutants, synthesize_assertions
from testgen.export import render_test_module, write_test_module
from testgen.fitness import CoverageGoal, build_goals, coverage
from testgen.interp import directory_resolver
from testgen.lang import MiniDynSyntaxError, SourceModule, parse_module
from testgen.search import (
    FullCoverage,
    IterationEvent,
    MaxIterations,
    MaxTime,
    SearchContext,
    SearchExecutor,
    SearchObserver,
    create_strategy,
    registered_strategies,
)

DANGER_VARIABLE = "TESTGEN_DANGER_AWARE"
DEFAULT_SEARCH_SECONDS = 60.0
STATS_HEADER = "elapsed_s,iteration,branch_coverage,line_coverage"
KILL_HEADER = "mutant_id,operator,killed_by"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DANGER = 2
EXIT_IO = 3
EXIT_PARSE = 4

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """Everything one generation run needs; the CLI is a thin layer over this."""

    project_path: Path | str
    module_name: str
    output_path: Path | str
    algorithm: str = "DYNAMOSA"
    seed: int | None = None
    maximum_search_time: float | None = None
    maximum_iterations: int | None = None
    stop_at_full_coverage: bool = False
    coverage: str = "branch"
    use_annotations: bool = True
    generate_assertions: bool = True
    stats_path: Path | str | None = None
    verbosity: int = 0


class StatisticsCollector(SearchObserver):
    """One row per search iteration, both coverages regardless of criterion."""

    def __init__(
        self,
        branch_goals: Sequence[CoverageGoal],
        line_goals: Sequence[CoverageGoal],
    ):
        self._branch = branch_goals
        self._line = line_goals
        self.rows: list[tuple[float, int, float, float]] = []

    def on_iteration(self, event: IterationEvent) -> None:
        self.rows.append(
            (
                event.elapsed_s,
                event.iteration,
                coverage(event.results, self._branch),
                coverage(event.results, self._line),
            )
        )


class ProgressLogger(SearchObserver):
    def on_iteration(self, event: IterationEvent) -> None:
        logger.info(
            "iteration %d: coverage %.4f after %.2fs",
            event.iteration,
            event.coverage,
            event.elapsed_s,
        )


def run(config: RunConfig) -> int:
    """Generate, assert, and write tests per `config`; returns an exit code."""
    project = Path(config.project_path)
    output_dir = Path(config.output_path)
    module_path = project / f"{config.module_name}.mdyn"
    if not module_path.is_file():
        return _fail(EXIT_IO, f"module file not found: {module_path}")
    try:
        text = module_path.read_text(encoding="utf-8")
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {module_path}: {exc}")
    source = SourceModule(name=config.module_name, path=str(module_path), text=text)
    try:
        module = parse_module(source)
    except MiniDynSyntaxError as exc:
        return _fail(EXIT_PARSE, f"cannot parse {module_path}: {exc}")

    cluster = build_test_cluster(module, project, use_annotations=config.use_annotations)
    branch_goals = build_goals(module, "branch")
    line_goals = build_goals(module, "line")
    if config.coverage == "both":
        goals = tuple(branch_goals) + tuple(line_goals)
    elif config.coverage == "branch":
        goals = branch_goals
    elif config.coverage == "line":
        goals = line_goals
    else:
        raise ValueError(f"unknown coverage criterion {config.coverage!r}")

    resolver = directory_resolver(project)
    executor = SearchExecutor(module, resolver=resolver)
    stats = StatisticsCollector(branch_goals, line_goals)
    observers: list[SearchObserver] = [stats]
    if config.verbosity >= 1:
        observers.append(ProgressLogger())

    stops: list[MaxTime | MaxIterations | FullCoverage] = []
    if config.maximum_search_time is not None:
        stops.append(MaxTime(float(config.maximum_search_time)))
    if config.maximum_iterations is not None:
        stops.append(MaxIterations(config.maximum_iterations))
    if not stops:
        stops.append(MaxTime(DEFAULT_SEARCH_SECONDS))
    if config.stop_at_full_coverage:
        stops.append(FullCoverage())

    strategy = create_strategy(config.algorithm)
    context = SearchContext(
        cluster=cluster,
        goals=goals,
        executor=executor,
        stop_conditions=tuple(stops),
        rng=random.Random(config.seed),
        observers=tuple(observers),
    )
    strategy.generate_tests(context)
    search_elapsed = executor.elapsed_seconds
    final_suite, final_results = strategy.snapshot(context)
    logger.info(
        "search done: %d tests, %d executions, %.2fs on the virtual clock",
        final_suite.size,
        executor.executions,
        search_elapsed,
    )

    report = None
    to_render: object = final_suite
    if config.generate_assertions:
        mutants = generate_mutants(module)
        asserted, report = synthesize_assertions(
            final_suite, module, mutants, resolver=resolver
        )
        if report.incomplete:
            logger.warning("assertion synthesis stopped early: step budget exhausted")
        to_render = asserted

    rendered = render_test_module(to_render, config.module_name)
    try:
        target = write_test_module(rendered, output_dir)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write test module: {exc}")
    logger.info("wrote %s", target)

    stats_path = (
        Path(config.stats_path) if config.stats_path else output_dir / "statistics.csv"
    )
    last_iteration = stats.rows[-1][1] if stats.rows else 0
    lines = [STATS_HEADER]
    lines.extend(_stats_row(*row) for row in stats.rows)
    lines.append(
        _stats_row(
            search_elapsed,
            last_iteration,
            coverage(final_results, branch_goals),
            coverage(final_results, line_goals),
        )
    )
    try:
        _write_lines(stats_path, lines)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write statistics: {exc}")

    if report is not None:
        kill_lines = [KILL_HEADER]
        kill_lines.extend(
            f"{record.mutant_id},{record.operator},{record.killed_by}"
            for record in report.records
        )
        try:
            _write_lines(stats_path.parent / "mutation_report.csv", kill_lines)
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot write mutation report: {exc}")
    return EXIT_OK


def _stats_row(elapsed: float, iteration: int, branch: float, line: float) -> str:
    return f"{elapsed:.6f},{iteration},{branch:.6f},{line:.6f}"


def _write_lines(path: Path, lines: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _fail(code: int, message: str) -> int:
    print(f"testgen: error: {message}", file=sys.stderr)
    return code


class _CliParser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for the danger gate here.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    parser = _CliParser(
        prog="testgen",
        description="Generate unit tests for a MiniDyn module via search.",
        epilog=(
            f"Refuses to run unless {DANGER_VARIABLE} is set (to any value): "
            "generated tests execute the module under a step-bounded interpreter."
        ),
    )
    parser.add_argument(
        "--project-path",
        required=True,
        help="directory holding the module under test and the modules it uses",
    )
    parser.add_argument(
        "--module-name",
        required=True,
        help="module to generate tests for, without the .mdyn suffix",
    )
    parser.add_argument(
        "--output-path",
        required=True,
        help="directory the test module is written to",
    )
    parser.add_argument(
        "--algorithm",
        default="DYNAMOSA",
        choices=registered_strategies(),
        help="search algorithm (default: DYNAMOSA)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="random seed; the same seed reproduces the same output byte for byte",
    )
    parser.add_argument(
        "--maximum-search-time",
        type=float,
        default=None,
        metavar="SECONDS",
        help=f"search budget on the virtual clock (default: {DEFAULT_SEARCH_SECONDS:.0f} "
        "when --maximum-iterations is not given)",
    )
    parser.add_argument(
        "--maximum-iterations",
        type=int,
        default=None,
        metavar="N",
        help="stop after N search iterations",
    )
    parser.add_argument(
        "--coverage",
        default="branch",
        choices=("branch", "line", "both"),
        help="coverage criterion the search optimises (default: branch)",
    )
    parser.add_argument(
        "--no-type-annotations",
        dest="use_annotations",
        action="store_false",
        help="ignore declared parameter and return types",
    )
    parser.add_argument(
        "--no-assertions",
        dest="generate_assertions",
        action="store_false",
        help="skip mutation-based assertion generation",
    )
    parser.add_argument(
        "--stats-path",
        default=None,
        help="statistics CSV path (default: <output-path>/statistics.csv)",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        dest="verbosity",
        action="count",
        default=0,
        help="-v logs search progress, -vv additionally logs every execution",
    )
    return parser


def main(argv: Sequence[str] | None = None, env: Mapping[str, str] | None = None) -> int:
    environ = os.environ if env is None else env
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.maximum_search_time is not None and args.maximum_search_time <= 0:
            parser.error("--maximum-search-time must be positive")
        if args.maximum_iterations is not None and args.maximum_iterations <= 0:
            parser.error("--maximum-iterations must be positive")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if DANGER_VARIABLE not in environ:
        print(
            f"testgen: set {DANGER_VARIABLE} to confirm you understand that "
            "generated tests execute the module under test",
            file=sys.stderr,
        )
        return EXIT_DANGER
    if args.verbosity:
        logging.basicConfig(
            level=logging.INFO if args.verbosity == 1 else logging.DEBUG,
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
    config = RunConfig(
        project_path=args.project_path,
        module_name=args.module_name,
        output_path=args.output_path,
        algorithm=args.algorithm,
        seed=args.seed,
        maximum_search_time=args.maximum_search_time,
        maximum_iterations=args.maximum_iterations,
        coverage=args.coverage,
        use_annotations=args.use_annotations,
        generate_assertions=args.generate_assertions,
        stats_path=args.stats_path,
        verbosity=args.verbosity,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
