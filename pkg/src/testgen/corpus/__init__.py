"""Bundled benchmark modules with hand-derived structural counts."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from testgen.lang import SourceModule

_PACKAGE_DIR = Path(__file__).resolve().parent


@dataclass(frozen=True, slots=True)
class ManifestEntry:
    module: str
    predicates: int
    lines: int
    max_branch_coverage: float
    note: str


def corpus_dir() -> Path:
    """Directory holding the bundled .mdyn modules and manifest.tsv."""
    return _PACKAGE_DIR


def load_manifest(directory: Path | str | None = None) -> list[ManifestEntry]:
    """Read manifest.tsv rows in file order."""
    directory = _resolve(directory)
    manifest_path = directory / "manifest.tsv"
    if not manifest_path.is_file():
        raise FileNotFoundError(f"no manifest.tsv in {directory}")
    entries: list[ManifestEntry] = []
    with open(manifest_path, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle, delimiter="\t"):
            entries.append(
                ManifestEntry(
                    module=row["module"],
                    predicates=int(row["predicates"]),
                    lines=int(row["lines"]),
                    max_branch_coverage=float(row["max_branch_coverage"]),
                    note=row["note"],
                )
            )
    return entries


def load_corpus(directory: Path | str | None = None) -> list[SourceModule]:
    """Load all corpus modules in manifest order."""
    directory = _resolve(directory)
    modules = []
    for entry in load_manifest(directory):
        path = directory / entry.module
        text = path.read_text(encoding="utf-8")
        modules.append(SourceModule(name=path.stem, path=str(path), text=text))
    return modules


def load_module(name: str, directory: Path | str | None = None) -> SourceModule:
    """Load a single corpus module by bare name, e.g. "triangle"."""
    directory = _resolve(directory)
    path = directory / f"{name}.mdyn"
    if not path.is_file():
        raise FileNotFoundError(f"no corpus module {name!r} in {directory}")
    return SourceModule(name=name, path=str(path), text=path.read_text(encoding="utf-8"))


def _resolve(directory: Path | str | None) -> Path:
    if directory is None:
        return _PACKAGE_DIR
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory does not exist: {directory}")
    return directory
