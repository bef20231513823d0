"""Test-cluster construction: what can be called and what can be built.

The cluster lists the callables of the module under test plus every type
usable as an input, harvested from the module itself and from context modules
reachable through `use` directives.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path

from testgen.lang import (
    AstModule,
    ClassDef,
    FunctionDef,
    MiniDynSyntaxError,
    SourceModule,
    TypeAnnotation,
    parse_module,
)

log = logging.getLogger(__name__)

BUILTIN_TYPE_NAMES = ("int", "float", "str", "bool", "list", "none")


@dataclass(frozen=True, slots=True)
class TypeInfo:
    """A type usable in a test: canonical name plus where it came from."""

    name: str
    origin: str  # builtin | module-under-test | context
    elem: TypeInfo | None = None  # element type for list[T]

    @property
    def is_list(self) -> bool:
        return self.name == "list" or self.name.startswith("list[")

    @property
    def base_name(self) -> str:
        return "list" if self.is_list else self.name


@dataclass(frozen=True, slots=True)
class ParamSpec:
    name: str
    declared: TypeInfo | None


@dataclass(frozen=True, slots=True)
class GenericCallable:
    """One callable thing: a function, a method, or a class constructor."""

    kind: str  # function | method | constructor
    name: str  # qualified, e.g. "triangle", "Stack.push", "Stack"
    owner: TypeInfo | None
    params: tuple[ParamSpec, ...]
    return_type: TypeInfo | None

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(slots=True)
class TypeCandidates:
    """Ways to obtain and to exercise values of one type."""

    constructors: list[GenericCallable] = field(default_factory=list)
    methods: list[GenericCallable] = field(default_factory=list)


@dataclass(slots=True)
class TestCluster:
    module_name: str
    accessible_callables: list[GenericCallable]
    type_registry: dict[TypeInfo, TypeCandidates]
    builtins: dict[str, TypeInfo]
    unresolved: set[str]
    use_annotations: bool

    def all_types(self) -> list[TypeInfo]:
        """Every type a value could be created with, builtins first."""
        return list(self.builtins.values()) + [
            t for t in self.type_registry if t.origin != "builtin"
        ]

    def class_type(self, name: str) -> TypeInfo | None:
        for info in self.type_registry:
            if info.name == name and info.origin != "builtin":
                return info
        return None


def build_test_cluster(
    module: AstModule,
    context_dir: Path | str | None,
    use_annotations: bool = True,
) -> TestCluster:
    """Collect callables and input types for a module under test.

    Context modules are the transitive closure of `use` directives resolved
    against context_dir; unreadable or unparsable ones are skipped with a
    warning.
    """
    builtins = {name: TypeInfo(name=name, origin="builtin") for name in BUILTIN_TYPE_NAMES}
    cluster = TestCluster(
        module_name=module.name,
        accessible_callables=[],
        type_registry={info: TypeCandidates() for info in builtins.values()},
        builtins=builtins,
        unresolved=set(),
        use_annotations=use_annotations,
    )

    context_modules = _load_context(module, context_dir)

    # Register every class first so annotations can resolve to them.
    class_types: dict[str, TypeInfo] = {}
    for cls in module.classes:
        info = TypeInfo(name=cls.name, origin="module-under-test")
        class_types[cls.name] = info
        cluster.type_registry[info] = TypeCandidates()
    for ctx in context_modules:
        for cls in ctx.classes:
            if cls.name not in class_types:
                info = TypeInfo(name=cls.name, origin="context")
                class_types[cls.name] = info
                cluster.type_registry[info] = TypeCandidates()

    def resolve(ann: TypeAnnotation | None) -> TypeInfo | None:
        return _resolve_annotation(ann, cluster, class_types) if use_annotations else None

    def make_callable(kind: str, name: str, owner: TypeInfo | None, func: FunctionDef) -> GenericCallable:
        params = func.params[1:] if kind in ("method", "constructor") else func.params
        specs = tuple(ParamSpec(p.name, resolve(p.annotation)) for p in params)
        if kind == "constructor":
            ret = owner
        else:
            ret = resolve(func.return_annotation)
        return GenericCallable(kind=kind, name=name, owner=owner, params=specs, return_type=ret)

    def register_class(cls: ClassDef, info: TypeInfo, accessible: bool) -> None:
        candidates = cluster.type_registry[info]
        init = next((m for m in cls.methods if m.name == "__init__"), None)
        if init is not None:
            ctor = make_callable("constructor", cls.name, info, init)
        else:
            ctor = GenericCallable("constructor", cls.name, info, (), info)
        candidates.constructors.append(ctor)
        if accessible:
            cluster.accessible_callables.append(ctor)
        for method in cls.methods:
            if method.name == "__init__":
                continue
            gc = make_callable("method", f"{cls.name}.{method.name}", info, method)
            candidates.methods.append(gc)
            if accessible:
                cluster.accessible_callables.append(gc)

    def register_function(func: FunctionDef, accessible: bool) -> None:
        gc = make_callable("function", func.name, None, func)
        if accessible:
            cluster.accessible_callables.append(gc)
        ret = gc.return_type
        if ret is not None and ret in cluster.type_registry and ret.origin != "builtin":
            # A function returning a class is another way to obtain one.
            cluster.type_registry[ret].constructors.append(gc)

    for cls in module.classes:
        register_class(cls, class_types[cls.name], accessible=True)
    for func in module.functions:
        register_function(func, accessible=True)
    for ctx in context_modules:
        for cls in ctx.classes:
            info = class_types[cls.name]
            if info.origin == "context":
                register_class(cls, info, accessible=False)
        for func in ctx.functions:
            register_function(func, accessible=False)
    return cluster


def candidates_for_type(
    cluster: TestCluster, declared: TypeInfo | None, rng: random.Random
) -> TypeInfo:
    """The declared type when known, otherwise a uniform draw over all types."""
    if declared is not None:
        return declared
    choices = cluster.all_types()
    return choices[rng.randrange(len(choices))]


def _resolve_annotation(
    ann: TypeAnnotation | None,
    cluster: TestCluster,
    class_types: dict[str, TypeInfo],
) -> TypeInfo | None:
    if ann is None:
        return None
    if ann.kind == "none":
        return cluster.builtins["none"]
    if ann.kind == "list":
        elem = _resolve_annotation(ann.elem, cluster, class_types)
        if elem is None:
            return cluster.builtins["list"]
        return TypeInfo(name=f"list[{elem.name}]", origin="builtin", elem=elem)
    if ann.kind == "class":
        info = class_types.get(ann.class_name)
        if info is None:
            cluster.unresolved.add(ann.class_name)
            return None
        return info
    return cluster.builtins[ann.kind]


def _load_context(module: AstModule, context_dir: Path | str | None) -> list[AstModule]:
    """Parse the transitive closure of `use` directives, skipping bad files."""
    if context_dir is None:
        return []
    directory = Path(context_dir)
    loaded: dict[str, AstModule] = {}
    queue = [use.module for use in module.uses]
    while queue:
        name = queue.pop(0)
        if name in loaded or name == module.name:
            continue
        path = directory / f"{name}.mdyn"
        try:
            text = path.read_text(encoding="utf-8")
            ctx = parse_module(SourceModule(name=name, path=str(path), text=text))
        except (OSError, MiniDynSyntaxError) as exc:
            log.warning("skipping context module %s: %s", name, exc)
            continue
        loaded[name] = ctx
        queue.extend(use.module for use in ctx.uses)
    return list(loaded.values())
