"""Name-to-factory registry through which all algorithms are instantiated."""

from __future__ import annotations

from typing import Callable

from testgen.search.base import GenerationStrategy, SearchConfig

StrategyFactory = Callable[[SearchConfig], GenerationStrategy]


class DuplicateNameError(ValueError):
    pass


class UnknownNameError(ValueError):
    pass


_FACTORIES: dict[str, StrategyFactory] = {}


def register_strategy(name: str, factory: StrategyFactory) -> None:
    if name in _FACTORIES:
        raise DuplicateNameError(f"strategy {name!r} is already registered")
    _FACTORIES[name] = factory


def unregister_strategy(name: str) -> None:
    if name not in _FACTORIES:
        raise UnknownNameError(f"strategy {name!r} is not registered")
    del _FACTORIES[name]


def create_strategy(name: str, config: SearchConfig | None = None) -> GenerationStrategy:
    factory = _FACTORIES.get(name)
    if factory is None:
        known = ", ".join(sorted(_FACTORIES))
        raise UnknownNameError(f"unknown strategy {name!r}; registered strategies: {known}")
    return factory(config or SearchConfig())


def registered_strategies() -> tuple[str, ...]:
    return tuple(sorted(_FACTORIES))
