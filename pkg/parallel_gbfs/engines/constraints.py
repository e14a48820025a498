from __future__ import annotations

import importlib
from abc import ABC, abstractmethod
from typing import Any, Callable, Optional

from .structures import InFlightRegistry, OpenEntry


class ExpansionConstraint(ABC):
    """
    Gate on expanding the top of Open while other expansions are in flight.

    ``satisfies`` is called with the registry snapshot taken in the same
    exclusive section as the pop. It must return True for an empty registry,
    otherwise a lone worker could never make progress.
    """

    name = "custom"

    @abstractmethod
    def satisfies(self, candidate: OpenEntry, registry: InFlightRegistry) -> bool:
        ...

    def on_expansion_start(self, state: int) -> None:
        pass

    def on_expansion_finish(self, state: int) -> None:
        pass


class NoConstraint(ExpansionConstraint):
    """Always true; turns the template into KPGBFS."""

    name = "none"

    def satisfies(self, candidate: OpenEntry, registry: InFlightRegistry) -> bool:
        return True


class InflightMinH(ExpansionConstraint):
    """
    Expand the candidate only when no in-flight expansion could still put a
    better state into Open.

    True iff the registry is empty, or for every in-flight expansion ``e``:
    ``h(candidate) <= h(e)`` and, unless ``h(candidate) == 0``, ``e`` has
    generated all successors and each of them has a known
    ``h >= h(candidate)``. Unknown successor values count as 0.
    """

    name = "inflight-minh"

    def satisfies(self, candidate: OpenEntry, registry: InFlightRegistry) -> bool:
        hc = candidate.h
        for expansion in registry:
            if hc > expansion.h:
                return False
            if hc == 0:
                continue
            if not expansion.generation_complete:
                return False
            bound = expansion.pending_lower_bound()
            if bound is not None and bound < hc:
                return False
        return True


class CallableConstraint(ExpansionConstraint):
    """Wrap a plain ``(candidate, registry) -> bool`` predicate."""

    def __init__(self, predicate: Callable[[OpenEntry, InFlightRegistry], bool], name: str = "custom") -> None:
        self._predicate = predicate
        self.name = name

    def satisfies(self, candidate: OpenEntry, registry: InFlightRegistry) -> bool:
        if not registry:
            return True
        return bool(self._predicate(candidate, registry))


def load_constraint(target: str) -> ExpansionConstraint:
    """
    Import a constraint from ``"package.module:attribute"``. The attribute may
    be an :class:`ExpansionConstraint` instance or subclass, or a predicate.
    """
    module_name, sep, attr = target.partition(":")
    if not sep or not attr:
        raise ValueError(f"custom constraint must look like 'module:attribute', got {target!r}")
    obj = getattr(importlib.import_module(module_name), attr)
    if isinstance(obj, type) and issubclass(obj, ExpansionConstraint):
        return obj()
    if isinstance(obj, ExpansionConstraint):
        return obj
    if callable(obj):
        return CallableConstraint(obj, name=attr)
    raise ValueError(f"{target} is not a constraint or a predicate")


def make_constraint(name: str, custom: Optional[Any] = None) -> ExpansionConstraint:
    """
    Build the constraint named by an engine configuration.

    Parameters
    ----------
    name:
        ``"none"``, ``"inflight-minh"`` or ``"custom"``.
    custom:
        For ``"custom"``: an :class:`ExpansionConstraint`, a predicate, or an
        import string ``"module:attribute"``.
    """
    if name == "none":
        return NoConstraint()
    if name == "inflight-minh":
        return InflightMinH()
    if name == "custom":
        if custom is None:
            raise ValueError("constraint 'custom' needs a constraint object or import path")
        if isinstance(custom, ExpansionConstraint):
            return custom
        if isinstance(custom, str):
            return load_constraint(custom)
        if callable(custom):
            return CallableConstraint(custom)
        raise ValueError(f"cannot build a constraint from {custom!r}")
    raise ValueError(f"unknown constraint {name!r}")
