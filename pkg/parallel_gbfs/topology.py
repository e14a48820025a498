from __future__ import annotations

import hashlib
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np


#: Largest implicit topology that may be expanded into an explicit table.
MATERIALIZE_CAP = 2 ** 20


class TopologyValidationError(ValueError):
    """A topology violates one of the state-space invariants."""


class PathReconstructionError(RuntimeError):
    """Parent links do not lead back from a goal to the initial state."""


class StateSpaceTopology(ABC):
    """
    Successor/heuristic interface shared by explicit and implicit topologies.

    States are dense non-negative integer ids. Successor generation is a pure
    function of (topology, state), so one instance can be shared by any number
    of workers.

    Attributes
    ----------
    initial:
        Id of the initial state.
    num_states:
        Size of the id space.
    """
    initial: int
    num_states: int

    @abstractmethod
    def successors(self, state: int) -> Sequence[int]:
        """Ordered successor ids of ``state`` (empty for goals)."""

    @abstractmethod
    def h(self, state: int) -> int:
        """Heuristic value of ``state``, a non-negative integer."""

    @abstractmethod
    def is_goal(self, state: int) -> bool:
        """True if ``state`` is a goal state."""

    @abstractmethod
    def fingerprint(self) -> str:
        """Stable hex digest identifying this topology."""

    @property
    def explicit(self) -> bool:
        """True when every state is stored in a table and can be enumerated."""
        return False

    def is_transition(self, source: int, target: int) -> bool:
        return target in self.successors(source)


@dataclass(frozen=True)
class ExplicitTopology(StateSpaceTopology):
    """
    Fully tabulated state space topology.

    Attributes
    ----------
    num_states:
        Number of states; ids are ``0 .. num_states - 1``.
    successor_lists:
        Per-state ordered successor ids. The order is part of the contract:
        FIFO tie-breaking depends on generation order.
    initial:
        Initial state id.
    goals:
        Goal state ids.
    h_values:
        Per-state heuristic values.
    """
    num_states: int
    successor_lists: Tuple[Tuple[int, ...], ...]
    initial: int
    goals: frozenset
    h_values: Tuple[int, ...]

    def __post_init__(self) -> None:
        validate_topology(self)

    @classmethod
    def from_edges(
        cls,
        h_values: Iterable[int],
        edges: Iterable[Tuple[int, int]],
        initial: int,
        goals: Iterable[int],
    ) -> "ExplicitTopology":
        """
        Construct a topology from heuristic values and an ordered edge list.

        Parameters
        ----------
        h_values:
            Heuristic value per state; its length fixes the state count.
        edges:
            ``(source, target)`` pairs. Edges sharing a source keep their
            relative order in that source's successor list.
        initial:
            Initial state id.
        goals:
            Goal state ids.

        Returns
        -------
        ExplicitTopology
        """
        h = tuple(int(v) for v in h_values)
        succ: List[List[int]] = [[] for _ in h]
        for source, target in edges:
            if not 0 <= source < len(h):
                raise TopologyValidationError(f"edge source {source} is out of range")
            succ[source].append(int(target))
        return cls(
            num_states=len(h),
            successor_lists=tuple(tuple(s) for s in succ),
            initial=int(initial),
            goals=frozenset(int(g) for g in goals),
            h_values=h,
        )

    @property
    def explicit(self) -> bool:
        return True

    def successors(self, state: int) -> Tuple[int, ...]:
        return self.successor_lists[state]

    def h(self, state: int) -> int:
        return self.h_values[state]

    def is_goal(self, state: int) -> bool:
        return state in self.goals

    @property
    def h_array(self) -> np.ndarray:
        """Heuristic values as an ``int64`` array."""
        return np.asarray(self.h_values, dtype=np.int64)

    def edges(self) -> List[Tuple[int, int]]:
        """All transitions in file order (by source, then successor order)."""
        return [(s, t) for s, succ in enumerate(self.successor_lists) for t in succ]

    def predecessors(self) -> Tuple[Tuple[int, ...], ...]:
        preds: List[List[int]] = [[] for _ in range(self.num_states)]
        for s, t in self.edges():
            preds[t].append(s)
        return tuple(tuple(p) for p in preds)

    def reachable_from(self, state: int) -> frozenset:
        """States reachable from ``state`` (including itself)."""
        seen = {state}
        queue = deque([state])
        while queue:
            s = queue.popleft()
            for t in self.successor_lists[s]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return frozenset(seen)

    @cached_property
    def _digest(self) -> str:
        from .formats.topology_file import dumps_topology

        return hashlib.sha256(dumps_topology(self).encode("utf-8")).hexdigest()

    def fingerprint(self) -> str:
        return self._digest


def validate_topology(topology: ExplicitTopology) -> None:
    """
    Check the state-space invariants, raising on the first violation.

    Raises
    ------
    TopologyValidationError
        With a message naming the violated invariant, e.g.
        ``"goal 7 has nonzero h"``.
    """
    n = topology.num_states
    if n <= 0:
        raise TopologyValidationError("topology must have at least one state")
    if len(topology.successor_lists) != n or len(topology.h_values) != n:
        raise TopologyValidationError("successor and h tables must cover every state")
    if not 0 <= topology.initial < n:
        raise TopologyValidationError(f"initial state {topology.initial} is out of range")
    if not topology.goals:
        raise TopologyValidationError("at least one goal state is required")

    for g in sorted(topology.goals):
        if not 0 <= g < n:
            raise TopologyValidationError(f"goal {g} is out of range")
        if topology.successor_lists[g]:
            raise TopologyValidationError(f"goal {g} has successors")
        if topology.h_values[g] != 0:
            raise TopologyValidationError(f"goal {g} has nonzero h")

    for s, succ in enumerate(topology.successor_lists):
        if topology.h_values[s] < 0:
            raise TopologyValidationError(f"state {s} has negative h")
        if len(set(succ)) != len(succ):
            raise TopologyValidationError(f"state {s} lists a successor twice")
        for t in succ:
            if not 0 <= t < n:
                raise TopologyValidationError(f"successor {t} of state {s} is out of range")
            if t == s:
                raise TopologyValidationError(f"state {s} has a self-loop")


@dataclass(frozen=True)
class SolutionPath:
    """
    A path from the initial state to a goal.

    Attributes
    ----------
    states:
        Ordered state ids, ``states[0]`` the initial state and
        ``states[-1]`` a goal.
    """
    states: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.states)

    def validate(self, topology: StateSpaceTopology) -> None:
        """Raise ``ValueError`` unless this is a solution of ``topology``."""
        if not self.states:
            raise ValueError("solution path is empty")
        if self.states[0] != topology.initial:
            raise ValueError("solution path does not start at the initial state")
        if not topology.is_goal(self.states[-1]):
            raise ValueError("solution path does not end at a goal")
        for a, b in zip(self.states, self.states[1:]):
            if not topology.is_transition(a, b):
                raise ValueError(f"{a} -> {b} is not a transition")


def reconstruct_path(
    parent_links: Mapping[int, Optional[int]],
    goal_state: int,
    initial: Optional[int] = None,
) -> SolutionPath:
    """
    Follow parent links back from ``goal_state`` to the root.

    Parameters
    ----------
    parent_links:
        Map from state to the state it was generated from; the root maps to
        ``None``.
    goal_state:
        State the search terminated on.
    initial:
        Expected root. When given, the walk must end there.

    Returns
    -------
    SolutionPath

    Raises
    ------
    PathReconstructionError
        If a link is missing, the chain cycles, or it ends at the wrong root.
    """
    states = [goal_state]
    current = goal_state
    for _ in range(len(parent_links) + 1):
        if current not in parent_links:
            raise PathReconstructionError(f"state {current} has no parent link")
        parent = parent_links[current]
        if parent is None:
            break
        states.append(parent)
        current = parent
    else:
        raise PathReconstructionError("parent links contain a cycle")

    if initial is not None and states[-1] != initial:
        raise PathReconstructionError(
            f"parent chain ends at {states[-1]}, not the initial state {initial}"
        )
    states.reverse()
    return SolutionPath(states=tuple(states))


def materialize(topology: StateSpaceTopology, cap: int = MATERIALIZE_CAP) -> ExplicitTopology:
    """
    Expand the part of ``topology`` reachable from its initial state into an
    explicit table.

    States are renumbered in breadth-first order, so the initial state
    becomes 0. Successor order is preserved.

    Raises
    ------
    ValueError
        If more than ``cap`` states are reachable.
    """
    if isinstance(topology, ExplicitTopology):
        return topology

    ids: Dict[int, int] = {topology.initial: 0}
    order = [topology.initial]
    queue = deque([topology.initial])
    while queue:
        s = queue.popleft()
        for t in topology.successors(s):
            if t not in ids:
                if len(ids) >= cap:
                    raise ValueError(f"more than {cap} reachable states; refusing to materialize")
                ids[t] = len(order)
                order.append(t)
                queue.append(t)

    return ExplicitTopology(
        num_states=len(order),
        successor_lists=tuple(tuple(ids[t] for t in topology.successors(s)) for s in order),
        initial=0,
        goals=frozenset(ids[s] for s in order if topology.is_goal(s)),
        h_values=tuple(int(topology.h(s)) for s in order),
    )
