from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from parallel_gbfs.topology import MATERIALIZE_CAP, StateSpaceTopology


class OracleCapError(ValueError):
    """The topology is larger than the oracle is allowed to handle."""


@dataclass(frozen=True)
class OracleConfig:
    """
    Size limits for the offline oracles.

    Attributes
    ----------
    max_states:
        Largest reachable state count accepted by the enumeration oracle.
    budget:
        Largest number of search configurations the enumeration oracle may
        visit before giving up.
    implicit_cap:
        Largest state count accepted by the structural (high-water mark)
        oracle, and the limit for exploring implicit topologies.
    """
    max_states: int = 30
    budget: int = 10 ** 7
    implicit_cap: int = MATERIALIZE_CAP

    def __post_init__(self) -> None:
        if self.max_states <= 0 or self.budget <= 0 or self.implicit_cap <= 0:
            raise ValueError("oracle limits must be positive")


@dataclass(frozen=True)
class LocalGraph:
    """
    Dense re-indexing of (part of) a topology for the oracles.

    ``ids[i]`` is the topology id of local state ``i``.
    """
    ids: Tuple[int, ...]
    index: Dict[int, int]
    succ: Tuple[Tuple[int, ...], ...]
    h: np.ndarray
    goal: np.ndarray
    init: int

    @property
    def size(self) -> int:
        return len(self.ids)

    def predecessors(self) -> Tuple[Tuple[int, ...], ...]:
        preds = [[] for _ in range(self.size)]
        for s, targets in enumerate(self.succ):
            for t in targets:
                preds[t].append(s)
        return tuple(tuple(p) for p in preds)

    @classmethod
    def build(cls, topology: StateSpaceTopology, cap: int, reachable_only: bool) -> "LocalGraph":
        """
        Collect states, successors and heuristic values.

        Explicit topologies are taken whole unless ``reachable_only``;
        implicit ones are always explored from the initial state.

        Raises
        ------
        OracleCapError
            When more than ``cap`` states would be collected.
        """
        if topology.explicit and not reachable_only:
            if topology.num_states > cap:
                raise OracleCapError(f"topology has {topology.num_states} states, oracle cap is {cap}")
            ids = list(range(topology.num_states))
        else:
            ids = [topology.initial]
            seen = {topology.initial}
            queue = deque([topology.initial])
            while queue:
                s = queue.popleft()
                for t in topology.successors(s):
                    if t not in seen:
                        if len(ids) >= cap:
                            raise OracleCapError(f"more than {cap} reachable states, oracle cap is {cap}")
                        seen.add(t)
                        ids.append(t)
                        queue.append(t)

        index = {s: i for i, s in enumerate(ids)}
        succ = tuple(tuple(index[t] for t in topology.successors(s)) for s in ids)
        h = np.fromiter((topology.h(s) for s in ids), dtype=np.int64, count=len(ids))
        goal = np.fromiter((topology.is_goal(s) for s in ids), dtype=bool, count=len(ids))
        return cls(ids=tuple(ids), index=index, succ=succ, h=h, goal=goal, init=index[topology.initial])
