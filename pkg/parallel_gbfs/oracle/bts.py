from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional

import numpy as np

from parallel_gbfs.topology import StateSpaceTopology

from .graph import LocalGraph, OracleConfig
from .hwm import hwm_values

logger = logging.getLogger(__name__)


class OracleInconclusive(RuntimeError):
    """The enumeration oracle ran out of its configuration budget."""

    def __init__(self, configurations: int, budget: int) -> None:
        super().__init__(f"oracle inconclusive: visited {configurations} configurations, budget {budget}")
        self.configurations = configurations
        self.budget = budget


@dataclass(frozen=True)
class BtsSet:
    """
    States GBFS can select under some tie-breaking policy.

    Attributes
    ----------
    members:
        Member state ids (goals included when selectable).
    topology_hash:
        Fingerprint of the topology the set was computed for.
    method:
        ``"enum"`` or ``"hwm"``.
    stats:
        Method-specific counters, e.g. visited configurations.
    """
    members: FrozenSet[int]
    topology_hash: str
    method: str
    stats: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __contains__(self, state: int) -> bool:
        return state in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> List[int]:
        return sorted(self.members)

    def to_json(self) -> Dict[str, Any]:
        return {
            "members": self.sorted_members(),
            "fingerprint": self.topology_hash,
            "method": self.method,
            "stats": dict(self.stats),
        }


def bts_enumerate(topology: StateSpaceTopology, config: Optional[OracleConfig] = None) -> BtsSet:
    """
    Exact BTS by exhaustive nondeterministic GBFS.

    Every search configuration branches on each minimum-h Open state. A
    configuration is identified by its set of selected states: the generated
    set is the initial state plus their successors, so Open follows from it.
    Selecting a goal ends that branch.

    Parameters
    ----------
    topology:
        Topology with at most ``config.max_states`` reachable states.
    config:
        Caps and budget; defaults to :class:`OracleConfig`.

    Returns
    -------
    BtsSet

    Raises
    ------
    OracleCapError
        When the reachable part exceeds ``config.max_states``.
    OracleInconclusive
        When more than ``config.budget`` configurations would be visited.
    """
    config = config or OracleConfig()
    graph = LocalGraph.build(topology, cap=config.max_states, reachable_only=True)
    h = [int(v) for v in graph.h]
    goal = [bool(v) for v in graph.goal]
    succ_mask = [sum(1 << t for t in targets) for targets in graph.succ]

    members = 0
    seen = set()
    stack = [(0, 1 << graph.init)]
    while stack:
        selected, generated = stack.pop()
        if selected in seen:
            continue
        seen.add(selected)
        if len(seen) > config.budget:
            raise OracleInconclusive(len(seen), config.budget)

        open_mask = generated & ~selected
        if not open_mask:
            continue

        best = math.inf
        candidates: List[int] = []
        m = open_mask
        while m:
            low = m & -m
            s = low.bit_length() - 1
            m ^= low
            if h[s] < best:
                best = h[s]
                candidates = [s]
            elif h[s] == best:
                candidates.append(s)

        for s in candidates:
            members |= 1 << s
            if goal[s]:
                continue
            nxt = selected | (1 << s)
            if nxt not in seen:
                stack.append((nxt, generated | succ_mask[s]))

    local = [i for i in range(graph.size) if members >> i & 1]
    logger.debug("bts_enumerate: %d members after %d configurations", len(local), len(seen))
    return BtsSet(
        members=frozenset(graph.ids[i] for i in local),
        topology_hash=topology.fingerprint(),
        method="enum",
        stats={"configurations": len(seen), "budget": config.budget, "states": graph.size},
    )


def bts_via_hwm(topology: StateSpaceTopology, config: Optional[OracleConfig] = None) -> BtsSet:
    """
    BTS from the bench structure.

    A progress state has a larger high-water mark than the best of its
    successors (goals and dead ends are not progress states). Starting from
    the bench of the initial state, each bench at ``s`` has level
    ``min hwm(succ(s))``; its inner states are reached from ``s`` through
    non-progress states with ``h <= level``, and its exits are progress
    successors of ``s`` or of inner states with ``h == level``. Every exit
    opens a new bench. The BTS is the union of all bench states.

    Raises
    ------
    OracleCapError
        When the reachable part exceeds ``config.implicit_cap``.
    """
    config = config or OracleConfig()
    graph = LocalGraph.build(topology, cap=config.implicit_cap, reachable_only=True)
    hwm = hwm_values(graph)
    h = graph.h

    def succ_hwm(s: int) -> float:
        return min((float(hwm[t]) for t in graph.succ[s]), default=math.inf)

    progress = np.array([hwm[s] > succ_hwm(s) for s in range(graph.size)], dtype=bool)

    members = {graph.init}
    benches = 0
    opened = {graph.init}
    queue = deque([graph.init])
    while queue:
        root = queue.popleft()
        benches += 1
        level = succ_hwm(root)
        inner = set()
        exits = set()
        frontier = deque([root])
        while frontier:
            s = frontier.popleft()
            for t in graph.succ[s]:
                if t == root:
                    continue
                if progress[t]:
                    if h[t] == level:
                        exits.add(t)
                elif h[t] <= level and t not in inner:
                    inner.add(t)
                    frontier.append(t)

        members |= inner
        members |= exits
        for e in sorted(exits):
            if not graph.goal[e] and e not in opened:
                opened.add(e)
                queue.append(e)

    logger.debug("bts_via_hwm: %d members over %d benches", len(members), benches)
    return BtsSet(
        members=frozenset(graph.ids[i] for i in members),
        topology_hash=topology.fingerprint(),
        method="hwm",
        stats={"benches": benches, "states": graph.size},
    )
