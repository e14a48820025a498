from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional

import numpy as np

from parallel_gbfs.topology import StateSpaceTopology

from .graph import LocalGraph, OracleConfig


@dataclass(frozen=True, eq=False)
class HwmTable:
    """
    High-water marks of a topology.

    ``hwm(s)`` is the smallest achievable maximum h along a path from ``s``
    to a goal, or ``inf`` when no goal is reachable from ``s``.

    Attributes
    ----------
    state_ids:
        Topology ids covered by the table.
    values:
        ``float64`` high-water marks aligned with ``state_ids``.
    """
    state_ids: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.state_ids.shape != self.values.shape:
            raise ValueError("state_ids and values must have the same shape")

    def __getitem__(self, state: int) -> float:
        return float(self.values[self._positions[state]])

    def __len__(self) -> int:
        return int(self.state_ids.size)

    def __contains__(self, state: int) -> bool:
        return state in self._positions

    @cached_property
    def _positions(self) -> Dict[int, int]:
        return {int(s): i for i, s in enumerate(self.state_ids)}

    def as_dict(self) -> Dict[int, float]:
        return {int(s): float(v) for s, v in zip(self.state_ids, self.values)}


def hwm_values(graph: LocalGraph) -> np.ndarray:
    """
    High-water marks over a local graph, indexed by local state.

    A bottleneck shortest-path sweep backward from the goals: the cost of
    reaching a goal through ``s`` is ``max(h(s), hwm(successor))``.
    """
    hwm = np.full(graph.size, math.inf)
    preds = graph.predecessors()
    heap = []
    for g in np.flatnonzero(graph.goal):
        hwm[g] = float(graph.h[g])
        heap.append((hwm[g], int(g)))
    heapq.heapify(heap)

    while heap:
        value, s = heapq.heappop(heap)
        if value > hwm[s]:
            continue
        for p in preds[s]:
            candidate = max(float(graph.h[p]), value)
            if candidate < hwm[p]:
                hwm[p] = candidate
                heapq.heappush(heap, (candidate, p))
    return hwm


def high_water_marks(topology: StateSpaceTopology, config: Optional[OracleConfig] = None) -> HwmTable:
    """
    Compute the high-water mark of every state.

    Explicit topologies get a value for every state; implicit ones for the
    states reachable from the initial state.

    Raises
    ------
    OracleCapError
        When the topology exceeds ``config.implicit_cap`` states.
    """
    config = config or OracleConfig()
    graph = LocalGraph.build(topology, cap=config.implicit_cap, reachable_only=not topology.explicit)
    return HwmTable(state_ids=np.asarray(graph.ids, dtype=np.int64), values=hwm_values(graph))

