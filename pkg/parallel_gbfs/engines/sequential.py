from __future__ import annotations

import logging
from typing import Optional

from parallel_gbfs.topology import StateSpaceTopology, reconstruct_path

from .config import EngineConfig
from .result import SearchResult
from .runtime import SYNC, Busy, make_driver
from .structures import ClosedSet, OpenList
from .trace import EventKind, SearchTrace

logger = logging.getLogger(__name__)


def gbfs_sequential(topology: StateSpaceTopology, config: Optional[EngineConfig] = None) -> SearchResult:
    """
    Reference greedy best-first search.

    Expands states in strict ``(h, insertion order)`` order: duplicates are
    dropped at generation, each admitted successor is evaluated, and all of
    them enter Open together after the expansion. The first goal removed from
    Open ends the search.

    Parameters
    ----------
    topology:
        Search space.
    config:
        Limits, heuristic delay and scheduler; the algorithm field is ignored.
        Defaults to ``EngineConfig(algorithm="gbfs")``.

    Returns
    -------
    SearchResult
    """
    config = (config or EngineConfig(algorithm="gbfs")).with_updates(algorithm="gbfs")
    trace = SearchTrace(topology.fingerprint(), workers=1, label=config.label)
    driver = make_driver(config.scheduler, config.sched_seed)
    open_list = OpenList()
    closed = ClosedSet()
    deadline_ns = int(config.time_limit_s * 1e9)
    budget = config.memory_budget_states
    outcome = {"status": "unsolvable", "goal": None, "decided_ns": 0}

    def record(kind: EventKind, state: int = -1, **fields) -> None:
        trace.record(driver.now_ns(0), 0, kind, state, **fields)

    def decide(status: str, goal: Optional[int] = None) -> None:
        outcome.update(status=status, goal=goal, decided_ns=driver.now_ns(0))

    def program():
        root = topology.initial
        h_root = int(topology.h(root))
        record(EventKind.EVAL_START, root)
        record(EventKind.EVAL_END, root, h=h_root)
        closed.add(root, None)
        record(EventKind.BATCH_INSERT, root, h=h_root, seq=open_list.push(root, h_root))

        while True:
            yield SYNC
            if driver.now_ns(0) >= deadline_ns:
                decide("time")
                return
            if not open_list:
                decide("unsolvable")
                return
            entry = open_list.pop()
            record(EventKind.POP_OPEN, entry.state, parent=entry.parent, h=entry.h, seq=entry.seq)
            if topology.is_goal(entry.state):
                record(EventKind.GOAL_FOUND, entry.state)
                decide("solved", entry.state)
                return

            admitted = []
            for succ in topology.successors(entry.state):
                record(EventKind.GENERATE, succ, parent=entry.state)
                if not closed.add(succ, entry.state):
                    continue
                if len(closed) > budget:
                    decide("memory")
                    return
                record(EventKind.EVAL_START, succ, parent=entry.state)
                if config.heuristic_delay_s > 0:
                    yield Busy(config.heuristic_delay_s)
                h = int(topology.h(succ))
                record(EventKind.EVAL_END, succ, parent=entry.state, h=h)
                admitted.append((succ, h))

            yield SYNC
            for succ, h in admitted:
                seq = open_list.push(succ, h, entry.state)
                record(EventKind.BATCH_INSERT, succ, parent=entry.state, h=h, seq=seq)

    driver.run([program()])

    path = None
    if outcome["status"] == "solved":
        path = reconstruct_path(closed.parents, outcome["goal"], topology.initial)
    result = SearchResult.from_trace(
        status=outcome["status"],
        path=path,
        trace=trace,
        config=config,
        decided_ns=outcome["decided_ns"],
        peak_open=open_list.peak,
    )
    logger.info(
        "GBFS finished: %s after %d expansions, %d evaluations, %.6fs",
        result.status, result.expansions, result.evaluations, result.wall_seconds,
    )
    return result
