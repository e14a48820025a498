from __future__ import annotations

import logging
from typing import List, Optional, Tuple

from parallel_gbfs.topology import StateSpaceTopology, reconstruct_path

from .config import EngineConfig
from .constraints import ExpansionConstraint, make_constraint
from .result import SearchResult
from .runtime import SYNC, Busy, Driver, Wait, WorkerProgram, make_driver
from .sequential import gbfs_sequential
from .structures import (
    ClosedSet,
    EvaluationTable,
    InFlightExpansion,
    InFlightRegistry,
    OpenEntry,
    OpenList,
    SiblingGroup,
    UnevaluatedQueue,
)
from .trace import EventKind, SearchTrace

logger = logging.getLogger(__name__)


class SharedSearch:
    """
    Shared structures and worker programs of the parallel engines.

    Open, Closed, the Unevaluated queue, the evaluation table and the
    in-flight registry are only touched inside ``driver.section(...)``.
    ``topology_hash`` defaults to ``topology.fingerprint()``; pass it in to
    keep hashing out of the timed region.
    """

    def __init__(
        self,
        topology: StateSpaceTopology,
        config: EngineConfig,
        driver: Driver,
        constraint: Optional[ExpansionConstraint] = None,
        topology_hash: Optional[str] = None,
    ) -> None:
        self.topology = topology
        self.config = config
        self.driver = driver
        self.constraint = constraint or make_constraint(config.constraint, config.custom_constraint)
        self.trace = SearchTrace(
            topology_hash or topology.fingerprint(), workers=config.workers, label=config.label
        )
        self.open = OpenList()
        self.closed = ClosedSet()
        self.registry = InFlightRegistry()
        self.unevaluated = UnevaluatedQueue()
        self.evaluated = EvaluationTable()
        self.deadline_ns = int(config.time_limit_s * 1e9)
        self.state_budget = config.memory_budget_states

        self.done = False
        self.status = "unsolvable"
        self.goal: Optional[int] = None
        self.decided_ns = 0

    # -- bookkeeping -------------------------------------------------------

    def record(self, worker: int, kind: EventKind, state: int = -1, **fields) -> None:
        self.trace.record(self.driver.now_ns(worker), worker, kind, state, **fields)

    def seed_initial(self) -> None:
        """Evaluate and insert the initial state before any worker starts."""
        root = self.topology.initial
        h_root = int(self.topology.h(root))
        self.trace.record(0, 0, EventKind.EVAL_START, root)
        self.trace.record(0, 0, EventKind.EVAL_END, root, h=h_root)
        self.closed.add(root, None)
        self.evaluated.claim(root)
        self.evaluated.store(root, h_root)
        seq = self.open.push(root, h_root)
        self.trace.record(0, 0, EventKind.BATCH_INSERT, root, h=h_root, seq=seq)

    def finish(self, worker: int, status: str, goal: Optional[int] = None) -> None:
        with self.driver.section("outcome"):
            if self.done:
                return
            self.done = True
            self.status = status
            self.goal = goal
            self.decided_ns = self.driver.now_ns(worker)
        logger.debug("worker %d decided the search: %s", worker, status)
        self.driver.notify(worker)

    def out_of_time(self, worker: int) -> bool:
        if self.driver.now_ns(worker) >= self.deadline_ns:
            self.finish(worker, "time")
            return True
        return False

    def over_budget(self, worker: int) -> bool:
        if len(self.closed) > self.state_budget:
            self.finish(worker, "memory")
            return True
        return False

    # -- shared steps ------------------------------------------------------

    def select(self, worker: int) -> Tuple[Optional[OpenEntry], Optional[InFlightExpansion]]:
        """
        Pop the top of Open if the constraint allows it. Caller holds the
        ``open`` and ``registry`` sections.
        """
        if self.done or self.out_of_time(worker):
            return None, None
        if not self.open:
            # every queued or claimed evaluation belongs to an in-flight expansion
            if not self.registry:
                self.finish(worker, "unsolvable")
            return None, None
        top = self.open.top()
        if self.registry and not self.constraint.satisfies(top, self.registry):
            return None, None

        entry = self.open.pop()
        self.record(worker, EventKind.POP_OPEN, entry.state, parent=entry.parent, h=entry.h, seq=entry.seq)
        if self.topology.is_goal(entry.state):
            self.record(worker, EventKind.GOAL_FOUND, entry.state)
            self.finish(worker, "solved", entry.state)
            return None, None
        self.constraint.on_expansion_start(entry.state)
        return entry, self.registry.start(entry.state, entry.h)

    def evaluate(self, worker: int, state: int, parent: int):
        self.record(worker, EventKind.EVAL_START, state, parent=parent)
        if self.config.heuristic_delay_s > 0:
            yield Busy(self.config.heuristic_delay_s)
        h = int(self.topology.h(state))
        self.record(worker, EventKind.EVAL_END, state, parent=parent, h=h)
        return h

    def acquire(self, worker: int):
        """
        Try to take an expansion from Open; idles until shared state changes
        when nothing may be expanded. Returns the selection or ``(None, None)``.
        """
        yield SYNC
        with self.driver.section("open", "registry"):
            entry, expansion = self.select(worker)
            version = self.driver.version
        if entry is None and not self.done:
            self.record(worker, EventKind.IDLE_START)
            yield Wait(version)
            self.record(worker, EventKind.IDLE_END)
        return entry, expansion

    def complete_expansion(self, worker: int, state: int) -> None:
        """Caller holds the ``registry`` section."""
        self.registry.finish(state)
        self.constraint.on_expansion_finish(state)

    # -- eager evaluation (generation and evaluation in the expanding worker) --

    def eager_worker(self, worker: int) -> WorkerProgram:
        while not self.done:
            entry, expansion = yield from self.acquire(worker)
            if entry is None:
                continue
            state = entry.state
            admitted: List[Tuple[int, int]] = []
            for succ in self.topology.successors(state):
                if self.done or self.out_of_time(worker):
                    return
                self.record(worker, EventKind.GENERATE, succ, parent=state)
                yield SYNC
                with self.driver.section("closed", "registry"):
                    fresh = self.closed.add(succ, state)
                    if fresh:
                        expansion.members[succ] = None
                if not fresh:
                    continue
                if self.over_budget(worker):
                    return
                h = yield from self.evaluate(worker, succ, state)
                with self.driver.section("registry"):
                    expansion.members[succ] = h
                admitted.append((succ, h))

            with self.driver.section("registry"):
                expansion.generation_complete = True
            yield SYNC
            with self.driver.section("open", "registry"):
                for succ, h in admitted:
                    seq = self.open.push(succ, h, state)
                    self.record(worker, EventKind.BATCH_INSERT, succ, parent=state, h=h, seq=seq)
                self.complete_expansion(worker, state)
            self.driver.notify(worker)

    # -- separate generation and evaluation --------------------------------

    def sge_worker(self, worker: int) -> WorkerProgram:
        while not self.done:
            yield SYNC
            if self.out_of_time(worker):
                return
            cached = None
            claimed = False
            with self.driver.section("unevaluated"):
                item = self.unevaluated.pop()
                if item is None:
                    self.record(worker, EventKind.POLL_EMPTY)
                else:
                    cached = self.evaluated.lookup(item.state)
                    if cached is None:
                        claimed = self.evaluated.claim(item.state)
                        if not claimed:
                            self.evaluated.wait(item.state, item.group)

            if item is not None:
                if cached is not None:
                    yield from self.resolve(worker, item.state, cached, [item.group])
                elif claimed:
                    h = yield from self.evaluate(worker, item.state, item.parent)
                    yield SYNC
                    with self.driver.section("unevaluated"):
                        groups = [item.group] + self.evaluated.store(item.state, h)
                    yield from self.resolve(worker, item.state, h, groups)
                continue

            entry, expansion = yield from self.acquire(worker)
            if entry is None:
                continue
            state = entry.state
            successors = list(self.topology.successors(state))
            for succ in successors:
                self.record(worker, EventKind.GENERATE, succ, parent=state)
            yield SYNC
            if successors:
                group = SiblingGroup(parent=state, members=successors)
                with self.driver.section("unevaluated", "registry"):
                    expansion.members.update((succ, None) for succ in successors)
                    expansion.generation_complete = True
                    self.unevaluated.push_group(group)
            else:
                with self.driver.section("open", "registry"):
                    expansion.generation_complete = True
                    self.complete_expansion(worker, state)
            self.driver.notify(worker)

    def resolve(self, worker: int, state: int, h: int, groups: List[SiblingGroup]):
        """Give ``state`` its h in each group; batch-insert groups that complete."""
        ready = []
        with self.driver.section("registry"):
            for group in groups:
                expansion = self.registry.get(group.parent)
                if expansion is not None:
                    expansion.members[state] = h
                if group.resolve(state, h):
                    ready.append(group)

        for group in ready:
            yield SYNC
            with self.driver.section("open", "closed", "registry"):
                for succ in group.members:
                    h_succ = group.h_values[succ]
                    if self.closed.add(succ, group.parent):
                        seq = self.open.push(succ, h_succ, group.parent)
                        self.record(worker, EventKind.BATCH_INSERT, succ, parent=group.parent, h=h_succ, seq=seq)
                    else:
                        self.record(worker, EventKind.DISCARD, succ, parent=group.parent, h=h_succ)
                self.complete_expansion(worker, group.parent)
            if self.over_budget(worker):
                return
        self.driver.notify(worker)

    # -- results -----------------------------------------------------------

    def result(self) -> SearchResult:
        path = None
        if self.status == "solved":
            path = reconstruct_path(self.closed.parents, self.goal, self.topology.initial)
        return SearchResult.from_trace(
            status=self.status,
            path=path,
            trace=self.trace,
            config=self.config,
            decided_ns=self.decided_ns,
            peak_open=self.open.peak,
        )


def _run_parallel(
    topology: StateSpaceTopology,
    config: EngineConfig,
    constraint: Optional[ExpansionConstraint] = None,
) -> SearchResult:
    # hashing a large topology must not count as search time
    topology_hash = topology.fingerprint()
    driver = make_driver(config.scheduler, config.sched_seed)
    search = SharedSearch(topology, config, driver, constraint=constraint, topology_hash=topology_hash)
    logger.info(
        "%s starting with %d workers (%s scheduler)", config.label, config.workers, config.scheduler
    )
    search.seed_initial()
    worker = search.sge_worker if config.sge else search.eager_worker
    driver.run([worker(w) for w in range(config.workers)])
    if not search.done:
        raise RuntimeError("workers stopped before the search was decided")
    result = search.result()
    logger.info(
        "%s finished: %s after %d expansions, %d evaluations (%d wasted), %.6fs",
        config.label, result.status, result.expansions, result.evaluations,
        result.wasted_evaluations, result.wall_seconds,
    )
    return result


def cpgbfs_run(
    topology: StateSpaceTopology,
    config: EngineConfig,
    constraint: Optional[ExpansionConstraint] = None,
) -> SearchResult:
    """
    Constrained parallel GBFS with eager evaluation.

    ``config.workers`` workers share Open, Closed and the in-flight registry.
    A worker pops the top of Open when the constraint allows it, goal-tests
    it, generates its successors, admits each through Closed and evaluates
    it, and finally inserts all admitted successors into Open in one
    exclusive section. The first goal popped ends the search.

    Parameters
    ----------
    topology:
        Search space, shared read-only by all workers.
    config:
        Engine configuration with ``sge=False``.
    constraint:
        Overrides the constraint named in ``config``.

    Returns
    -------
    SearchResult
    """
    if config.sge:
        raise ValueError("cpgbfs_run needs sge=False; use cpgbfs_sge_run")
    return _run_parallel(topology, config, constraint)


def cpgbfs_sge_run(
    topology: StateSpaceTopology,
    config: EngineConfig,
    constraint: Optional[ExpansionConstraint] = None,
) -> SearchResult:
    """
    Constrained parallel GBFS with separate generation and evaluation.

    Workers first poll the Unevaluated queue and evaluate what they find;
    the worker completing a sibling group checks its members against Closed
    and inserts the survivors into Open together. Only when the queue is
    empty does a worker pop from Open, and an expansion then just generates
    the successors and queues them as one group. A state is evaluated at
    most once: concurrent requests for the same state wait on the first.

    Parameters
    ----------
    topology:
        Search space.
    config:
        Engine configuration with ``sge=True``.
    constraint:
        Overrides the constraint named in ``config``.

    Returns
    -------
    SearchResult
    """
    if not config.sge:
        raise ValueError("cpgbfs_sge_run needs sge=True; use cpgbfs_run")
    return _run_parallel(topology, config, constraint)


def run_engine(topology: StateSpaceTopology, config: EngineConfig) -> SearchResult:
    """Dispatch to the engine named by ``config``."""
    if config.algorithm == "gbfs":
        return gbfs_sequential(topology, config)
    if config.sge:
        return cpgbfs_sge_run(topology, config)
    return cpgbfs_run(topology, config)


def deterministic_run(topology: StateSpaceTopology, config: EngineConfig, seed: Optional[int] = None) -> SearchResult:
    """
    Run any engine under the deterministic scheduler.

    Identical ``(topology, config, seed)`` give identical traces.
    """
    seed = config.sched_seed if seed is None else seed
    return run_engine(topology, config.with_updates(scheduler="deterministic", sched_seed=seed))
