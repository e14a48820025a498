"""
Execution drivers for search workers.

A worker is a generator that yields scheduling operations between atomic
steps:

- ``SYNC`` before every exclusive section;
- ``Busy(seconds)`` for heuristic work;
- ``Wait(version)`` to sleep until shared state changes.

Workers never yield inside a section. :class:`RealDriver` runs one thread per
worker with real locks; :class:`DeterministicDriver` interleaves the same
generators on simulated per-worker clocks, so one implementation serves both.
"""

from __future__ import annotations

import logging
import threading
import time
from abc import ABC, abstractmethod
from contextlib import ExitStack, contextmanager, nullcontext
from dataclasses import dataclass
from typing import ContextManager, Dict, Generator, Iterator, List, Optional, Union

import numpy as np

logger = logging.getLogger(__name__)

#: Canonical acquisition order of the shared sections.
SECTION_ORDER = ("unevaluated", "open", "closed", "registry", "outcome")


class SchedulerDeadlockError(RuntimeError):
    """Every unfinished worker is waiting and nothing can wake them."""


@dataclass(frozen=True)
class Sync:
    pass


@dataclass(frozen=True)
class Busy:
    seconds: float


@dataclass(frozen=True)
class Wait:
    version: int


SYNC = Sync()

Op = Union[Sync, Busy, Wait]
WorkerProgram = Generator[Op, None, None]


def _ordered(names) -> List[str]:
    unknown = set(names) - set(SECTION_ORDER)
    if unknown:
        raise ValueError(f"unknown sections: {', '.join(sorted(unknown))}")
    return [n for n in SECTION_ORDER if n in names]


class Driver(ABC):
    """Scheduling backend shared by every engine."""

    @abstractmethod
    def section(self, *names: str) -> ContextManager[None]:
        """Exclusive access to the named shared structures."""

    @property
    @abstractmethod
    def version(self) -> int:
        """Counter bumped by :meth:`notify`."""

    @abstractmethod
    def notify(self, worker: int) -> None:
        """Signal that shared state changed, waking waiting workers."""

    @abstractmethod
    def now_ns(self, worker: int) -> int:
        """Nanoseconds since the driver started, as seen by ``worker``."""

    @abstractmethod
    def run(self, programs: List[WorkerProgram]) -> None:
        """Run the worker programs to completion."""


class RealDriver(Driver):
    """
    One OS thread per worker.

    ``Busy`` sleeps, which releases the GIL so evaluations overlap; ``Wait``
    blocks on a condition variable. An exception in any worker stops the
    others and is re-raised from :meth:`run`.
    """

    def __init__(self, idle_timeout_s: float = 0.05) -> None:
        self._locks: Dict[str, threading.Lock] = {n: threading.Lock() for n in SECTION_ORDER}
        self._cond = threading.Condition()
        self._version = 0
        self._abort = False
        self._error: Optional[BaseException] = None
        self._idle_timeout_s = idle_timeout_s
        self._start_ns = time.perf_counter_ns()

    @contextmanager
    def _acquire(self, names) -> Iterator[None]:
        with ExitStack() as stack:
            for name in _ordered(names):
                stack.enter_context(self._locks[name])
            yield

    def section(self, *names: str) -> ContextManager[None]:
        return self._acquire(names)

    @property
    def version(self) -> int:
        return self._version

    def notify(self, worker: int) -> None:
        with self._cond:
            self._version += 1
            self._cond.notify_all()

    def now_ns(self, worker: int) -> int:
        return time.perf_counter_ns() - self._start_ns

    def _drive(self, program: WorkerProgram) -> None:
        try:
            for op in program:
                if self._abort:
                    program.close()
                    return
                if isinstance(op, Busy):
                    if op.seconds > 0:
                        time.sleep(op.seconds)
                elif isinstance(op, Wait):
                    with self._cond:
                        self._cond.wait_for(
                            lambda: self._version != op.version or self._abort,
                            timeout=self._idle_timeout_s,
                        )
        except BaseException as exc:
            with self._cond:
                if self._error is None:
                    self._error = exc
                self._abort = True
                self._cond.notify_all()

    def run(self, programs: List[WorkerProgram]) -> None:
        threads = [
            threading.Thread(target=self._drive, args=(p,), name=f"gbfs-worker-{i}", daemon=True)
            for i, p in enumerate(programs)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        if self._error is not None:
            raise self._error


class DeterministicDriver(Driver):
    """
    Seeded cooperative scheduler on simulated clocks.

    Each step resumes the runnable worker with the smallest clock (ties
    broken by a seeded generator) until its next yield. ``Busy`` advances
    that worker's clock; ``SYNC`` costs ``sync_cost_ns``. A waiting worker
    resumes at the notifier's clock.

    Parameters
    ----------
    seed:
        Tie-breaking seed. Equal seeds give identical interleavings.
    sync_cost_ns:
        Simulated cost of entering a section.
    max_steps:
        Safety cap on scheduling steps.
    """

    def __init__(self, seed: int = 0, sync_cost_ns: int = 100, max_steps: Optional[int] = None) -> None:
        self._rng = np.random.default_rng(seed)
        self._sync_cost_ns = int(sync_cost_ns)
        self._max_steps = max_steps
        self._version = 0
        self._clocks: List[int] = []
        self._waiting: Dict[int, int] = {}
        self.steps = 0

    def section(self, *names: str) -> ContextManager[None]:
        _ordered(names)
        return nullcontext()

    @property
    def version(self) -> int:
        return self._version

    def notify(self, worker: int) -> None:
        self._version += 1
        now = self._clocks[worker] if worker < len(self._clocks) else 0
        for w in list(self._waiting):
            self._clocks[w] = max(self._clocks[w], now)
            del self._waiting[w]

    def now_ns(self, worker: int) -> int:
        return self._clocks[worker] if worker < len(self._clocks) else 0

    def run(self, programs: List[WorkerProgram]) -> None:
        n = len(programs)
        self._clocks = [0] * n
        self._waiting = {}
        finished = [False] * n

        while not all(finished):
            runnable = [w for w in range(n) if not finished[w] and w not in self._waiting]
            if not runnable:
                raise SchedulerDeadlockError(f"all {n - sum(finished)} unfinished workers are waiting")
            earliest = min(self._clocks[w] for w in runnable)
            tied = [w for w in runnable if self._clocks[w] == earliest]
            worker = tied[int(self._rng.integers(len(tied)))] if len(tied) > 1 else tied[0]

            self.steps += 1
            if self._max_steps is not None and self.steps > self._max_steps:
                raise RuntimeError(f"deterministic run exceeded {self._max_steps} steps")

            try:
                op = next(programs[worker])
            except StopIteration:
                finished[worker] = True
                continue

            if isinstance(op, Busy):
                self._clocks[worker] += int(round(op.seconds * 1e9))
            elif isinstance(op, Wait):
                if op.version == self._version:
                    self._waiting[worker] = op.version
            else:
                self._clocks[worker] += self._sync_cost_ns


def make_driver(scheduler: str, seed: int = 0) -> Driver:
    if scheduler == "real":
        return RealDriver()
    if scheduler == "deterministic":
        return DeterministicDriver(seed=seed)
    raise ValueError(f"unknown scheduler {scheduler!r}")
