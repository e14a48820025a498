from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple


class EventKind(str, Enum):
    POP_OPEN = "pop-open"
    GENERATE = "generate"
    EVAL_START = "eval-start"
    EVAL_END = "eval-end"
    BATCH_INSERT = "batch-insert"
    DISCARD = "discard"
    POLL_EMPTY = "poll-empty"
    IDLE_START = "idle-start"
    IDLE_END = "idle-end"
    GOAL_FOUND = "goal-found"


@dataclass(frozen=True)
class TraceEvent:
    """
    One search event.

    Attributes
    ----------
    time_ns:
        Nanoseconds since search start (simulated under the deterministic
        scheduler).
    worker:
        Worker id.
    kind:
        Event kind.
    state:
        State the event is about (``-1`` for stateless events).
    parent:
        Parent state for generation, evaluation and insertion events.
    h:
        Heuristic value, when known.
    seq:
        Open insertion sequence number (``pop-open`` and ``batch-insert``).
    """
    time_ns: int
    worker: int
    kind: EventKind
    state: int = -1
    parent: Optional[int] = None
    h: Optional[int] = None
    seq: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"t": self.time_ns, "w": self.worker, "e": self.kind.value, "s": self.state}
        if self.parent is not None:
            out["p"] = self.parent
        if self.h is not None:
            out["h"] = self.h
        if self.seq is not None:
            out["q"] = self.seq
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TraceEvent":
        return cls(
            time_ns=int(data["t"]),
            worker=int(data["w"]),
            kind=EventKind(data["e"]),
            state=int(data.get("s", -1)),
            parent=data.get("p"),
            h=data.get("h"),
            seq=data.get("q"),
        )


class SearchTrace:
    """
    Ordered event log of one search run.

    Events are kept in the order they were recorded; under the real runtime
    that order is consistent with every exclusive section, and per worker
    it is temporally ordered.
    """

    def __init__(self, topology_hash: str, workers: int = 1, label: str = "") -> None:
        self.topology_hash = topology_hash
        self.workers = workers
        self.label = label
        self._events: List[TraceEvent] = []

    def record(
        self,
        time_ns: int,
        worker: int,
        kind: EventKind,
        state: int = -1,
        parent: Optional[int] = None,
        h: Optional[int] = None,
        seq: Optional[int] = None,
    ) -> None:
        self._events.append(TraceEvent(int(time_ns), worker, kind, state, parent, h, seq))

    @property
    def events(self) -> Tuple[TraceEvent, ...]:
        return tuple(self._events)

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self):
        return iter(tuple(self._events))

    def of_kind(self, kind: EventKind) -> List[TraceEvent]:
        return [e for e in self._events if e.kind is kind]

    def count(self, kind: EventKind) -> int:
        return sum(1 for e in self._events if e.kind is kind)

    def h_values(self) -> Dict[int, int]:
        return {e.state: e.h for e in self._events if e.kind is EventKind.EVAL_END}

    def parents(self) -> Dict[int, Optional[int]]:
        return {e.state: e.parent for e in self._events if e.kind is EventKind.BATCH_INSERT}

    def dumps(self) -> str:
        """JSON lines: a header line, then one line per event."""
        header = {"topology": self.topology_hash, "workers": self.workers, "label": self.label}
        lines = [json.dumps(header, sort_keys=True)]
        lines.extend(json.dumps(e.to_dict(), sort_keys=True) for e in self._events)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SearchTrace":
        rows = [line for line in text.splitlines() if line.strip()]
        if not rows:
            raise ValueError("empty trace")
        header = json.loads(rows[0])
        trace = cls(header["topology"], workers=int(header.get("workers", 1)), label=header.get("label", ""))
        trace._events = [TraceEvent.from_dict(json.loads(r)) for r in rows[1:]]
        return trace

    def dump(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(), encoding="utf-8")
        return path

    @classmethod
    def load(cls, path: str | Path) -> "SearchTrace":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def selected_states(trace: SearchTrace) -> List[int]:
    """Every state removed from Open, goals included, in pop order."""
    return [e.state for e in trace.of_kind(EventKind.POP_OPEN)]


def expanded_sequence(trace: SearchTrace) -> List[int]:
    """States removed from Open and expanded (non-goal pops), in pop order."""
    goals = {e.state for e in trace.of_kind(EventKind.GOAL_FOUND)}
    return [s for s in selected_states(trace) if s not in goals]


def _eval_intervals(trace: SearchTrace) -> List[Tuple[int, int]]:
    open_evals: Dict[Tuple[int, int], int] = {}
    intervals = []
    for e in trace:
        if e.kind is EventKind.EVAL_START:
            open_evals[(e.worker, e.state)] = e.time_ns
        elif e.kind is EventKind.EVAL_END:
            start = open_evals.pop((e.worker, e.state), None)
            if start is not None:
                intervals.append((start, e.time_ns))
    return intervals


def peak_concurrent_evaluations(trace: SearchTrace) -> int:
    """
    Largest number of evaluations in progress at one instant.

    Intervals are half open, so an evaluation ending exactly when another
    starts does not overlap it. Zero-length evaluations count as 1.
    """
    intervals = _eval_intervals(trace)
    if not intervals:
        return 0
    points = []
    for start, end in intervals:
        if end > start:
            points.append((start, 1))
            points.append((end, -1))
    peak = 1
    active = 0
    # ends sort before starts at equal times
    for _, delta in sorted(points, key=lambda p: (p[0], p[1])):
        active += delta
        peak = max(peak, active)
    return peak


def idle_seconds(trace: SearchTrace, until_ns: Optional[int] = None) -> Tuple[float, ...]:
    """
    Per-worker idle time, clipped at ``until_ns`` (default: the last event
    time). An interval still open at the end of the trace closes there.
    """
    end_ns = until_ns if until_ns is not None else max((e.time_ns for e in trace), default=0)
    started: Dict[int, int] = {}
    totals = [0] * max(trace.workers, 1)
    for e in trace:
        if e.kind is EventKind.IDLE_START:
            started[e.worker] = e.time_ns
        elif e.kind is EventKind.IDLE_END and e.worker in started:
            start = started.pop(e.worker)
            totals[e.worker] += max(min(e.time_ns, end_ns) - start, 0)
    for worker, start in started.items():
        totals[worker] += max(end_ns - start, 0)
    return tuple(t / 1e9 for t in totals)


def check_closed_uniqueness(trace: SearchTrace) -> List[int]:
    """States with more than one ``eval-start`` event."""
    counts: Dict[int, int] = defaultdict(int)
    for e in trace.of_kind(EventKind.EVAL_START):
        counts[e.state] += 1
    return sorted(s for s, c in counts.items() if c > 1)


def check_batch_atomicity(trace: SearchTrace) -> List[int]:
    """
    Parents whose batch insertion was interleaved with another worker's
    ``pop-open``.
    """
    spans: Dict[Optional[int], Tuple[int, int, int]] = {}
    events = trace.events
    for i, e in enumerate(events):
        if e.kind is EventKind.BATCH_INSERT:
            first, _, worker = spans.get(e.parent, (i, i, e.worker))
            spans[e.parent] = (first, i, worker)

    broken = []
    for parent, (first, last, worker) in spans.items():
        for e in events[first:last + 1]:
            if e.kind is EventKind.POP_OPEN and e.worker != worker:
                broken.append(-1 if parent is None else parent)
                break
    return sorted(broken)


def check_precedence(trace: SearchTrace) -> List[int]:
    """
    Indices of ``pop-open`` events not directly preceded, in the popping
    worker's own event stream, by an empty Unevaluated poll.

    Applies to separate-generation traces.
    """
    last: Dict[int, EventKind] = {}
    bad = []
    for i, e in enumerate(trace.events):
        if e.kind is EventKind.POP_OPEN and last.get(e.worker) is not EventKind.POLL_EMPTY:
            bad.append(i)
        last[e.worker] = e.kind
    return bad


def check_worker_order(trace: SearchTrace) -> List[str]:
    """
    Problems with per-worker ordering: timestamps going backwards, or an
    ``eval-end`` without a matching earlier ``eval-start``.
    """
    problems = []
    last_time: Dict[int, int] = {}
    pending = set()
    for i, e in enumerate(trace.events):
        if e.time_ns < last_time.get(e.worker, 0):
            problems.append(f"event {i}: worker {e.worker} time goes backwards")
        last_time[e.worker] = e.time_ns
        if e.kind is EventKind.EVAL_START:
            pending.add((e.worker, e.state))
        elif e.kind is EventKind.EVAL_END:
            if (e.worker, e.state) not in pending:
                problems.append(f"event {i}: eval-end of {e.state} without eval-start")
            pending.discard((e.worker, e.state))
    return problems

