from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from parallel_gbfs.topology import SolutionPath

from .config import EngineConfig
from .trace import (
    EventKind,
    SearchTrace,
    expanded_sequence,
    idle_seconds,
    peak_concurrent_evaluations,
)


STATUSES = ("solved", "unsolvable", "time", "memory")


@dataclass(frozen=True)
class SearchResult:
    """
    Outcome and metrics of one engine run.

    Attributes
    ----------
    status:
        ``"solved"``, ``"unsolvable"``, ``"time"`` or ``"memory"``.
    path:
        Solution path when solved.
    trace:
        Full event log (partial when a limit was hit).
    config:
        Configuration the run used.
    expansions:
        Non-goal states removed from Open.
    evaluations:
        Heuristic evaluations, the initial state included.
    wasted_evaluations:
        Evaluated states that never entered Open.
    wall_seconds:
        Time from search start until the outcome was decided.
    peak_open:
        Largest Open size.
    idle_seconds:
        Per-worker idle time up to the decision.
    peak_concurrent_evaluations:
        Largest number of simultaneous evaluations.
    """
    status: str
    path: Optional[SolutionPath]
    trace: SearchTrace
    config: EngineConfig
    expansions: int
    evaluations: int
    wasted_evaluations: int
    wall_seconds: float
    peak_open: int
    idle_seconds: Tuple[float, ...]
    peak_concurrent_evaluations: int

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == "solved") != (self.path is not None):
            raise ValueError("a path is required exactly when the run is solved")

    @classmethod
    def from_trace(
        cls,
        status: str,
        path: Optional[SolutionPath],
        trace: SearchTrace,
        config: EngineConfig,
        decided_ns: int,
        peak_open: int,
    ) -> "SearchResult":
        """Derive every metric from the trace."""
        evaluated = {e.state for e in trace.of_kind(EventKind.EVAL_END)}
        inserted = {e.state for e in trace.of_kind(EventKind.BATCH_INSERT)}
        return cls(
            status=status,
            path=path,
            trace=trace,
            config=config,
            expansions=len(expanded_sequence(trace)),
            evaluations=trace.count(EventKind.EVAL_END),
            wasted_evaluations=len(evaluated - inserted),
            wall_seconds=decided_ns / 1e9,
            peak_open=peak_open,
            idle_seconds=idle_seconds(trace, until_ns=decided_ns),
            peak_concurrent_evaluations=peak_concurrent_evaluations(trace),
        )

    @property
    def solved(self) -> bool:
        return self.status == "solved"

    @property
    def fail_cause(self) -> str:
        return "" if self.solved else self.status

    @property
    def evaluation_rate(self) -> float:
        return self.evaluations / self.wall_seconds if self.wall_seconds > 0 else 0.0

    def to_json(self) -> Dict[str, Any]:
        return {
            "solved": self.solved,
            "status": self.status,
            "engine": self.config.label,
            "workers": self.config.workers,
            "path": list(self.path.states) if self.path is not None else None,
            "expansions": self.expansions,
            "evaluations": self.evaluations,
            "wasted_evaluations": self.wasted_evaluations,
            "wall_seconds": self.wall_seconds,
            "evaluation_rate": self.evaluation_rate,
            "peak_open": self.peak_open,
            "peak_concurrent_evaluations": self.peak_concurrent_evaluations,
            "idle_seconds": list(self.idle_seconds),
        }
