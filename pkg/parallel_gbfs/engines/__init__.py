from .config import ALGORITHMS, BYTES_PER_STATE, CONSTRAINTS, SCHEDULERS, EngineConfig, engine_label
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
from .constraints import (
    CallableConstraint,
    ExpansionConstraint,
    InflightMinH,
    NoConstraint,
    load_constraint,
    make_constraint,
)
from .trace import (
    EventKind,
    SearchTrace,
    TraceEvent,
    check_batch_atomicity,
    check_closed_uniqueness,
    check_precedence,
    check_worker_order,
    expanded_sequence,
    idle_seconds,
    peak_concurrent_evaluations,
    selected_states,
)
from .runtime import DeterministicDriver, Driver, RealDriver, SchedulerDeadlockError, make_driver
from .result import SearchResult
from .sequential import gbfs_sequential
from .cpgbfs import SharedSearch, cpgbfs_run, cpgbfs_sge_run, deterministic_run, run_engine

__all__ = [
    "ALGORITHMS",
    "BYTES_PER_STATE",
    "CONSTRAINTS",
    "SCHEDULERS",
    "EngineConfig",
    "engine_label",
    "ClosedSet",
    "EvaluationTable",
    "InFlightExpansion",
    "InFlightRegistry",
    "OpenEntry",
    "OpenList",
    "SiblingGroup",
    "UnevaluatedQueue",
    "CallableConstraint",
    "ExpansionConstraint",
    "InflightMinH",
    "NoConstraint",
    "load_constraint",
    "make_constraint",
    "EventKind",
    "SearchTrace",
    "TraceEvent",
    "check_batch_atomicity",
    "check_closed_uniqueness",
    "check_precedence",
    "check_worker_order",
    "expanded_sequence",
    "idle_seconds",
    "peak_concurrent_evaluations",
    "selected_states",
    "DeterministicDriver",
    "Driver",
    "RealDriver",
    "SchedulerDeadlockError",
    "make_driver",
    "SearchResult",
    "gbfs_sequential",
    "SharedSearch",
    "cpgbfs_run",
    "cpgbfs_sge_run",
    "deterministic_run",
    "run_engine",
]
