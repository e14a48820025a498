from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Mapping, Optional


ALGORITHMS = ("gbfs", "kpgbfs", "cpgbfs")
CONSTRAINTS = ("none", "inflight-minh", "custom")
SCHEDULERS = ("real", "deterministic")

#: Estimated memory footprint of one generated state (Open entry, Closed
#: entry, parent link, evaluation-table slot).
BYTES_PER_STATE = 256


@dataclass(frozen=True)
class EngineConfig:
    """
    Engine selection and run limits.

    Attributes
    ----------
    algorithm:
        ``"gbfs"`` (sequential), ``"kpgbfs"`` or ``"cpgbfs"``. ``kpgbfs`` is
        ``cpgbfs`` with constraint ``"none"`` and is normalized to it.
    constraint:
        ``"none"``, ``"inflight-minh"`` or ``"custom"``.
    sge:
        Separate generation and evaluation.
    workers:
        Number of workers ``k >= 1``; forced to 1 for ``gbfs``.
    time_limit_s:
        Search time limit in seconds.
    memory_limit_mb:
        Memory limit, enforced as a budget of generated states.
    heuristic_delay_s:
        Simulated busy work per heuristic evaluation.
    scheduler:
        ``"real"`` (one thread per worker) or ``"deterministic"``.
    sched_seed:
        Seed of the deterministic scheduler's tie-breaking.
    custom_constraint:
        Constraint object, predicate or ``"module:attribute"`` string used
        when ``constraint == "custom"``.
    """
    algorithm: str = "cpgbfs"
    constraint: str = "inflight-minh"
    sge: bool = False
    workers: int = 1
    time_limit_s: float = 300.0
    memory_limit_mb: float = 3072.0
    heuristic_delay_s: float = 50e-6
    scheduler: str = "real"
    sched_seed: int = 0
    custom_constraint: Optional[Any] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {', '.join(ALGORITHMS)}")
        if self.constraint not in CONSTRAINTS:
            raise ValueError(f"unknown constraint {self.constraint!r}; expected one of {', '.join(CONSTRAINTS)}")
        if self.scheduler not in SCHEDULERS:
            raise ValueError(f"unknown scheduler {self.scheduler!r}; expected one of {', '.join(SCHEDULERS)}")
        if int(self.workers) < 1:
            raise ValueError("workers must be >= 1")
        if self.time_limit_s <= 0:
            raise ValueError("time_limit_s must be positive")
        if self.memory_limit_mb <= 0:
            raise ValueError("memory_limit_mb must be positive")
        if self.heuristic_delay_s < 0:
            raise ValueError("heuristic_delay_s must be >= 0")
        if self.constraint == "custom" and self.custom_constraint is None and self.algorithm == "cpgbfs":
            raise ValueError("constraint 'custom' requires custom_constraint")

        if self.algorithm == "kpgbfs":
            object.__setattr__(self, "algorithm", "cpgbfs")
            object.__setattr__(self, "constraint", "none")
        elif self.algorithm == "gbfs":
            object.__setattr__(self, "workers", 1)
            object.__setattr__(self, "sge", False)
            object.__setattr__(self, "constraint", "none")
        object.__setattr__(self, "workers", int(self.workers))

    @property
    def engine_name(self) -> str:
        """``gbfs``, ``kpgbfs`` or ``cpgbfs`` as reported in records."""
        if self.algorithm == "gbfs":
            return "gbfs"
        return "kpgbfs" if self.constraint == "none" else "cpgbfs"

    @property
    def label(self) -> str:
        """Display name, e.g. ``KPGBFS_S`` or ``CPGBFS[inflight-minh]``."""
        return engine_label(self.engine_name, self.constraint, self.sge)

    @property
    def memory_budget_states(self) -> int:
        return max(int(self.memory_limit_mb * 2 ** 20) // BYTES_PER_STATE, 1)

    def with_updates(self, **changes: Any) -> "EngineConfig":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out.pop("custom_constraint")
        if isinstance(self.custom_constraint, str):
            out["custom_constraint"] = self.custom_constraint
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "EngineConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown engine config keys: {', '.join(sorted(unknown))}")
        return cls(**dict(data))


def engine_label(engine: str, constraint: str, sge: bool) -> str:
    if engine == "gbfs":
        return "GBFS"
    base = "KPGBFS" if engine == "kpgbfs" or constraint == "none" else f"CPGBFS[{constraint}]"
    return base + ("_S" if sge else "")
