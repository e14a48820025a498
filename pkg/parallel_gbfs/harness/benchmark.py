from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from parallel_gbfs.domains import DomainSpec, make_domain
from parallel_gbfs.engines import EngineConfig, run_engine

from .records import RunRecord, append_records

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunLimits:
    """
    Limits applied to every run of a sweep.

    Attributes
    ----------
    time_limit_s:
        Search time limit per run.
    memory_limit_mb:
        Memory limit per run, enforced as a generated-state budget.
    heuristic_delay_s:
        Simulated cost of one heuristic evaluation; ``None`` keeps each
        configuration's own value.
    """
    time_limit_s: float = 300.0
    memory_limit_mb: float = 3072.0
    heuristic_delay_s: Optional[float] = None

    def __post_init__(self) -> None:
        if self.time_limit_s <= 0:
            raise ValueError("time_limit_s must be positive")
        if self.memory_limit_mb <= 0:
            raise ValueError("memory_limit_mb must be positive")
        if self.heuristic_delay_s is not None and self.heuristic_delay_s < 0:
            raise ValueError("heuristic_delay_s must be >= 0")

    def apply(self, config: EngineConfig) -> EngineConfig:
        changes = {"time_limit_s": self.time_limit_s, "memory_limit_mb": self.memory_limit_mb}
        if self.heuristic_delay_s is not None:
            changes["heuristic_delay_s"] = self.heuristic_delay_s
        return config.with_updates(**changes)


def run_one(spec: DomainSpec, config: EngineConfig) -> RunRecord:
    """Build the instance and run one configuration on it; failures become ``error`` records."""
    try:
        topology = make_domain(spec)
        result = run_engine(topology, config)
    except Exception:
        logger.exception("run of %s on %s failed", config.label, spec.label)
        return RunRecord.failed(spec, config, "error")
    return RunRecord.from_result(spec, result)


def run_benchmark(
    suite: Sequence[DomainSpec],
    configs: Sequence[EngineConfig],
    limits: Optional[RunLimits] = None,
    csv_path: Optional[str | Path] = None,
) -> List[RunRecord]:
    """
    Run every configuration on every instance.

    Each run builds its own topology and engine structures. With
    ``csv_path`` every record is appended as soon as its run ends, so a
    sweep interrupted part way keeps the finished rows.

    Parameters
    ----------
    suite:
        Instances to run.
    configs:
        Engine configurations.
    limits:
        Limits overriding those of each configuration.
    csv_path:
        Optional CSV file to append records to.

    Returns
    -------
    list of RunRecord
        In ``(instance, configuration)`` order.
    """
    if not suite:
        raise ValueError("benchmark suite is empty")
    if not configs:
        raise ValueError("no engine configurations given")

    records = []
    total = len(suite) * len(configs)
    for spec in suite:
        for config in configs:
            if limits is not None:
                config = limits.apply(config)
            record = run_one(spec, config)
            records.append(record)
            if csv_path is not None:
                append_records(csv_path, [record])
            logger.info(
                "[%d/%d] %s on %s: %s",
                len(records), total, config.label, spec.label,
                "solved" if record.solved else record.fail_cause,
            )
    return records
