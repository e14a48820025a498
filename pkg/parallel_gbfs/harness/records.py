from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List

import numpy as np
import pandas as pd

from parallel_gbfs.domains import DomainSpec
from parallel_gbfs.engines import EngineConfig, SearchResult, engine_label


CSV_COLUMNS = (
    "domain",
    "kind",
    "seed",
    "engine",
    "constraint",
    "sge",
    "k",
    "scheduler",
    "sched_seed",
    "solved",
    "fail_cause",
    "expansions",
    "evaluations",
    "wasted_evals",
    "wall_s",
    "eval_rate",
    "peak_open",
)

FAIL_CAUSES = ("time", "memory", "unsolvable", "error")


@dataclass(frozen=True)
class RunRecord:
    """
    One benchmark run, as stored in a CSV row.

    Attributes
    ----------
    domain, kind, seed:
        Instance label, domain kind and instance seed.
    engine, constraint, sge, k:
        Engine name (``gbfs``, ``kpgbfs``, ``cpgbfs``), constraint name,
        separate generation flag and worker count.
    scheduler, sched_seed:
        Runtime used for the run.
    solved, fail_cause:
        Outcome; ``fail_cause`` is empty for solved runs and one of
        :data:`FAIL_CAUSES` otherwise.
    expansions, evaluations, wasted_evals:
        Search effort counters.
    wall_s:
        Search time in seconds.
    eval_rate:
        ``evaluations / wall_s`` (0 for zero search time).
    peak_open:
        Largest Open size reached.
    """
    domain: str
    kind: str
    seed: int
    engine: str
    constraint: str
    sge: bool
    k: int
    scheduler: str
    sched_seed: int
    solved: bool
    fail_cause: str
    expansions: int
    evaluations: int
    wasted_evals: int
    wall_s: float
    eval_rate: float
    peak_open: int

    def __post_init__(self) -> None:
        if self.solved and self.fail_cause:
            raise ValueError("a solved run has no failure cause")
        if not self.solved and self.fail_cause not in FAIL_CAUSES:
            raise ValueError(f"unsolved run needs a failure cause in {FAIL_CAUSES}, got {self.fail_cause!r}")
        expected = self.evaluations / self.wall_s if self.wall_s > 0 else 0.0
        if not np.isclose(self.eval_rate, expected, rtol=1e-9, atol=1e-9):
            raise ValueError(f"eval_rate {self.eval_rate} does not match evaluations / wall_s = {expected}")

    @classmethod
    def from_result(cls, spec: DomainSpec, result: SearchResult) -> "RunRecord":
        config = result.config
        return cls(
            domain=spec.label,
            kind=spec.kind,
            seed=int(spec.seed),
            engine=config.engine_name,
            constraint=config.constraint,
            sge=bool(config.sge),
            k=config.workers,
            scheduler=config.scheduler,
            sched_seed=int(config.sched_seed),
            solved=result.solved,
            fail_cause=result.fail_cause,
            expansions=result.expansions,
            evaluations=result.evaluations,
            wasted_evals=result.wasted_evaluations,
            wall_s=result.wall_seconds,
            eval_rate=result.evaluation_rate,
            peak_open=result.peak_open,
        )

    @classmethod
    def failed(cls, spec: DomainSpec, config: EngineConfig, cause: str = "error") -> "RunRecord":
        """Record for a run that produced no result."""
        return cls(
            domain=spec.label,
            kind=spec.kind,
            seed=int(spec.seed),
            engine=config.engine_name,
            constraint=config.constraint,
            sge=bool(config.sge),
            k=config.workers,
            scheduler=config.scheduler,
            sched_seed=int(config.sched_seed),
            solved=False,
            fail_cause=cause,
            expansions=0,
            evaluations=0,
            wasted_evals=0,
            wall_s=0.0,
            eval_rate=0.0,
            peak_open=0,
        )

    @property
    def label(self) -> str:
        """Configuration label without the worker count, e.g. ``KPGBFS_S``."""
        return engine_label(self.engine, self.constraint, self.sge)

    @property
    def config_key(self) -> str:
        """``label@k``, the key used by aggregate tables."""
        return f"{self.label}@{self.k}"

    def to_row(self) -> Dict[str, Any]:
        return asdict(self)


def records_frame(records: Iterable[RunRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in records], columns=list(CSV_COLUMNS))


def append_records(path: str | Path, records: Iterable[RunRecord]) -> Path:
    """
    Append records to a CSV file, writing the header only when the file is
    new or empty.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = records_frame(records)
    new_file = not path.exists() or path.stat().st_size == 0
    frame.to_csv(path, mode="w" if new_file else "a", header=new_file, index=False)
    return path


def _as_bool(value: Any) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("true", "1", "yes")
    return bool(value)


def read_records(path: str | Path) -> List[RunRecord]:
    """
    Load records written by :func:`append_records`.

    Raises
    ------
    ValueError
        If a required column is missing.
    """
    frame = pd.read_csv(path, float_precision="round_trip", keep_default_na=False, dtype={"fail_cause": str})
    missing = [c for c in CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"{path}: missing columns {', '.join(missing)}")

    records = []
    for row in frame.to_dict(orient="records"):
        records.append(
            RunRecord(
                domain=str(row["domain"]),
                kind=str(row["kind"]),
                seed=int(row["seed"]),
                engine=str(row["engine"]),
                constraint=str(row["constraint"]),
                sge=_as_bool(row["sge"]),
                k=int(row["k"]),
                scheduler=str(row["scheduler"]),
                sched_seed=int(row["sched_seed"]),
                solved=_as_bool(row["solved"]),
                fail_cause=str(row["fail_cause"]),
                expansions=int(row["expansions"]),
                evaluations=int(row["evaluations"]),
                wasted_evals=int(row["wasted_evals"]),
                wall_s=float(row["wall_s"]),
                eval_rate=float(row["eval_rate"]),
                peak_open=int(row["peak_open"]),
            )
        )
    return records
