from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .records import RunRecord

logger = logging.getLogger(__name__)

#: Metrics averaged per configuration, with the floor applied to zero values.
METRIC_FLOORS = {
    "eval_rate": 1.0,
    "expansions": 1.0,
    "search_time": 1e-6,
}
METRICS = ("eval_rate", "expansions", "search_time", "speedup")

BASELINE_KEY = "GBFS@1"


def geometric_mean(values: Iterable[float]) -> float:
    """
    ``exp(mean(log v))`` of strictly positive values.

    Raises
    ------
    ValueError
        For empty input or a non-positive value.
    """
    vals = np.asarray(list(values), dtype=float)
    if vals.size == 0:
        raise ValueError("geometric mean of an empty sequence")
    if np.any(vals <= 0):
        raise ValueError("geometric mean needs strictly positive values")
    return float(np.exp(np.mean(np.log(vals))))


def _floored(values: Sequence[float], metric: str, key: str) -> List[float]:
    floor = METRIC_FLOORS[metric]
    low = sum(1 for v in values if v < floor)
    if low:
        logger.warning("%s: %d %s value(s) below %g floored for the geometric mean", key, low, metric, floor)
    return [max(float(v), floor) for v in values]


def _metric(record: RunRecord, metric: str) -> float:
    if metric == "eval_rate":
        return record.eval_rate
    if metric == "expansions":
        return float(record.expansions)
    if metric == "search_time":
        return record.wall_s
    raise ValueError(f"unknown metric {metric!r}")


@dataclass(frozen=True)
class ConfigSummary:
    """
    Aggregates of one ``label@k`` configuration.

    Attributes
    ----------
    key, label, k:
        Configuration key, engine label and worker count.
    runs, solved:
        Number of instances run and solved.
    eval_rate, expansions, search_time:
        Geometric means over the commonly solved instances; ``None`` when
        there are none.
    speedup:
        Arithmetic mean of ``wall(GBFS) / wall`` over the commonly solved
        instances; ``None`` without a sequential baseline.
    """
    key: str
    label: str
    k: int
    runs: int
    solved: int
    eval_rate: Optional[float] = None
    expansions: Optional[float] = None
    search_time: Optional[float] = None
    speedup: Optional[float] = None

    def value(self, metric: str) -> Optional[float]:
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")
        return getattr(self, metric)


@dataclass(frozen=True)
class AggregateReport:
    """
    Benchmark summary across configurations.

    Attributes
    ----------
    configs:
        Per-configuration summaries keyed by ``label@k``, in first-seen order.
    instances:
        Every instance label that appears in the records.
    common_solved:
        Instances solved by every configuration; the means use only these.
    pairwise:
        ``pairwise[row][col]`` counts instances solved by ``row`` but not by
        ``col``.
    """
    configs: Dict[str, ConfigSummary]
    instances: Tuple[str, ...]
    common_solved: Tuple[str, ...]
    pairwise: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def means_defined(self) -> bool:
        return bool(self.common_solved)

    @property
    def coverage(self) -> Dict[str, int]:
        return {key: s.solved for key, s in self.configs.items()}

    def ratio(self, metric: str, num_key: str, den_key: str) -> Optional[float]:
        """``metric[num_key] / metric[den_key]``, or ``None`` if undefined."""
        for key in (num_key, den_key):
            if key not in self.configs:
                raise ValueError(f"unknown configuration {key!r}")
        num = self.configs[num_key].value(metric)
        den = self.configs[den_key].value(metric)
        if num is None or den is None or den == 0:
            return None
        return num / den

    def to_json(self) -> Dict[str, object]:
        return {
            "means_defined": self.means_defined,
            "instances": list(self.instances),
            "common_solved": list(self.common_solved),
            "configs": {
                key: {
                    "label": s.label,
                    "k": s.k,
                    "runs": s.runs,
                    "solved": s.solved,
                    "eval_rate": s.eval_rate,
                    "expansions": s.expansions,
                    "search_time": s.search_time,
                    "speedup": s.speedup,
                }
                for key, s in self.configs.items()
            },
            "coverage": self.coverage,
            "pairwise": self.pairwise,
        }

    def metric_table(self, metric: str) -> Tuple[List[str], List[int], Dict[Tuple[str, int], Optional[float]]]:
        """Engine-label rows, worker-count columns and the cell values."""
        labels: List[str] = []
        ks: List[int] = []
        cells: Dict[Tuple[str, int], Optional[float]] = {}
        for s in self.configs.values():
            if s.label not in labels:
                labels.append(s.label)
            if s.k not in ks:
                ks.append(s.k)
            cells[(s.label, s.k)] = s.value(metric)
        return labels, sorted(ks), cells

    def to_markdown(self) -> str:
        titles = {
            "eval_rate": "State evaluation rate (states/s, geometric mean)",
            "expansions": "State expansions (geometric mean)",
            "search_time": "Search time (s, geometric mean)",
            "speedup": "Speedup vs. GBFS (arithmetic mean)",
        }
        lines = [f"Means over {len(self.common_solved)} instances solved by all configurations", ""]
        for metric in METRICS:
            labels, ks, cells = self.metric_table(metric)
            lines.append(f"### {titles[metric]}")
            lines.append("")
            lines.append("| engine | " + " | ".join(f"k={k}" for k in ks) + " |")
            lines.append("|---|" + "---|" * len(ks))
            for label in labels:
                row = [_fmt(cells.get((label, k)), metric) if (label, k) in cells else "" for k in ks]
                lines.append(f"| {label} | " + " | ".join(row) + " |")
            lines.append("")

        lines.append("### Coverage")
        lines.append("")
        lines.append("| config | solved | runs |")
        lines.append("|---|---|---|")
        for key, s in self.configs.items():
            lines.append(f"| {key} | {s.solved} | {s.runs} |")
        lines.append("")

        keys = list(self.configs)
        lines.append("### Solved by row, not by column")
        lines.append("")
        lines.append("| | " + " | ".join(keys) + " |")
        lines.append("|---|" + "---|" * len(keys))
        for row in keys:
            cells_row = ["-" if row == col else str(self.pairwise[row][col]) for col in keys]
            lines.append(f"| {row} | " + " | ".join(cells_row) + " |")
        return "\n".join(lines) + "\n"


def _fmt(value: Optional[float], metric: str) -> str:
    if value is None:
        return "n/a"
    if metric == "search_time":
        return f"{value:.4f}"
    if metric == "speedup":
        return f"{value:.2f}"
    return f"{value:.0f}" if value >= 100 else f"{value:.2f}"


def aggregate(records: Iterable[RunRecord], baseline_key: str = BASELINE_KEY) -> AggregateReport:
    """
    Summarize run records per ``label@k`` configuration.

    Geometric means and speedups are taken over the instances every
    configuration solved. Zero metric values are floored (logged) before the
    geometric mean. When no instance is solved by all configurations the
    means are left undefined while coverage and the pairwise table are still
    reported. A later record for the same configuration and instance
    replaces an earlier one.

    Raises
    ------
    ValueError
        If there are no records.
    """
    by_config: Dict[str, Dict[str, RunRecord]] = defaultdict(dict)
    meta: Dict[str, Tuple[str, int]] = {}
    instances: List[str] = []
    for r in records:
        key = r.config_key
        by_config[key][r.domain] = r
        meta.setdefault(key, (r.label, r.k))
        if r.domain not in instances:
            instances.append(r.domain)
    if not by_config:
        raise ValueError("no records to aggregate")

    solved = {key: {d for d, r in runs.items() if r.solved} for key, runs in by_config.items()}
    common = [d for d in instances if all(d in s for s in solved.values())]
    if not common:
        logger.warning("no instance is solved by every configuration; means are undefined")

    baseline = by_config.get(baseline_key)
    summaries: Dict[str, ConfigSummary] = {}
    for key, runs in by_config.items():
        label, k = meta[key]
        values: Dict[str, Optional[float]] = {m: None for m in METRICS}
        if common:
            for metric in METRIC_FLOORS:
                values[metric] = geometric_mean(_floored([_metric(runs[d], metric) for d in common], metric, key))
            if baseline is not None:
                floor = METRIC_FLOORS["search_time"]
                ratios = [max(baseline[d].wall_s, floor) / max(runs[d].wall_s, floor) for d in common]
                values["speedup"] = float(np.mean(ratios))
        summaries[key] = ConfigSummary(
            key=key, label=label, k=k, runs=len(runs), solved=len(solved[key]), **values
        )

    pairwise = {
        row: {col: len(solved[row] - solved[col]) for col in by_config}
        for row in by_config
    }
    return AggregateReport(
        configs=summaries,
        instances=tuple(instances),
        common_solved=tuple(common),
        pairwise=pairwise,
    )
