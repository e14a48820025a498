from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional

import pandas as pd

from .records import RunRecord

#: Reference lines drawn on every scatter plot, as ``y = slope * x``.
DIAGONALS = (0.1, 1.0, 10.0)
FAIL_LABEL = "fail"
PLOT_METRICS = ("eval_rate", "expansions", "wall_s")


@dataclass(frozen=True)
class PlotData:
    """
    Per-instance comparison of two configurations.

    Attributes
    ----------
    frame:
        Columns ``domain``, ``x``, ``y``, ``x_fail``, ``y_fail``. Unsolved
        runs have a NaN value and the matching fail flag set.
    fail_value:
        Coordinate of the "fail" band: ten times the largest solved value.
    metadata:
        Axis names, metric, diagonals and fail band position.
    """
    frame: pd.DataFrame
    fail_value: float
    metadata: dict

    def points(self) -> List[tuple]:
        """``(x, y)`` pairs with failed coordinates placed in the fail band."""
        out = []
        for row in self.frame.itertuples(index=False):
            x = self.fail_value if row.x_fail else row.x
            y = self.fail_value if row.y_fail else row.y
            out.append((float(x), float(y)))
        return out


def _value(record: RunRecord, metric: str) -> Optional[float]:
    if not record.solved:
        return None
    return float(getattr(record, metric))


def plot_data(records: Iterable[RunRecord], x: str, y: str, metric: str = "eval_rate") -> PlotData:
    """
    Pair the runs of configurations ``x`` and ``y`` (``label@k`` keys) by
    instance.

    Raises
    ------
    ValueError
        If a configuration has no records or the metric is unknown.
    """
    if metric not in PLOT_METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(PLOT_METRICS)}")
    records = list(records)
    xs = {r.domain: r for r in records if r.config_key == x}
    ys = {r.domain: r for r in records if r.config_key == y}
    for key, found in ((x, xs), (y, ys)):
        if not found:
            raise ValueError(f"configuration {key!r} not found in records")

    rows = []
    for domain in xs:
        if domain not in ys:
            continue
        vx, vy = _value(xs[domain], metric), _value(ys[domain], metric)
        rows.append({"domain": domain, "x": vx, "y": vy, "x_fail": vx is None, "y_fail": vy is None})
    frame = pd.DataFrame(rows, columns=["domain", "x", "y", "x_fail", "y_fail"])

    solved_values = list(frame["x"].dropna()) + list(frame["y"].dropna())
    fail_value = 10.0 * max(solved_values) if solved_values else 1.0
    metadata = {
        "x": x,
        "y": y,
        "metric": metric,
        "diagonals": list(DIAGONALS),
        "fail": {"label": FAIL_LABEL, "value": fail_value},
        "points": len(frame),
    }
    return PlotData(frame=frame, fail_value=fail_value, metadata=metadata)


def emit_plot_data(
    records: Iterable[RunRecord],
    x: str,
    y: str,
    metric: str,
    out: str | Path,
) -> PlotData:
    """
    Write ``<out>.csv`` with the paired points and ``<out>.json`` with the
    plot metadata.
    """
    data = plot_data(records, x, y, metric)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    data.frame.to_csv(out.with_suffix(".csv"), index=False)
    out.with_suffix(".json").write_text(json.dumps(data.metadata, indent=2, sort_keys=True), encoding="utf-8")
    return data
