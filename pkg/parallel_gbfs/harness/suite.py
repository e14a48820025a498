from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import yaml

from parallel_gbfs.domains import DomainSpec
from parallel_gbfs.engines import EngineConfig

from .benchmark import RunLimits


@dataclass(frozen=True)
class Suite:
    """
    A benchmark sweep: instances, configurations and shared limits.

    Attributes
    ----------
    domains:
        Instances to run.
    configs:
        Engine configurations.
    limits:
        Limits applied to every run, ``None`` to keep each configuration's.
    """
    domains: List[DomainSpec]
    configs: List[EngineConfig]
    limits: Optional[RunLimits] = None

    def __post_init__(self) -> None:
        if not self.domains:
            raise ValueError("suite has no domains")
        if not self.configs:
            raise ValueError("suite has no configs")

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "domains": [d.to_dict() for d in self.domains],
            "configs": [c.to_dict() for c in self.configs],
        }
        if self.limits is not None:
            out["limits"] = {
                "time_limit_s": self.limits.time_limit_s,
                "memory_limit_mb": self.limits.memory_limit_mb,
                "heuristic_delay_s": self.limits.heuristic_delay_s,
            }
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Suite":
        limits = data.get("limits")
        return cls(
            domains=[DomainSpec.from_dict(d) for d in data.get("domains") or []],
            configs=[EngineConfig.from_dict(c) for c in data.get("configs") or []],
            limits=RunLimits(**limits) if limits else None,
        )


def load_suite(path: str | Path) -> Suite:
    """Read a suite from a YAML document with ``domains``, ``configs`` and optional ``limits``."""
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping with 'domains' and 'configs'")
    return Suite.from_dict(data)


def save_suite(suite: Suite, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(suite.to_dict(), f, sort_keys=False)
    return path


def standard_configs(
    threads: Sequence[int] = (2, 4, 8),
    constraint: str = "inflight-minh",
    heuristic_delay_s: float = 100e-6,
    scheduler: str = "real",
) -> List[EngineConfig]:
    """GBFS, then KPGBFS, KPGBFS_S, constrained and constrained_S for each thread count."""
    base = EngineConfig(algorithm="gbfs", heuristic_delay_s=heuristic_delay_s, scheduler=scheduler)
    configs = [base]
    for k in threads:
        for algorithm, constraint_name in (("kpgbfs", "none"), ("cpgbfs", constraint)):
            for sge in (False, True):
                configs.append(
                    EngineConfig(
                        algorithm=algorithm,
                        constraint=constraint_name,
                        sge=sge,
                        workers=k,
                        heuristic_delay_s=heuristic_delay_s,
                        scheduler=scheduler,
                    )
                )
    return configs


def plateau_suite(count: int = 10, seed: int = 0) -> List[DomainSpec]:
    """Bushy plateaus of varying depth: seven siblings per chain state, each rooting a small tree."""
    return [
        DomainSpec(
            "plateau-synthetic",
            {"depth": 3 + i % 4, "width": 7, "sibling_fanout": 2, "sibling_depth": 3, "shuffle": True},
            seed=seed + i,
        )
        for i in range(count)
    ]


def desk_suite(
    threads: Sequence[int] = (2, 4, 8),
    per_kind: int = 3,
    heuristic_delay_s: float = 100e-6,
    scheduler: str = "real",
) -> Suite:
    """
    Default desk-scale sweep: plain and bushy plateaus, grids, sliding tiles
    and random graphs, ``per_kind`` instances each, run by
    :func:`standard_configs`.
    """
    domains: List[DomainSpec] = []
    for i in range(per_kind):
        domains.append(DomainSpec("plateau-synthetic", {"depth": 4 + i, "width": 3 + 2 * i}, seed=i))
    domains.extend(plateau_suite(per_kind))
    for i in range(per_kind):
        domains.append(DomainSpec("grid-nav", {"rows": 12, "cols": 12, "obstacle_density": 0.25}, seed=i))
    for i in range(per_kind):
        domains.append(DomainSpec("sliding-tile", {"width": 3, "scramble": 30}, seed=i))
    for i in range(per_kind):
        domains.append(DomainSpec("random-graph", {"num_states": 200, "edge_density": 0.05, "h_max": 8}, seed=i))
    return Suite(
        domains=domains,
        configs=standard_configs(threads, heuristic_delay_s=heuristic_delay_s, scheduler=scheduler),
    )
