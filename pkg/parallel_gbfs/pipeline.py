from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from .domains import DomainSpec, make_domain
from .engines import EngineConfig, SearchResult, run_engine
from .formats import read_topology_file
from .oracle import BtsSet, OracleConfig, OracleInconclusive, bts_enumerate, bts_via_hwm
from .topology import StateSpaceTopology


ORACLE_METHODS = ("enum", "hwm", "both")


@dataclass(frozen=True)
class SolveOutcome:
    """
    Convenience container bundling a topology with one engine run on it.

    Attributes
    ----------
    topology:
        Instance that was searched.
    result:
        Engine result.
    """
    topology: StateSpaceTopology
    result: SearchResult

    def to_json(self) -> Dict[str, Any]:
        out = self.result.to_json()
        out["topology"] = self.topology.fingerprint()
        return out


@dataclass(frozen=True)
class OracleReport:
    """
    BTS sets computed by one or both oracle methods.

    Attributes
    ----------
    sets:
        Results keyed by method name.
    inconclusive:
        Methods that ran out of budget, with their error message.
    """
    sets: Dict[str, BtsSet]
    inconclusive: Dict[str, str] = field(default_factory=dict)

    @property
    def agree(self) -> Optional[bool]:
        """Whether both methods produced the same members; ``None`` unless both ran to completion."""
        if len(self.sets) < 2:
            return None
        enum, hwm = self.sets["enum"], self.sets["hwm"]
        return enum.members == hwm.members

    @property
    def status(self) -> str:
        if self.inconclusive:
            return "inconclusive"
        return "mismatch" if self.agree is False else "ok"

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": self.status}
        for method, bts in self.sets.items():
            out[method] = bts.to_json()
        if self.inconclusive:
            out["inconclusive"] = dict(self.inconclusive)
        if self.agree is not None:
            out["agree"] = self.agree
        return out


def solve_topology_file(path: str | Path, config: Optional[EngineConfig] = None) -> SolveOutcome:
    """
    Convenience helper: load a topology file and run one engine on it.

    Parameters
    ----------
    path:
        Topology file.
    config:
        Engine configuration; defaults to ``EngineConfig()``.

    Returns
    -------
    SolveOutcome
    """
    topology = read_topology_file(path)
    return SolveOutcome(topology=topology, result=run_engine(topology, config or EngineConfig()))


def solve_domain(spec: DomainSpec, config: Optional[EngineConfig] = None) -> SolveOutcome:
    """Convenience helper: build the instance described by ``spec`` and run one engine on it."""
    topology = make_domain(spec)
    return SolveOutcome(topology=topology, result=run_engine(topology, config or EngineConfig()))


def oracle_report(
    topology: StateSpaceTopology,
    method: str = "both",
    config: Optional[OracleConfig] = None,
) -> OracleReport:
    """
    Run the BTS oracle.

    ``method`` is ``"enum"`` (tie-breaking enumeration), ``"hwm"``
    (high-water-mark characterization) or ``"both"``. A budget overrun of
    the enumeration is reported as inconclusive rather than raised.
    """
    if method not in ORACLE_METHODS:
        raise ValueError(f"unknown oracle method {method!r}; expected one of {', '.join(ORACLE_METHODS)}")
    sets: Dict[str, BtsSet] = {}
    inconclusive: Dict[str, str] = {}
    if method in ("enum", "both"):
        try:
            sets["enum"] = bts_enumerate(topology, config)
        except OracleInconclusive as exc:
            inconclusive["enum"] = str(exc)
    if method in ("hwm", "both"):
        sets["hwm"] = bts_via_hwm(topology, config)
    return OracleReport(sets=sets, inconclusive=inconclusive)
