from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Tuple

from parallel_gbfs.engines.trace import SearchTrace, selected_states

from .bts import BtsSet


class FingerprintMismatchError(ValueError):
    """A trace and a BTS set were computed on different topologies."""


@dataclass(frozen=True)
class ConstraintReport:
    """
    Result of checking a trace against a BTS set.

    Attributes
    ----------
    violations:
        States selected from Open that are not BTS members, in first-selection
        order and without repeats.
    checked:
        Number of selections inspected.
    fingerprint:
        Topology fingerprint shared by the trace and the BTS set.
    """
    violations: Tuple[int, ...]
    checked: int
    fingerprint: str

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "violations": list(self.violations),
            "checked": self.checked,
            "fingerprint": self.fingerprint,
        }


def check_trace_constrained(trace: SearchTrace, bts: BtsSet) -> ConstraintReport:
    """
    List every state the traced search selected that lies outside ``bts``.

    Raises
    ------
    FingerprintMismatchError
        When the trace and the BTS set belong to different topologies.
    """
    if trace.topology_hash != bts.topology_hash:
        raise FingerprintMismatchError(
            f"trace fingerprint {trace.topology_hash[:12]} does not match BTS fingerprint {bts.topology_hash[:12]}"
        )
    selected = selected_states(trace)
    violations = []
    seen = set()
    for s in selected:
        if s not in bts and s not in seen:
            seen.add(s)
            violations.append(s)
    return ConstraintReport(violations=tuple(violations), checked=len(selected), fingerprint=bts.topology_hash)
