from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from parallel_gbfs.topology import (
    ExplicitTopology,
    StateSpaceTopology,
    TopologyValidationError,
    materialize,
)


_STATE_RE = re.compile(r"^state\s+(\d+)\s+h=(\d+)((?:\s+(?:init|goal))*)\s*$")
_EDGE_RE = re.compile(r"^edge\s+(\d+)\s+(\d+)\s*$")


class TopologyParseError(ValueError):
    """A topology file line could not be parsed."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def load_topology(text: str) -> ExplicitTopology:
    """
    Parse topology-file contents.

    The format is line based, ``#`` starts a comment::

        state <id> h=<int> [init] [goal]
        edge <from-id> <to-id>

    Exactly one state is marked ``init`` and at least one ``goal``. Edges
    listed in file order define each state's successor ordering.

    Parameters
    ----------
    text:
        File contents.

    Returns
    -------
    ExplicitTopology

    Raises
    ------
    TopologyParseError
        For malformed lines, with the 1-based line number.
    TopologyValidationError
        When the parsed topology breaks an invariant.
    """
    h_by_id: Dict[int, int] = {}
    initial: List[int] = []
    goals: List[int] = []
    edges: List[Tuple[int, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        m = _STATE_RE.match(line)
        if m:
            sid = int(m.group(1))
            if sid in h_by_id:
                raise TopologyParseError(lineno, f"state {sid} declared twice")
            h_by_id[sid] = int(m.group(2))
            flags = m.group(3).split()
            if len(set(flags)) != len(flags):
                raise TopologyParseError(lineno, "repeated state flag")
            if "init" in flags:
                initial.append(sid)
            if "goal" in flags:
                goals.append(sid)
            continue

        m = _EDGE_RE.match(line)
        if m:
            edges.append((lineno, int(m.group(1)), int(m.group(2))))
            continue

        raise TopologyParseError(lineno, f"cannot parse {raw.strip()!r}")

    n = len(h_by_id)
    if n == 0:
        raise TopologyValidationError("no states declared")
    if sorted(h_by_id) != list(range(n)):
        raise TopologyValidationError("state ids must be contiguous from 0")
    for lineno, source, target in edges:
        if source not in h_by_id or target not in h_by_id:
            raise TopologyParseError(lineno, f"edge {source} -> {target} references an undeclared state")
    if len(initial) != 1:
        raise TopologyValidationError(f"exactly one init state is required, found {len(initial)}")

    return ExplicitTopology.from_edges(
        h_values=[h_by_id[i] for i in range(n)],
        edges=[(s, t) for _, s, t in edges],
        initial=initial[0],
        goals=goals,
    )


def dumps_topology(topology: StateSpaceTopology, comment: Optional[str] = None) -> str:
    """
    Serialize a topology to the file format.

    Implicit topologies are materialized first. The output is byte-identical
    for equal topologies.
    """
    t = materialize(topology)
    lines: List[str] = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    for s in range(t.num_states):
        flags = ""
        if s == t.initial:
            flags += " init"
        if s in t.goals:
            flags += " goal"
        lines.append(f"state {s} h={t.h_values[s]}{flags}")
    for s, target in t.edges():
        lines.append(f"edge {s} {target}")
    return "\n".join(lines) + "\n"


def read_topology_file(path: str | Path) -> ExplicitTopology:
    """Load a topology from a file on disk."""
    return load_topology(Path(path).read_text(encoding="utf-8"))


def write_topology_file(
    path: str | Path,
    topology: StateSpaceTopology,
    comment: Optional[str] = None,
) -> Path:
    """
    Write a topology file, creating parent directories as needed.

    Returns
    -------
    Path
        The written path.
    """
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_topology(topology, comment=comment), encoding="utf-8")
    return path
