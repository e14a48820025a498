from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

from parallel_gbfs.topology import StateSpaceTopology

from .grid import GridNavigation
from .plateau import gen_plateau
from .random_graph import gen_random
from .tile import SlidingTilePuzzle


DOMAIN_KINDS = ("explicit-file", "sliding-tile", "grid-nav", "plateau-synthetic", "random-graph")


@dataclass(frozen=True)
class DomainSpec:
    """
    Recipe for one benchmark instance.

    Attributes
    ----------
    kind:
        One of :data:`DOMAIN_KINDS`.
    params:
        Kind-specific parameters:

        - ``explicit-file``: ``path``
        - ``sliding-tile``: ``width``, optional ``height``, and either
          ``permutation`` or ``scramble`` (random moves from the goal)
        - ``grid-nav``: ``rows``, ``cols``, ``obstacle_density``, optional
          ``start`` and ``goal`` cells
        - ``plateau-synthetic``: ``depth``, ``width``, optional
          ``sibling_fanout``, ``sibling_depth`` and ``shuffle``
        - ``random-graph``: ``num_states``, ``edge_density``, ``h_max``,
          ``goal_count``
    seed:
        Unsigned 64-bit seed for every random choice.
    name:
        Optional display name; defaults to :attr:`label`.
    """
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0
    name: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in DOMAIN_KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}; expected one of {', '.join(DOMAIN_KINDS)}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        args = ",".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return f"{self.kind}[{args}]#{self.seed}"

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind, "params": dict(self.params), "seed": int(self.seed)}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DomainSpec":
        return cls(
            kind=data["kind"],
            params=dict(data.get("params") or {}),
            seed=int(data.get("seed", 0)),
            name=data.get("name"),
        )


def make_domain(spec: DomainSpec) -> StateSpaceTopology:
    """
    Build the topology described by ``spec``.

    Tile and grid instances are implicit: successors and h are computed on
    demand through the shared interface. The other kinds are explicit tables.

    Raises
    ------
    ValueError
        For missing or invalid parameters, including unsolvable tile
        permutations.
    """
    p = dict(spec.params)
    try:
        if spec.kind == "explicit-file":
            from parallel_gbfs.formats.topology_file import read_topology_file

            return read_topology_file(p["path"])

        if spec.kind == "sliding-tile":
            width = int(p.get("width", 3))
            height = p.get("height")
            height = None if height is None else int(height)
            if "permutation" in p:
                return SlidingTilePuzzle(p["permutation"], width, height)
            return SlidingTilePuzzle.scrambled(width, int(p.get("scramble", 20)), seed=spec.seed, height=height)

        if spec.kind == "grid-nav":
            rows = int(p["rows"])
            cols = int(p.get("cols", rows))
            goal = p.get("goal")
            return GridNavigation.random(
                rows,
                cols,
                float(p.get("obstacle_density", 0.0)),
                seed=spec.seed,
                start=tuple(p.get("start", (0, 0))),
                goal=None if goal is None else tuple(goal),
            )

        if spec.kind == "plateau-synthetic":
            return gen_plateau(
                int(p["depth"]),
                int(p["width"]),
                seed=spec.seed if p.get("shuffle") else None,
                sibling_fanout=int(p.get("sibling_fanout", 0)),
                sibling_depth=int(p.get("sibling_depth", 0)),
            )

        return gen_random(
            int(p["num_states"]),
            edge_density=float(p.get("edge_density", 0.3)),
            h_max=int(p.get("h_max", 5)),
            goal_count=int(p.get("goal_count", 1)),
            seed=spec.seed,
        )
    except KeyError as exc:
        raise ValueError(f"{spec.kind} domain requires parameter {exc.args[0]!r}") from None
