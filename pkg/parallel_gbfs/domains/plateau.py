from __future__ import annotations

from typing import List, Optional

import numpy as np

from parallel_gbfs.topology import ExplicitTopology


def gen_plateau(
    depth: int,
    width: int,
    seed: Optional[int] = None,
    sibling_fanout: int = 0,
    sibling_depth: int = 0,
) -> ExplicitTopology:
    """
    Build the plateau topology: a strictly improving chain whose states each
    spawn ``width`` strictly worse siblings.

    The chain is ``s_0 -> s_{1,1} -> ... -> s_{d-1,1} -> s_goal``. Chain state
    ``i`` has ``h = depth - i``; each of its ``width`` extra successors has
    ``h = depth - i``, one worse than the chain child. Only the chain and the
    goal can ever be selected by sequential GBFS.

    Ids: chain states ``0 .. depth - 1``, goal ``depth``, then siblings level
    by level, then sibling subtrees.

    Parameters
    ----------
    depth:
        Chain length ``d >= 1`` (number of non-goal chain states).
    width:
        Siblings per chain state ``x >= 0``.
    seed:
        When given, every successor list is shuffled with this seed. ``None``
        lists the chain child first.
    sibling_fanout, sibling_depth:
        When both are positive, each sibling roots a complete tree of this
        fanout and depth; tree states have ``h = h(sibling) + level`` and the
        leaves are dead ends. This keeps unconstrained engines busy off the
        chain without changing which states GBFS can select.

    Returns
    -------
    ExplicitTopology
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if width < 0:
        raise ValueError("width must be >= 0")
    if sibling_fanout < 0 or sibling_depth < 0:
        raise ValueError("sibling_fanout and sibling_depth must be >= 0")

    goal = depth
    h: List[int] = [depth - i for i in range(depth)] + [0]
    succ: List[List[int]] = [[i + 1] for i in range(depth)] + [[]]

    siblings: List[int] = []
    for level in range(1, depth + 1):
        parent = level - 1
        for _ in range(width):
            sid = len(h)
            h.append(depth - level + 1)
            succ.append([])
            succ[parent].append(sid)
            siblings.append(sid)

    if sibling_fanout > 0 and sibling_depth > 0:
        for root in siblings:
            frontier = [root]
            for _ in range(sibling_depth):
                next_frontier = []
                for node in frontier:
                    for _ in range(sibling_fanout):
                        sid = len(h)
                        h.append(h[node] + 1)
                        succ.append([])
                        succ[node].append(sid)
                        next_frontier.append(sid)
                frontier = next_frontier

    if seed is not None:
        rng = np.random.default_rng(seed)
        succ = [[s[i] for i in rng.permutation(len(s))] if s else s for s in succ]

    return ExplicitTopology(
        num_states=len(h),
        successor_lists=tuple(tuple(int(t) for t in s) for s in succ),
        initial=0,
        goals=frozenset([goal]),
        h_values=tuple(h),
    )
