from __future__ import annotations

from typing import List

import numpy as np

from parallel_gbfs.topology import ExplicitTopology


def gen_random(
    num_states: int,
    edge_density: float = 0.3,
    h_max: int = 5,
    goal_count: int = 1,
    seed: int = 0,
    back_edge_ratio: float = 0.25,
) -> ExplicitTopology:
    """
    Generate a random DAG-plus-back-edges topology.

    State 0 is the initial state. The remaining states get a random rank; a
    forward edge ``a -> b`` (rank(a) < rank(b)) exists with probability
    ``edge_density`` and a back edge with probability
    ``edge_density * back_edge_ratio``. Goals have no successors and h = 0;
    other states draw h uniformly from ``[0, h_max]``. Dead-end non-goal
    states are allowed.

    If no goal is reachable from the initial state, one edge from a reachable
    non-goal state to a goal is added, so every instance is solvable.

    Parameters
    ----------
    num_states:
        Number of states, at least 2.
    edge_density:
        Forward edge probability in ``[0, 1]``.
    h_max:
        Largest heuristic value.
    goal_count:
        Number of goals, clipped to ``num_states - 1``.
    seed:
        Generator seed; equal arguments give equal topologies.
    back_edge_ratio:
        Back edge probability relative to ``edge_density``.

    Returns
    -------
    ExplicitTopology
    """
    if num_states < 2:
        raise ValueError("num_states must be >= 2")
    if not 0.0 <= edge_density <= 1.0:
        raise ValueError("edge_density must be in [0, 1]")
    if h_max < 0:
        raise ValueError("h_max must be >= 0")
    if goal_count < 1:
        raise ValueError("goal_count must be >= 1")

    rng = np.random.default_rng(seed)
    n = num_states
    goal_count = min(goal_count, n - 1)

    goals = set(int(g) for g in rng.choice(np.arange(1, n), size=goal_count, replace=False))
    h = [0 if s in goals else int(rng.integers(0, h_max + 1)) for s in range(n)]

    # state 0 always ranks first
    order = [0] + [int(s) for s in rng.permutation(np.arange(1, n))]
    rank = {s: r for r, s in enumerate(order)}

    forward = rng.random((n, n)) < edge_density
    backward = rng.random((n, n)) < edge_density * back_edge_ratio

    succ: List[List[int]] = [[] for _ in range(n)]
    for source in order:
        if source in goals:
            continue
        for target in order:
            if target == source:
                continue
            if rank[target] > rank[source]:
                if forward[source, target]:
                    succ[source].append(target)
            elif backward[source, target]:
                succ[source].append(target)

    reachable = _reachable(succ, 0)
    if not goals & reachable:
        sources = sorted(s for s in reachable if s not in goals)
        source = sources[int(rng.integers(len(sources)))]
        ordered_goals = sorted(goals)
        target = ordered_goals[int(rng.integers(len(ordered_goals)))]
        succ[source].append(target)

    return ExplicitTopology(
        num_states=n,
        successor_lists=tuple(tuple(s) for s in succ),
        initial=0,
        goals=frozenset(goals),
        h_values=tuple(h),
    )


def _reachable(succ: List[List[int]], start: int) -> set:
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for t in succ[s]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen
