from __future__ import annotations

import hashlib
from collections import deque
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from parallel_gbfs.topology import StateSpaceTopology


Cell = Tuple[int, int]

# neighbour order: right, down, left, up
_STEPS = ((0, 1), (1, 0), (0, -1), (-1, 0))


class GridNavigation(StateSpaceTopology):
    """
    4-connected grid path finding with blocked cells.

    Cell ``(row, col)`` has id ``row * cols + col``. The heuristic is the
    Manhattan distance to the goal cell.

    Parameters
    ----------
    rows, cols:
        Grid dimensions.
    start, goal:
        ``(row, col)`` cells; neither may be blocked.
    blocked:
        Blocked cells.
    """

    def __init__(
        self,
        rows: int,
        cols: int,
        start: Cell = (0, 0),
        goal: Optional[Cell] = None,
        blocked: Iterable[Cell] = (),
    ) -> None:
        if rows < 1 or cols < 1:
            raise ValueError("grid dimensions must be positive")
        goal = (rows - 1, cols - 1) if goal is None else tuple(goal)
        start = tuple(start)
        for name, cell in (("start", start), ("goal", goal)):
            if not (0 <= cell[0] < rows and 0 <= cell[1] < cols):
                raise ValueError(f"{name} cell {cell} is outside the grid")
        self.rows = rows
        self.cols = cols
        self.start: Cell = (int(start[0]), int(start[1]))
        self.goal: Cell = (int(goal[0]), int(goal[1]))
        self.blocked: FrozenSet[Cell] = frozenset((int(r), int(c)) for r, c in blocked)
        if self.start in self.blocked or self.goal in self.blocked:
            raise ValueError("start and goal cells must be free")

        self.num_states = rows * cols
        self.initial = self.cell_id(self.start)
        self._goal_id = self.cell_id(self.goal)
        if not self._goal_reachable():
            raise ValueError("goal cell is unreachable from the start cell")

    @classmethod
    def random(
        cls,
        rows: int,
        cols: int,
        obstacle_density: float,
        seed: int = 0,
        start: Cell = (0, 0),
        goal: Optional[Cell] = None,
        max_attempts: int = 100,
    ) -> "GridNavigation":
        """
        Grid with each cell blocked independently with ``obstacle_density``.

        Obstacle masks that cut the start off from the goal are redrawn from
        the same generator, up to ``max_attempts`` times.
        """
        if not 0.0 <= obstacle_density < 1.0:
            raise ValueError("obstacle_density must be in [0, 1)")
        rng = np.random.default_rng(seed)
        goal = (rows - 1, cols - 1) if goal is None else tuple(goal)
        for _ in range(max_attempts):
            mask = rng.random((rows, cols)) < obstacle_density
            mask[tuple(start)] = False
            mask[tuple(goal)] = False
            blocked = [(int(r), int(c)) for r, c in zip(*np.nonzero(mask))]
            try:
                return cls(rows, cols, start=start, goal=goal, blocked=blocked)
            except ValueError as exc:
                if "unreachable" not in str(exc):
                    raise
        raise ValueError(f"no solvable {rows}x{cols} grid found in {max_attempts} attempts")

    def cell_id(self, cell: Cell) -> int:
        return cell[0] * self.cols + cell[1]

    def cell(self, state: int) -> Cell:
        return divmod(state, self.cols)

    def successors(self, state: int) -> List[int]:
        if state == self._goal_id:
            return []
        row, col = self.cell(state)
        if (row, col) in self.blocked:
            return []
        result = []
        for dr, dc in _STEPS:
            r, c = row + dr, col + dc
            if 0 <= r < self.rows and 0 <= c < self.cols and (r, c) not in self.blocked:
                result.append(r * self.cols + c)
        return result

    def h(self, state: int) -> int:
        row, col = self.cell(state)
        return abs(row - self.goal[0]) + abs(col - self.goal[1])

    def is_goal(self, state: int) -> bool:
        return state == self._goal_id

    def fingerprint(self) -> str:
        blocked = ";".join(f"{r},{c}" for r, c in sorted(self.blocked))
        descriptor = f"grid-nav:{self.rows}x{self.cols}:{self.start}:{self.goal}:{blocked}"
        return hashlib.sha256(descriptor.encode("utf-8")).hexdigest()

    def _goal_reachable(self) -> bool:
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            if s == self._goal_id:
                return True
            for t in self.successors(s):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return False
