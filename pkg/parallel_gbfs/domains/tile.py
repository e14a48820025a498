from __future__ import annotations

import hashlib
from math import factorial
from typing import List, Optional, Sequence, Tuple

import numpy as np

from parallel_gbfs.topology import StateSpaceTopology


# blank moves, in successor order: up, down, left, right
_MOVES = ((-1, 0), (1, 0), (0, -1), (0, 1))


def rank_permutation(perm: Sequence[int]) -> int:
    """Lehmer rank of ``perm`` in ``[0, len(perm)!)``."""
    n = len(perm)
    rank = 0
    remaining = sorted(perm)
    for i, value in enumerate(perm):
        idx = remaining.index(value)
        rank += idx * factorial(n - 1 - i)
        remaining.pop(idx)
    return rank


def unrank_permutation(rank: int, n: int) -> Tuple[int, ...]:
    """Inverse of :func:`rank_permutation` over ``0 .. n-1``."""
    remaining = list(range(n))
    perm = []
    for i in range(n):
        f = factorial(n - 1 - i)
        idx, rank = divmod(rank, f)
        perm.append(remaining.pop(idx))
    return tuple(perm)


def is_solvable(perm: Sequence[int], width: int) -> bool:
    """
    Parity test for reaching the goal ``(1, 2, ..., n-1, 0)``.

    Odd widths need an even inversion count. Even widths need
    ``inversions + blank row counted from the bottom (1-based)`` to be odd.
    """
    tiles = [t for t in perm if t != 0]
    inversions = sum(
        1 for i in range(len(tiles)) for j in range(i + 1, len(tiles)) if tiles[i] > tiles[j]
    )
    if width % 2 == 1:
        return inversions % 2 == 0
    height = len(perm) // width
    blank_row_from_bottom = height - perm.index(0) // width
    return (inversions + blank_row_from_bottom) % 2 == 1


class SlidingTilePuzzle(StateSpaceTopology):
    """
    Sliding-tile puzzle on a ``width x height`` board, generated on demand.

    State ids are Lehmer ranks of the board permutation (0 is the blank).
    The heuristic is the Manhattan distance of every tile to its goal cell.
    """

    def __init__(self, permutation: Sequence[int], width: int, height: Optional[int] = None) -> None:
        height = width if height is None else height
        if width < 2 or height < 2:
            raise ValueError("tile boards need at least 2 rows and 2 columns")
        n = width * height
        perm = tuple(int(t) for t in permutation)
        if sorted(perm) != list(range(n)):
            raise ValueError(f"permutation must contain each of 0..{n - 1} exactly once")
        if not is_solvable(perm, width):
            raise ValueError("tile permutation is unsolvable (parity check failed)")

        self.width = width
        self.height = height
        self.permutation = perm
        self.goal_permutation = tuple(range(1, n)) + (0,)
        self.initial = rank_permutation(perm)
        self.num_states = factorial(n)
        self._goal_rank = rank_permutation(self.goal_permutation)
        self._goal_cells = {t: divmod(i, width) for i, t in enumerate(self.goal_permutation)}

    @classmethod
    def scrambled(cls, width: int, moves: int, seed: int = 0, height: Optional[int] = None) -> "SlidingTilePuzzle":
        """
        Instance reached by ``moves`` random blank moves from the goal,
        never undoing the previous move.
        """
        height = width if height is None else height
        rng = np.random.default_rng(seed)
        board = list(range(1, width * height)) + [0]
        blank = len(board) - 1
        previous = None
        for _ in range(moves):
            row, col = divmod(blank, width)
            options = []
            for dr, dc in _MOVES:
                r, c = row + dr, col + dc
                if 0 <= r < height and 0 <= c < width and r * width + c != previous:
                    options.append(r * width + c)
            target = options[int(rng.integers(len(options)))]
            board[blank], board[target] = board[target], board[blank]
            previous, blank = blank, target
        return cls(board, width, height)

    def board(self, state: int) -> Tuple[int, ...]:
        return unrank_permutation(state, self.width * self.height)

    def successors(self, state: int) -> List[int]:
        if state == self._goal_rank:
            return []
        board = list(self.board(state))
        blank = board.index(0)
        row, col = divmod(blank, self.width)
        result = []
        for dr, dc in _MOVES:
            r, c = row + dr, col + dc
            if 0 <= r < self.height and 0 <= c < self.width:
                target = r * self.width + c
                board[blank], board[target] = board[target], board[blank]
                result.append(rank_permutation(board))
                board[blank], board[target] = board[target], board[blank]
        return result

    def h(self, state: int) -> int:
        total = 0
        for i, tile in enumerate(self.board(state)):
            if tile == 0:
                continue
            row, col = divmod(i, self.width)
            goal_row, goal_col = self._goal_cells[tile]
            total += abs(row - goal_row) + abs(col - goal_col)
        return total

    def is_goal(self, state: int) -> bool:
        return state == self._goal_rank

    def fingerprint(self) -> str:
        descriptor = f"sliding-tile:{self.width}x{self.height}:{','.join(map(str, self.permutation))}"
        return hashlib.sha256(descriptor.encode("utf-8")).hexdigest()
