from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, Iterator, List, Optional


@dataclass(frozen=True, order=True)
class OpenEntry:
    """
    Open list entry, ordered by ``(h, seq)``.

    Attributes
    ----------
    h:
        Heuristic value (GBFS priority).
    seq:
        Insertion sequence number; lower is earlier (FIFO tie-breaking).
    state:
        State id.
    parent:
        State the entry was generated from, ``None`` for the root.
    """
    h: int
    seq: int
    state: int = field(compare=False)
    parent: Optional[int] = field(default=None, compare=False)


class OpenList:
    """Binary-heap priority queue of :class:`OpenEntry`, min ``(h, seq)`` first."""

    def __init__(self) -> None:
        self._heap: List[OpenEntry] = []
        self._next_seq = 0
        self.peak = 0

    def push(self, state: int, h: int, parent: Optional[int] = None) -> int:
        seq = self._next_seq
        self._next_seq += 1
        heapq.heappush(self._heap, OpenEntry(h=h, seq=seq, state=state, parent=parent))
        self.peak = max(self.peak, len(self._heap))
        return seq

    def top(self) -> OpenEntry:
        if not self._heap:
            raise IndexError("top of an empty open list")
        return self._heap[0]

    def pop(self) -> OpenEntry:
        if not self._heap:
            raise IndexError("pop from an empty open list")
        return heapq.heappop(self._heap)

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)


class ClosedSet:
    """States admitted to the search, each at most once, with parent links."""

    def __init__(self) -> None:
        self._parents: Dict[int, Optional[int]] = {}

    def add(self, state: int, parent: Optional[int]) -> bool:
        """Admit ``state``; False if it was already admitted."""
        if state in self._parents:
            return False
        self._parents[state] = parent
        return True

    def __contains__(self, state: int) -> bool:
        return state in self._parents

    def __len__(self) -> int:
        return len(self._parents)

    @property
    def parents(self) -> Dict[int, Optional[int]]:
        return self._parents


@dataclass(eq=False)
class SiblingGroup:
    """
    Successors of one expansion, inserted into Open together once every
    member has an h value.
    """
    parent: int
    members: List[int]
    h_values: Dict[int, int] = field(default_factory=dict)
    remaining: int = -1

    def __post_init__(self) -> None:
        if self.remaining < 0:
            self.remaining = len(self.members)

    def resolve(self, state: int, h: int) -> bool:
        """Record ``h`` for ``state``; True when the group just became complete."""
        if state in self.h_values:
            raise RuntimeError(f"state {state} resolved twice in the group of {self.parent}")
        if self.remaining <= 0:
            raise RuntimeError(f"group of {self.parent} is already complete")
        self.h_values[state] = h
        self.remaining -= 1
        return self.remaining == 0


@dataclass(frozen=True)
class UnevaluatedEntry:
    state: int
    parent: int
    group: SiblingGroup


class UnevaluatedQueue:
    """FIFO of generated successors awaiting evaluation."""

    def __init__(self) -> None:
        self._queue: Deque[UnevaluatedEntry] = deque()

    def push_group(self, group: SiblingGroup) -> None:
        for state in group.members:
            self._queue.append(UnevaluatedEntry(state=state, parent=group.parent, group=group))

    def pop(self) -> Optional[UnevaluatedEntry]:
        return self._queue.popleft() if self._queue else None

    def __len__(self) -> int:
        return len(self._queue)

    def __bool__(self) -> bool:
        return bool(self._queue)


class EvaluationTable:
    """
    Evaluated h values plus in-progress claims, so no state is evaluated
    twice. Groups that meet a claimed state wait on the claim.
    """

    def __init__(self) -> None:
        self._h: Dict[int, int] = {}
        self._claims: Dict[int, List[SiblingGroup]] = {}

    def lookup(self, state: int) -> Optional[int]:
        return self._h.get(state)

    def claim(self, state: int) -> bool:
        """True if the caller now owns the evaluation of ``state``."""
        if state in self._h or state in self._claims:
            return False
        self._claims[state] = []
        return True

    def wait(self, state: int, group: SiblingGroup) -> None:
        self._claims[state].append(group)

    def store(self, state: int, h: int) -> List[SiblingGroup]:
        """Store ``h`` and release the claim, returning the waiting groups."""
        self._h[state] = h
        return self._claims.pop(state, [])

    def __len__(self) -> int:
        return len(self._h)


@dataclass
class InFlightExpansion:
    """
    A state between its pop from Open and the batch insertion of its
    successors.

    Attributes
    ----------
    state, h:
        The expanded state and its heuristic value.
    members:
        Successors generated so far, mapped to their h once known.
    generation_complete:
        True once every successor has been generated.
    """
    state: int
    h: int
    members: Dict[int, Optional[int]] = field(default_factory=dict)
    generation_complete: bool = False

    def pending_lower_bound(self) -> Optional[int]:
        """Smallest h among members, unknown values counted as 0; None without members."""
        return min((0 if v is None else v for v in self.members.values()), default=None)


class InFlightRegistry:
    """Expansions in progress, keyed by expanded state."""

    def __init__(self) -> None:
        self._entries: Dict[int, InFlightExpansion] = {}

    def start(self, state: int, h: int) -> InFlightExpansion:
        if state in self._entries:
            raise RuntimeError(f"state {state} is already being expanded")
        entry = InFlightExpansion(state=state, h=h)
        self._entries[state] = entry
        return entry

    def finish(self, state: int) -> None:
        del self._entries[state]

    def get(self, state: int) -> Optional[InFlightExpansion]:
        return self._entries.get(state)

    def __contains__(self, state: int) -> bool:
        return state in self._entries

    def __iter__(self) -> Iterator[InFlightExpansion]:
        return iter(list(self._entries.values()))

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)
