import pytest

from parallel_gbfs.engines.structures import (
    ClosedSet,
    EvaluationTable,
    InFlightRegistry,
    OpenEntry,
    OpenList,
    SiblingGroup,
    UnevaluatedQueue,
)


def test_open_list_orders_by_h_then_insertion():
    open_list = OpenList()
    open_list.push(10, 3)
    open_list.push(11, 1)
    open_list.push(12, 1)
    open_list.push(13, 2)

    assert open_list.top().state == 11
    assert [open_list.pop().state for _ in range(4)] == [11, 12, 13, 10]
    assert not open_list
    assert open_list.peak == 4


def test_open_list_seq_and_empty_errors():
    open_list = OpenList()
    assert open_list.push(1, 0) == 0
    assert open_list.push(2, 0, parent=1) == 1
    entry = open_list.pop()
    assert entry == OpenEntry(h=0, seq=0, state=1)
    assert open_list.pop().parent == 1
    with pytest.raises(IndexError):
        open_list.pop()
    with pytest.raises(IndexError):
        open_list.top()


def test_closed_set_admits_once():
    closed = ClosedSet()

    assert closed.add(0, None)
    assert closed.add(3, 0)
    assert not closed.add(3, 1)
    assert closed.parents == {0: None, 3: 0}
    assert 3 in closed
    assert len(closed) == 2


def test_sibling_group_completion():
    group = SiblingGroup(parent=0, members=[1, 2])

    assert not group.resolve(2, 5)
    assert group.resolve(1, 4)
    assert group.h_values == {1: 4, 2: 5}
    with pytest.raises(RuntimeError):
        group.resolve(1, 4)


def test_unevaluated_queue_is_fifo():
    queue = UnevaluatedQueue()
    a = SiblingGroup(parent=0, members=[1, 2])
    b = SiblingGroup(parent=1, members=[3])
    queue.push_group(a)
    queue.push_group(b)

    items = [queue.pop() for _ in range(3)]
    assert [(i.state, i.parent) for i in items] == [(1, 0), (2, 0), (3, 1)]
    assert items[2].group is b
    assert queue.pop() is None


def test_evaluation_table_claims_and_waiters():
    table = EvaluationTable()
    g2 = SiblingGroup(parent=1, members=[5])

    assert table.claim(5)
    assert not table.claim(5)
    table.wait(5, g2)
    assert table.lookup(5) is None
    assert table.store(5, 7) == [g2]
    assert table.lookup(5) == 7
    assert not table.claim(5)
    assert len(table) == 1


def test_inflight_registry_and_lower_bound():
    registry = InFlightRegistry()
    e = registry.start(4, 2)

    assert e.pending_lower_bound() is None
    e.members[7] = None
    e.members[8] = 3
    assert e.pending_lower_bound() == 0
    e.members[7] = 5
    assert e.pending_lower_bound() == 3

    assert 4 in registry and len(registry) == 1
    assert list(registry) == [e]
    with pytest.raises(RuntimeError):
        registry.start(4, 2)
    registry.finish(4)
    assert not registry
    assert registry.get(4) is None
