import math
from pathlib import Path

import pytest

from parallel_gbfs.domains import GridNavigation, gen_plateau
from parallel_gbfs.engines.trace import EventKind, SearchTrace
from parallel_gbfs.formats import read_topology_file
from parallel_gbfs.oracle import (
    FingerprintMismatchError,
    OracleCapError,
    OracleConfig,
    OracleInconclusive,
    bts_enumerate,
    bts_via_hwm,
    check_trace_constrained,
    high_water_marks,
)
from parallel_gbfs.topology import ExplicitTopology

DATA = Path(__file__).parent / "data"


def _tie_topology():
    # 0 -> a(1), b(1); a -> goal; b -> d(3) -> goal. d is never selected.
    return ExplicitTopology.from_edges(
        h_values=[2, 1, 1, 0, 3],
        edges=[(0, 1), (0, 2), (1, 3), (2, 4), (4, 3)],
        initial=0,
        goals=[3],
    )


def test_high_water_marks_on_plateau():
    hwm = high_water_marks(read_topology_file(DATA / "fig1.topo"))

    assert len(hwm) == 17
    assert [hwm[s] for s in range(5)] == [4.0, 3.0, 2.0, 1.0, 0.0]
    assert all(math.isinf(hwm[s]) for s in range(5, 17))
    assert 16 in hwm
    assert hwm.as_dict()[2] == 2.0


def test_high_water_mark_takes_best_route():
    hwm = high_water_marks(_tie_topology())

    assert hwm[4] == 3.0
    assert hwm[2] == 3.0
    assert hwm[1] == 1.0
    assert hwm[0] == 2.0


def test_plateau_bts_is_chain_plus_goal():
    t = read_topology_file(DATA / "fig1.topo")

    for bts in (bts_enumerate(t), bts_via_hwm(t)):
        assert bts.sorted_members() == [0, 1, 2, 3, 4]
        assert bts.topology_hash == t.fingerprint()


def test_tie_breaking_members():
    t = _tie_topology()
    enum = bts_enumerate(t)
    hwm = bts_via_hwm(t)

    assert enum.members == frozenset({0, 1, 2, 3})
    assert hwm.members == enum.members
    assert 4 not in enum


def test_all_successors_goals():
    t = ExplicitTopology.from_edges([1, 0, 0], [(0, 1), (0, 2)], initial=0, goals=[1, 2])

    assert bts_enumerate(t).sorted_members() == [0, 1, 2]
    assert bts_via_hwm(t).sorted_members() == [0, 1, 2]


def test_dead_end_detour_is_a_member():
    t = read_topology_file(DATA / "diamond.topo")

    assert bts_enumerate(t).sorted_members() == [0, 1, 2, 3]
    assert bts_via_hwm(t).sorted_members() == [0, 1, 2, 3]


def test_unreachable_states_are_excluded():
    t = ExplicitTopology.from_edges([1, 0, 0], [(0, 1)], initial=0, goals=[1, 2])

    assert bts_enumerate(t).sorted_members() == [0, 1]
    assert bts_via_hwm(t).sorted_members() == [0, 1]


def test_enumeration_caps():
    with pytest.raises(OracleCapError):
        bts_enumerate(gen_plateau(10, 3))
    with pytest.raises(OracleInconclusive) as excinfo:
        bts_enumerate(read_topology_file(DATA / "fig1.topo"), OracleConfig(budget=2))
    assert excinfo.value.budget == 2

    # the structural oracle handles the larger plateau
    assert bts_via_hwm(gen_plateau(10, 3)).sorted_members() == list(range(11))


def test_oracle_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(max_states=0)


def test_hwm_oracle_on_implicit_domain():
    grid = GridNavigation(3, 3)
    bts = bts_via_hwm(grid)

    assert grid.initial in bts
    assert 8 in bts
    assert bts.stats["states"] == 9


def test_bts_json():
    bts = bts_enumerate(read_topology_file(DATA / "fig1.topo"))
    payload = bts.to_json()

    assert payload["members"] == [0, 1, 2, 3, 4]
    assert payload["method"] == "enum"
    assert payload["stats"]["configurations"] == 5


def _trace(topology, popped):
    trace = SearchTrace(topology.fingerprint(), workers=1)
    for i, s in enumerate(popped):
        trace.record(i, 0, EventKind.POP_OPEN, s, h=topology.h(s), seq=i)
    return trace


def test_check_trace_constrained():
    t = read_topology_file(DATA / "fig1.topo")
    bts = bts_via_hwm(t)

    ok = check_trace_constrained(_trace(t, [0, 1, 2, 3, 4]), bts)
    assert ok.passed
    assert ok.checked == 5

    bad = check_trace_constrained(_trace(t, [0, 5, 1, 5, 8]), bts)
    assert not bad.passed
    assert bad.violations == (5, 8)
    assert bad.to_json()["violations"] == [5, 8]


def test_check_trace_rejects_other_topology():
    bts = bts_via_hwm(gen_plateau(3, 1))
    trace = _trace(gen_plateau(4, 3), [0])

    with pytest.raises(FingerprintMismatchError):
        check_trace_constrained(trace, bts)
