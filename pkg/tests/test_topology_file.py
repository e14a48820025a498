from pathlib import Path

import pytest

from parallel_gbfs.domains import gen_plateau
from parallel_gbfs.formats import (
    TopologyParseError,
    dumps_topology,
    load_topology,
    read_topology_file,
    write_topology_file,
)
from parallel_gbfs.topology import TopologyValidationError

DATA = Path(__file__).parent / "data"


def test_read_fig1_fixture():
    t = read_topology_file(DATA / "fig1.topo")

    assert t.num_states == 17
    assert t.initial == 0
    assert t.goals == frozenset({4})
    assert t.successors(0) == (1, 5, 6, 7)
    assert t.successors(3) == (4, 14, 15, 16)
    assert [t.h(s) for s in range(5)] == [4, 3, 2, 1, 0]


def test_fig1_fixture_matches_generator():
    fixture = read_topology_file(DATA / "fig1.topo")

    assert fixture == gen_plateau(4, 3)
    assert fixture.fingerprint() == gen_plateau(4, 3).fingerprint()


def test_write_then_read(tmp_path):
    t = gen_plateau(3, 2, seed=5)
    out = write_topology_file(tmp_path / "sub" / "t.topo", t, comment="plateau d=3 x=2")

    assert out.exists()
    assert out.read_text().startswith("# plateau d=3 x=2\n")
    assert read_topology_file(out) == t


def test_dumps_is_canonical():
    text = dumps_topology(gen_plateau(2, 1))

    assert text.splitlines()[:3] == ["state 0 h=2 init", "state 1 h=1", "state 2 h=0 goal"]
    assert "edge 0 1" in text
    assert dumps_topology(load_topology(text)) == text


def test_comments_and_blank_lines_are_ignored():
    text = "# header\n\nstate 0 h=1 init  # start\nstate 1 h=0 goal\nedge 0 1\n"
    t = load_topology(text)

    assert t.successors(0) == (1,)


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("state 0 h=1 init\nbogus line\n", 2),
        ("state 0 h=1 init\nstate 0 h=0 goal\n", 2),
        ("state 0 h=1 init init\nstate 1 h=0 goal\n", 1),
        ("state 0 h=1 init\nstate 1 h=0 goal\nedge 0 9\n", 3),
        ("state 0 h=x init\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(TopologyParseError) as excinfo:
        load_topology(text)
    assert excinfo.value.lineno == lineno


def test_structural_errors():
    with pytest.raises(TopologyValidationError, match="exactly one init"):
        load_topology("state 0 h=1\nstate 1 h=0 goal\n")
    with pytest.raises(TopologyValidationError, match="contiguous"):
        load_topology("state 0 h=1 init\nstate 2 h=0 goal\n")
    with pytest.raises(TopologyValidationError, match="nonzero h"):
        load_topology("state 0 h=1 init\nstate 1 h=2 goal\nedge 0 1\n")
