import json
import math

import pytest

from parallel_gbfs.domains import DomainSpec
from parallel_gbfs.engines import EngineConfig
from parallel_gbfs.harness import (
    CSV_COLUMNS,
    RunLimits,
    RunRecord,
    Suite,
    append_records,
    desk_suite,
    emit_plot_data,
    load_suite,
    plot_data,
    read_records,
    run_benchmark,
    save_suite,
    standard_configs,
)

PLATEAU = DomainSpec("plateau-synthetic", {"depth": 3, "width": 2}, seed=0)


def _configs():
    return [
        EngineConfig(algorithm="gbfs", heuristic_delay_s=0.0, scheduler="deterministic"),
        EngineConfig(algorithm="kpgbfs", workers=2, sge=True, heuristic_delay_s=10e-6, scheduler="deterministic"),
        EngineConfig(workers=2, heuristic_delay_s=10e-6, scheduler="deterministic"),
    ]


def test_run_record_validation():
    record = RunRecord.failed(PLATEAU, EngineConfig(workers=4), "time")
    assert record.config_key == "CPGBFS[inflight-minh]@4"
    assert not record.solved

    with pytest.raises(ValueError, match="failure cause"):
        RunRecord.failed(PLATEAU, EngineConfig(), "segfault")
    with pytest.raises(ValueError, match="eval_rate"):
        RunRecord(**{**record.to_row(), "evaluations": 10, "wall_s": 2.0, "eval_rate": 4.0})
    with pytest.raises(ValueError, match="no failure cause"):
        RunRecord(**{**record.to_row(), "solved": True})


def test_run_benchmark_writes_rows_as_it_goes(tmp_path):
    csv_path = tmp_path / "out" / "runs.csv"
    suite = [PLATEAU, DomainSpec("random-graph", {"num_states": 30, "edge_density": 0.1}, seed=2)]

    records = run_benchmark(suite, _configs(), csv_path=csv_path)

    assert len(records) == 6
    assert all(r.solved for r in records)
    assert [r.config_key for r in records[:3]] == ["GBFS@1", "KPGBFS_S@2", "CPGBFS[inflight-minh]@2"]
    assert records[0].domain == PLATEAU.label
    assert read_records(csv_path) == records

    header = csv_path.read_text().splitlines()[0]
    assert header.split(",") == list(CSV_COLUMNS)


def test_append_keeps_single_header(tmp_path):
    path = tmp_path / "runs.csv"
    first = RunRecord.failed(PLATEAU, EngineConfig(), "memory")
    second = RunRecord.failed(PLATEAU, EngineConfig(workers=8, sge=True), "error")

    append_records(path, [first])
    append_records(path, [second])

    assert read_records(path) == [first, second]
    assert sum(1 for line in path.read_text().splitlines() if line.startswith("domain,")) == 1


def test_read_records_rejects_missing_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("domain,kind\nx,y\n")

    with pytest.raises(ValueError, match="missing columns"):
        read_records(path)


def test_limits_override_configs():
    limits = RunLimits(time_limit_s=1e-6, memory_limit_mb=64, heuristic_delay_s=50e-6)
    records = run_benchmark([PLATEAU], _configs()[1:], limits=limits)

    assert [r.fail_cause for r in records] == ["time", "time"]
    assert limits.apply(EngineConfig()).memory_limit_mb == 64
    assert RunLimits().apply(EngineConfig(heuristic_delay_s=7e-6)).heuristic_delay_s == 7e-6
    with pytest.raises(ValueError):
        RunLimits(time_limit_s=0)


def test_failed_instance_becomes_error_record(tmp_path, caplog):
    missing = DomainSpec("explicit-file", {"path": str(tmp_path / "nope.topo")})

    records = run_benchmark([missing], _configs()[:1])

    assert records[0].fail_cause == "error"
    assert records[0].evaluations == 0
    assert "failed" in caplog.text


def test_run_benchmark_rejects_empty_input():
    with pytest.raises(ValueError, match="empty"):
        run_benchmark([], _configs())
    with pytest.raises(ValueError, match="no engine configurations"):
        run_benchmark([PLATEAU], [])


def test_plot_data_same_configuration_lies_on_diagonal():
    records = run_benchmark([PLATEAU, DomainSpec("plateau-synthetic", {"depth": 4, "width": 3})], _configs()[:1])
    data = plot_data(records, "GBFS@1", "GBFS@1", "expansions")

    assert data.points() == [(3.0, 3.0), (4.0, 4.0)]
    assert data.metadata["diagonals"] == [0.1, 1.0, 10.0]


def test_plot_data_fail_band(tmp_path):
    solved = run_benchmark([PLATEAU], _configs()[:1])[0]
    failed = RunRecord.failed(PLATEAU, EngineConfig(workers=2), "time")

    data = emit_plot_data([solved, failed], "GBFS@1", "CPGBFS[inflight-minh]@2", "expansions", tmp_path / "plot")

    assert data.fail_value == 30.0
    assert data.points() == [(3.0, 30.0)]
    assert bool(data.frame["y_fail"].iloc[0])
    meta = json.loads((tmp_path / "plot.json").read_text())
    assert meta["fail"] == {"label": "fail", "value": 30.0}
    assert (tmp_path / "plot.csv").exists()

    with pytest.raises(ValueError, match="not found"):
        plot_data([solved], "GBFS@1", "KPGBFS@8")
    with pytest.raises(ValueError, match="unknown metric"):
        plot_data([solved], "GBFS@1", "GBFS@1", "peak_open")


def test_suite_yaml_round_trip(tmp_path):
    suite = Suite(
        domains=[PLATEAU, DomainSpec("grid-nav", {"rows": 5, "cols": 5, "obstacle_density": 0.1}, seed=3)],
        configs=_configs(),
        limits=RunLimits(time_limit_s=10),
    )
    path = save_suite(suite, tmp_path / "suites" / "small.yaml")

    assert load_suite(path) == suite


def test_suite_validation(tmp_path):
    with pytest.raises(ValueError, match="no domains"):
        Suite(domains=[], configs=_configs())
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError, match="mapping"):
        load_suite(path)


def test_standard_and_desk_suites():
    configs = standard_configs(threads=(2, 4))
    labels = [c.label for c in configs]

    assert labels[:5] == ["GBFS", "KPGBFS", "KPGBFS_S", "CPGBFS[inflight-minh]", "CPGBFS[inflight-minh]_S"]
    assert len(configs) == 9
    assert all(math.isclose(c.heuristic_delay_s, 100e-6) for c in configs)

    suite = desk_suite(threads=(2,), per_kind=1)
    assert [d.kind for d in suite.domains] == [
        "plateau-synthetic", "plateau-synthetic", "grid-nav", "sliding-tile", "random-graph",
    ]
    assert len(suite.configs) == 5
