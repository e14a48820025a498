import logging

import numpy as np
import pytest

from parallel_gbfs.harness.metrics import BASELINE_KEY, aggregate, geometric_mean
from parallel_gbfs.harness.records import RunRecord

KP = "KPGBFS@4"
CP = "CPGBFS[inflight-minh]@4"


def _record(domain, engine="gbfs", k=1, wall=1.0, evaluations=10, expansions=5, cause="", constraint=None, sge=False):
    if constraint is None:
        constraint = "inflight-minh" if engine == "cpgbfs" else "none"
    solved = not cause
    return RunRecord(
        domain=domain,
        kind="plateau-synthetic",
        seed=0,
        engine=engine,
        constraint=constraint,
        sge=sge,
        k=k,
        scheduler="deterministic",
        sched_seed=0,
        solved=solved,
        fail_cause=cause,
        expansions=expansions,
        evaluations=evaluations,
        wasted_evals=0,
        wall_s=wall,
        eval_rate=evaluations / wall if wall > 0 else 0.0,
        peak_open=1,
    )


def _records():
    return [
        _record("a", wall=2.0, evaluations=100, expansions=10),
        _record("b", wall=8.0, evaluations=400, expansions=40),
        _record("c", wall=300.0, evaluations=5, expansions=1, cause="time"),
        _record("a", "kpgbfs", 4, wall=1.0, evaluations=200, expansions=20),
        _record("b", "kpgbfs", 4, wall=2.0, evaluations=800, expansions=80),
        _record("c", "kpgbfs", 4, wall=1.0, evaluations=10, expansions=5),
        _record("a", "cpgbfs", 4, wall=0.5, evaluations=100, expansions=10),
        _record("b", "cpgbfs", 4, wall=4.0, evaluations=400, expansions=40),
        _record("c", "cpgbfs", 4, wall=0.0, evaluations=0, expansions=0, cause="memory"),
    ]


def test_geometric_mean_basics():
    assert geometric_mean([5, 5, 5]) == pytest.approx(5)
    assert geometric_mean([2, 8]) == pytest.approx(4)
    with pytest.raises(ValueError):
        geometric_mean([])
    with pytest.raises(ValueError):
        geometric_mean([1, 0])


def test_geometric_mean_matches_root_of_product():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        v = rng.uniform(0.1, 10.0, size=rng.integers(1, 20))
        expected = np.prod(v) ** (1.0 / len(v))
        assert abs(geometric_mean(v) - expected) <= 1e-12 * expected


def test_aggregate_over_common_solved():
    report = aggregate(_records())

    assert report.instances == ("a", "b", "c")
    assert report.common_solved == ("a", "b")
    assert list(report.configs) == [BASELINE_KEY, KP, CP]

    gbfs = report.configs[BASELINE_KEY]
    assert gbfs.eval_rate == pytest.approx(50)
    assert gbfs.expansions == pytest.approx(20)
    assert gbfs.search_time == pytest.approx(4)
    assert gbfs.speedup == pytest.approx(1)

    kp = report.configs[KP]
    assert (kp.label, kp.k) == ("KPGBFS", 4)
    assert kp.eval_rate == pytest.approx(np.sqrt(200 * 400))
    assert kp.expansions == pytest.approx(40)
    assert kp.search_time == pytest.approx(np.sqrt(2))
    assert kp.speedup == pytest.approx(3)

    assert report.configs[CP].speedup == pytest.approx(3)
    assert report.ratio("expansions", KP, BASELINE_KEY) == pytest.approx(2)
    assert report.ratio("eval_rate", CP, BASELINE_KEY) == pytest.approx(np.sqrt(200 * 100) / 50)


def test_coverage_and_pairwise():
    report = aggregate(_records())

    assert report.coverage == {BASELINE_KEY: 2, KP: 3, CP: 2}
    assert report.configs[KP].runs == 3
    assert report.pairwise[KP][BASELINE_KEY] == 1
    assert report.pairwise[BASELINE_KEY][KP] == 0
    assert report.pairwise[CP][BASELINE_KEY] == 0


def test_unsolved_instance_does_not_move_means():
    base = aggregate(_records())
    extra = _records() + [
        _record("d", wall=1.0, evaluations=3, expansions=1),
        _record("d", "kpgbfs", 4, wall=0.0, evaluations=0, expansions=0, cause="error"),
        _record("d", "cpgbfs", 4, wall=0.5, evaluations=1, expansions=1),
    ]
    report = aggregate(extra)

    assert report.common_solved == base.common_solved
    for key in base.configs:
        assert report.configs[key].eval_rate == pytest.approx(base.configs[key].eval_rate)


def test_rate_ratio_rounding():
    records = [
        _record("a", "kpgbfs", 8, wall=1.0, evaluations=33632),
        _record("a", "kpgbfs", 8, wall=1.0, evaluations=40097, sge=True),
    ]
    report = aggregate(records)

    assert round(report.ratio("eval_rate", "KPGBFS_S@8", "KPGBFS@8"), 2) == 1.19
    # no sequential baseline in these records
    assert report.configs["KPGBFS@8"].speedup is None


def test_disjoint_solved_sets_leave_means_undefined():
    records = [
        _record("a"),
        _record("b", cause="time", wall=300.0),
        _record("a", "kpgbfs", 4, cause="memory", wall=1.0),
        _record("b", "kpgbfs", 4),
    ]
    report = aggregate(records)

    assert not report.means_defined
    assert report.configs[KP].eval_rate is None
    assert report.ratio("eval_rate", KP, BASELINE_KEY) is None
    assert report.coverage == {BASELINE_KEY: 1, KP: 1}
    assert report.pairwise[KP][BASELINE_KEY] == 1
    assert "n/a" in report.to_markdown()


def test_zero_values_are_floored(caplog):
    records = [_record("a", wall=0.0, evaluations=1, expansions=0)]

    with caplog.at_level(logging.WARNING, logger="parallel_gbfs.harness.metrics"):
        report = aggregate(records)

    summary = report.configs[BASELINE_KEY]
    assert summary.expansions == 1.0
    assert summary.search_time == pytest.approx(1e-6)
    assert summary.eval_rate == 1.0
    assert "floored" in caplog.text


def test_later_record_replaces_earlier():
    records = [_record("a", wall=2.0, evaluations=10), _record("a", wall=1.0, evaluations=10)]

    assert aggregate(records).configs[BASELINE_KEY].search_time == pytest.approx(1.0)


def test_report_outputs():
    report = aggregate(_records())
    text = report.to_markdown()

    assert "Means over 2 instances" in text
    assert "| KPGBFS | " in text
    assert "k=4" in text
    assert "Solved by row, not by column" in text
    payload = report.to_json()
    assert payload["coverage"][KP] == 3
    assert payload["configs"][BASELINE_KEY]["speedup"] == pytest.approx(1)

    with pytest.raises(ValueError, match="unknown configuration"):
        report.ratio("eval_rate", "ASTAR@1", BASELINE_KEY)
    with pytest.raises(ValueError, match="unknown metric"):
        report.configs[KP].value("memory")
    with pytest.raises(ValueError):
        aggregate([])
