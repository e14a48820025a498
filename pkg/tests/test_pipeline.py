from pathlib import Path

import pytest

from parallel_gbfs.domains import DomainSpec, gen_plateau
from parallel_gbfs.engines import EngineConfig
from parallel_gbfs.oracle import OracleConfig
from parallel_gbfs.pipeline import (
    OracleReport,
    SolveOutcome,
    oracle_report,
    solve_domain,
    solve_topology_file,
)

DATA = Path(__file__).parent / "data"


def test_solve_topology_file():
    config = EngineConfig(workers=2, scheduler="deterministic", heuristic_delay_s=10e-6)
    outcome = solve_topology_file(DATA / "diamond.topo", config)

    assert isinstance(outcome, SolveOutcome)
    assert outcome.result.solved
    outcome.result.path.validate(outcome.topology)
    payload = outcome.to_json()
    assert payload["topology"] == outcome.topology.fingerprint()
    assert payload["path"][0] == 0


def test_solve_domain_default_config():
    outcome = solve_domain(DomainSpec("grid-nav", {"rows": 4, "cols": 4}))

    assert outcome.result.solved
    assert outcome.result.config.label == "CPGBFS[inflight-minh]"
    assert outcome.result.path.states[-1] == 15


def test_oracle_report_agreement():
    report = oracle_report(gen_plateau(3, 2, sibling_fanout=2, sibling_depth=1))

    assert isinstance(report, OracleReport)
    assert report.agree is True
    assert report.status == "ok"
    assert report.to_json()["enum"]["members"] == [0, 1, 2, 3]


def test_oracle_report_single_method():
    report = oracle_report(gen_plateau(10, 3), "hwm")

    assert report.agree is None
    assert report.status == "ok"
    assert set(report.to_json()) == {"status", "hwm"}


def test_oracle_report_inconclusive():
    report = oracle_report(gen_plateau(4, 3), config=OracleConfig(budget=2))

    assert report.status == "inconclusive"
    assert report.agree is None
    assert report.sets["hwm"].sorted_members() == [0, 1, 2, 3, 4]


def test_oracle_report_rejects_unknown_method():
    with pytest.raises(ValueError, match="unknown oracle method"):
        oracle_report(gen_plateau(2, 1), "sat")
