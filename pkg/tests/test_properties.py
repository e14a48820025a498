import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from parallel_gbfs.domains import gen_random
from parallel_gbfs.engines import EngineConfig, deterministic_run, expanded_sequence, gbfs_sequential
from parallel_gbfs.oracle import (
    OracleConfig,
    OracleInconclusive,
    bts_enumerate,
    bts_via_hwm,
    check_trace_constrained,
)

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
densities = st.floats(min_value=0.05, max_value=0.6)


def _random_topologies(count, max_states, h_range, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield gen_random(
            int(rng.integers(2, max_states + 1)),
            edge_density=float(rng.uniform(0.05, 0.6)),
            h_max=int(rng.integers(h_range[0], h_range[1] + 1)),
            goal_count=int(rng.integers(1, 4)),
            seed=int(rng.integers(2 ** 32)),
        )


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=12),
    density=densities,
    h_max=st.integers(0, 4),
    goal_count=st.integers(1, 3),
    seed=seeds,
)
def test_oracles_agree_on_small_graphs(n, density, h_max, goal_count, seed):
    t = gen_random(n, edge_density=density, h_max=h_max, goal_count=goal_count, seed=seed)

    assert bts_enumerate(t).members == bts_via_hwm(t).members


def test_oracles_agree_on_seeded_sweep():
    for t in _random_topologies(100, max_states=12, h_range=(0, 4), seed=11):
        assert bts_enumerate(t).members == bts_via_hwm(t).members, t.fingerprint()


def test_constrained_runs_stay_in_enumerated_bts():
    checked = skipped = 0
    oracle_config = OracleConfig(budget=100_000)

    for t in _random_topologies(200, max_states=30, h_range=(2, 6), seed=7):
        try:
            bts = bts_enumerate(t, oracle_config)
        except OracleInconclusive:
            skipped += 1
            continue
        checked += 1

        for workers in (2, 4, 8):
            for sge in (False, True):
                config = EngineConfig(workers=workers, sge=sge, heuristic_delay_s=20e-6)
                for sched_seed in range(32):
                    result = deterministic_run(t, config, seed=sched_seed)
                    assert result.solved
                    report = check_trace_constrained(result.trace, bts)
                    assert report.passed, (t.fingerprint(), workers, sge, sched_seed, report.violations)

    assert checked + skipped == 200
    assert checked >= 150


@settings(max_examples=25, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=30),
    density=densities,
    seed=seeds,
    workers=st.sampled_from([2, 4, 8]),
    sge=st.booleans(),
    sched_seed=st.integers(0, 1000),
)
def test_constrained_runs_stay_in_bts(n, density, seed, workers, sge, sched_seed):
    t = gen_random(n, edge_density=density, seed=seed)
    config = EngineConfig(workers=workers, sge=sge, heuristic_delay_s=20e-6)
    result = deterministic_run(t, config, seed=sched_seed)

    assert result.solved
    result.path.validate(t)
    assert check_trace_constrained(result.trace, bts_via_hwm(t)).passed


@settings(max_examples=25, deadline=None)
@given(n=st.integers(min_value=2, max_value=30), density=densities, seed=seeds, sge=st.booleans())
def test_one_worker_reproduces_gbfs(n, density, seed, sge):
    t = gen_random(n, edge_density=density, seed=seed)
    reference = expanded_sequence(gbfs_sequential(t, EngineConfig(algorithm="gbfs", heuristic_delay_s=0)).trace)

    for algorithm in ("kpgbfs", "cpgbfs"):
        config = EngineConfig(algorithm=algorithm, sge=sge, workers=1, heuristic_delay_s=5e-6)
        assert expanded_sequence(deterministic_run(t, config).trace) == reference
