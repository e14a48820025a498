"""
Parallel greedy best-first search tools.

- State-space topologies: explicit tables, a plain-text file format, and
  generators for plateau, random-graph, sliding-tile and grid instances.
- Sequential GBFS plus constrained parallel GBFS, with or without separate
  generation and evaluation, on real threads or a seeded deterministic
  scheduler.
- Bench transition system oracles (tie-breaking enumeration and high-water
  marks) and a checker for constrained traces.
- Benchmark runner, CSV records, geometric-mean aggregation and plot data.
"""

from .topology import (
    ExplicitTopology,
    PathReconstructionError,
    SolutionPath,
    StateSpaceTopology,
    TopologyValidationError,
    materialize,
    reconstruct_path,
    validate_topology,
)
from .formats import (
    TopologyParseError,
    dumps_topology,
    load_topology,
    read_topology_file,
    write_topology_file,
)
from .domains import (
    DomainSpec,
    GridNavigation,
    SlidingTilePuzzle,
    gen_plateau,
    gen_random,
    make_domain,
)
from .engines import (
    EngineConfig,
    SearchResult,
    SearchTrace,
    cpgbfs_run,
    cpgbfs_sge_run,
    deterministic_run,
    gbfs_sequential,
    run_engine,
)
from .oracle import (
    BtsSet,
    OracleConfig,
    OracleInconclusive,
    bts_enumerate,
    bts_via_hwm,
    check_trace_constrained,
    high_water_marks,
)
from .harness import (
    AggregateReport,
    RunLimits,
    RunRecord,
    aggregate,
    emit_plot_data,
    geometric_mean,
    run_benchmark,
)
from .pipeline import OracleReport, SolveOutcome, oracle_report, solve_domain, solve_topology_file

__all__ = [
    "ExplicitTopology",
    "PathReconstructionError",
    "SolutionPath",
    "StateSpaceTopology",
    "TopologyValidationError",
    "materialize",
    "reconstruct_path",
    "validate_topology",
    "TopologyParseError",
    "dumps_topology",
    "load_topology",
    "read_topology_file",
    "write_topology_file",
    "DomainSpec",
    "GridNavigation",
    "SlidingTilePuzzle",
    "gen_plateau",
    "gen_random",
    "make_domain",
    "EngineConfig",
    "SearchResult",
    "SearchTrace",
    "cpgbfs_run",
    "cpgbfs_sge_run",
    "deterministic_run",
    "gbfs_sequential",
    "run_engine",
    "BtsSet",
    "OracleConfig",
    "OracleInconclusive",
    "bts_enumerate",
    "bts_via_hwm",
    "check_trace_constrained",
    "high_water_marks",
    "AggregateReport",
    "RunLimits",
    "RunRecord",
    "aggregate",
    "emit_plot_data",
    "geometric_mean",
    "run_benchmark",
    "OracleReport",
    "SolveOutcome",
    "oracle_report",
    "solve_domain",
    "solve_topology_file",
]
