from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .domains import DomainSpec, make_domain
from .engines import EngineConfig, run_engine
from .formats import read_topology_file, write_topology_file
from .harness import (
    RunLimits,
    Suite,
    aggregate,
    desk_suite,
    emit_plot_data,
    load_suite,
    read_records,
    run_benchmark,
    standard_configs,
)
from .oracle import OracleConfig
from .pipeline import ORACLE_METHODS, oracle_report
from .topology import materialize

logger = logging.getLogger(__name__)

KIND_ALIASES = {
    "plateau": "plateau-synthetic",
    "random": "random-graph",
    "tile": "sliding-tile",
    "grid": "grid-nav",
    "file": "explicit-file",
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """Bad command-line input detected after parsing."""


def _add_engine_args(parser: argparse.ArgumentParser, many_threads: bool = False) -> None:
    parser.add_argument("--engine", choices=("gbfs", "kpgbfs", "cpgbfs"), default=None if many_threads else "cpgbfs",
                        help="engine to run; a bench sweep keeps the GBFS baseline")
    parser.add_argument("--constraint", default="inflight-minh",
                        help="none, inflight-minh, or module:attribute for a custom constraint")
    parser.add_argument("--sge", action="store_true", help="separate generation and evaluation")
    if many_threads:
        parser.add_argument("--threads", type=int, nargs="+", default=[2, 4, 8])
    else:
        parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--scheduler", choices=("real", "deterministic"), default="real")
    parser.add_argument("--seed", type=int, default=None if many_threads else 0, help="scheduler seed")
    parser.add_argument("--heuristic-delay-us", type=float, default=50.0)
    parser.add_argument("--time-limit-s", type=float, default=300.0)
    parser.add_argument("--mem-limit-mb", type=float, default=3072.0)


def _add_domain_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kind", help=f"domain kind: {', '.join(sorted(KIND_ALIASES))} or a full kind name")
    parser.add_argument("--instance-seed", type=int, help="instance seed (defaults to --seed)")
    parser.add_argument("--depth", type=int)
    parser.add_argument("--width", type=int)
    parser.add_argument("--sibling-fanout", type=int)
    parser.add_argument("--sibling-depth", type=int)
    parser.add_argument("--shuffle", action="store_true")
    parser.add_argument("--num-states", type=int)
    parser.add_argument("--edge-density", type=float)
    parser.add_argument("--h-max", type=int)
    parser.add_argument("--goal-count", type=int)
    parser.add_argument("--rows", type=int)
    parser.add_argument("--cols", type=int)
    parser.add_argument("--obstacle-density", type=float)
    parser.add_argument("--tile-width", type=int)
    parser.add_argument("--scramble", type=int)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pgbfs", description="Parallel greedy best-first search toolkit")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one engine on one instance and print the result JSON")
    solve.add_argument("--input", type=Path, help="topology file")
    _add_domain_args(solve)
    _add_engine_args(solve)
    solve.add_argument("--trace", type=Path, help="write the event trace (JSON lines) here")
    solve.add_argument("--out", type=Path, help="write the result JSON here instead of stdout")

    bench = sub.add_parser("bench", help="run a benchmark sweep into a CSV file")
    bench.add_argument("--suite", type=Path, help="YAML suite; defaults to the desk suite")
    bench.add_argument("--per-kind", type=int, default=3, help="desk suite instances per domain kind")
    _add_engine_args(bench, many_threads=True)
    bench.add_argument("--csv", type=Path, required=True)

    oracle = sub.add_parser("oracle", help="compute the bench transition system of a topology")
    oracle.add_argument("--input", type=Path, help="topology file")
    _add_domain_args(oracle)
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--method", choices=ORACLE_METHODS, default="both")
    oracle.add_argument("--max-states", type=int, default=30)
    oracle.add_argument("--budget", type=int, default=10 ** 7)
    oracle.add_argument("--out", type=Path)

    gen = sub.add_parser("gen", help="write a generated instance as a topology file")
    _add_domain_args(gen)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path, required=True)

    report = sub.add_parser("report", help="aggregate a benchmark CSV")
    report.add_argument("--csv", type=Path, required=True)
    report.add_argument("--out", type=Path, help="output prefix for <out>.json and <out>.md")
    report.add_argument("--plot-x", help="x configuration for scatter data, e.g. KPGBFS@8")
    report.add_argument("--plot-y", help="y configuration for scatter data, e.g. KPGBFS_S@8")
    report.add_argument("--plot-metric", default="eval_rate", choices=("eval_rate", "expansions", "wall_s"))
    for command in (solve, bench, oracle, gen, report):
        command.set_defaults(usage_text=command.format_usage())
    return parser


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return _build_parser().parse_args(argv)


def _domain_spec(args: argparse.Namespace) -> DomainSpec:
    if not args.kind:
        raise UsageError("give --input or --kind")
    kind = KIND_ALIASES.get(args.kind, args.kind)
    names = {
        "depth": args.depth,
        "width": args.tile_width if kind == "sliding-tile" and args.tile_width is not None else args.width,
        "sibling_fanout": args.sibling_fanout,
        "sibling_depth": args.sibling_depth,
        "num_states": args.num_states,
        "edge_density": args.edge_density,
        "h_max": args.h_max,
        "goal_count": args.goal_count,
        "rows": args.rows,
        "cols": args.cols,
        "obstacle_density": args.obstacle_density,
        "scramble": args.scramble,
    }
    params: Dict[str, Any] = {k: v for k, v in names.items() if v is not None}
    if args.shuffle:
        params["shuffle"] = True
    seed = args.instance_seed if args.instance_seed is not None else args.seed
    try:
        return DomainSpec(kind, params, seed=seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_topology(args: argparse.Namespace):
    if args.input is not None:
        return read_topology_file(args.input)
    return make_domain(_domain_spec(args))


def _engine_config(args: argparse.Namespace, workers: int) -> EngineConfig:
    constraint = args.constraint
    custom = None
    if constraint not in ("none", "inflight-minh"):
        constraint, custom = "custom", args.constraint
    if args.engine == "kpgbfs":
        constraint, custom = "none", None
    return EngineConfig(
        algorithm=args.engine,
        constraint=constraint,
        sge=args.sge,
        workers=workers,
        time_limit_s=args.time_limit_s,
        memory_limit_mb=args.mem_limit_mb,
        heuristic_delay_s=args.heuristic_delay_us * 1e-6,
        scheduler=args.scheduler,
        sched_seed=args.seed,
        custom_constraint=custom,
    )


def _emit_json(payload: Dict[str, Any], out: Optional[Path]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out is None:
        print(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text + "\n", encoding="utf-8")


def _cmd_solve(args: argparse.Namespace) -> int:
    topology = _load_topology(args)
    result = run_engine(topology, _engine_config(args, args.threads))
    if args.trace is not None:
        result.trace.dump(args.trace)
    payload = result.to_json()
    payload["topology"] = topology.fingerprint()
    _emit_json(payload, args.out)
    return EXIT_OK if result.solved else EXIT_FAILED


def _sweep_configs(args: argparse.Namespace) -> List[EngineConfig]:
    """Standard configurations narrowed by --engine and --sge, seeded by --seed."""
    configs = standard_configs(
        args.threads,
        constraint=args.constraint,
        heuristic_delay_s=args.heuristic_delay_us * 1e-6,
        scheduler=args.scheduler,
    )
    selected = [
        c for c in configs
        if c.algorithm == "gbfs"
        or ((args.engine is None or c.engine_name == args.engine) and (c.sge or not args.sge))
    ]
    if args.seed is not None:
        selected = [c.with_updates(sched_seed=args.seed) for c in selected]
    return selected


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.suite is not None:
        given = [flag for flag, value in (("--engine", args.engine), ("--seed", args.seed)) if value is not None]
        if args.sge:
            given.append("--sge")
        if given:
            raise UsageError(f"{', '.join(given)} cannot be combined with --suite; set them in the suite file")
        suite = load_suite(args.suite)
    else:
        suite = Suite(domains=desk_suite(per_kind=args.per_kind).domains, configs=_sweep_configs(args))
    limits = suite.limits or RunLimits(time_limit_s=args.time_limit_s, memory_limit_mb=args.mem_limit_mb)
    records = run_benchmark(suite.domains, suite.configs, limits=limits, csv_path=args.csv)
    solved = sum(r.solved for r in records)
    logger.info("bench wrote %d records (%d solved) to %s", len(records), solved, args.csv)
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    topology = _load_topology(args)
    config = OracleConfig(max_states=args.max_states, budget=args.budget)
    report = oracle_report(topology, args.method, config)
    _emit_json(report.to_json(), args.out)
    return EXIT_FAILED if report.agree is False else EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = _domain_spec(args)
    topology = materialize(make_domain(spec))
    write_topology_file(args.out, topology, comment=spec.label)
    logger.info("wrote %d states to %s", topology.num_states, args.out)
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    if not args.csv.exists() or args.csv.stat().st_size == 0:
        raise UsageError(f"{args.csv} is missing or empty")
    records = read_records(args.csv)
    if not records:
        raise UsageError(f"{args.csv} has no records")
    report = aggregate(records)
    if args.out is None:
        print(report.to_markdown())
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.with_suffix(".json").write_text(json.dumps(report.to_json(), indent=2, sort_keys=True), encoding="utf-8")
        args.out.with_suffix(".md").write_text(report.to_markdown(), encoding="utf-8")
    if args.plot_x and args.plot_y:
        plot_out = (args.out or args.csv).with_name(f"{(args.out or args.csv).stem}_plot")
        emit_plot_data(records, args.plot_x, args.plot_y, args.plot_metric, plot_out)
    return EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "report": _cmd_report,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``pgbfs`` command; returns the exit code."""
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write(args.usage_text)
        print(f"pgbfs {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
