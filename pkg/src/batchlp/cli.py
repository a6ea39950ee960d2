"""Command-line front end: solve, batch, gen, bench, verify.

Every flag can also be supplied through an environment variable with the
same name uppercased and prefixed with BATCHLP_ (for example
``BATCHLP_MEMORY_BUDGET=1000000``); explicit flags win.  Exit codes: 0 ok,
1 input error, 2 verification failure.

Reports for solve/batch/gen contain no wall-clock fields, so a fixed seed
and worker count reproduce them byte for byte; ``bench`` is the timing
surface and emits CSV with setup and solve times in separate columns
(setup covers workload generation/parsing, which is excluded from solve
time).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

from .batch import BatchConfig, BatchTooLarge, HeterogeneousBatch, batch_solve
from .generate import gen_random_lps
from .model import (
    SolveOutcome,
    StandardFormLP,
    VariableMap,
    standard_form,
    standardize,
)
from .mps import ParseError, UnsupportedFeature, lower_to_general, parse_mps
from .oracle import OracleBudget, check_certificate, vertex_enumerate
from .simplex import SolverLimits, solve

_ENV_PREFIX = "BATCHLP_"
WORKLOAD_SCHEMA = "batchlp.workload/1"

BENCH_DIMS = (5, 28, 50, 100)
BENCH_BATCH_SIZES = (100, 1_000, 10_000, 100_000)
BENCH_CSV_HEADER = ("dim", "batch_size", "repeats", "setup_ms", "wall_ms",
                    "lps_per_sec", "n_optimal", "n_unbounded", "n_infeasible",
                    "n_iteration_limit")


def _env_default(flag: str, cast, fallback):
    raw = os.environ.get(_ENV_PREFIX + flag.upper().replace("-", "_"))
    if raw is None:
        return fallback
    if cast is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return cast(raw)


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _add_workload_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", action="append",
                        default=None, help="input file (repeatable for batch/verify)")
    parser.add_argument("--dim", type=int,
                        default=_env_default("dim", int, None),
                        help="dimension of generated LPs")
    parser.add_argument("--count", type=int,
                        default=_env_default("count", int, None),
                        help="number of generated LPs")
    parser.add_argument("--seed", type=int,
                        default=_env_default("seed", int, 0), help="RNG seed")
    parser.add_argument("--feasible-start", action=argparse.BooleanOptionalAction,
                        default=_env_default("feasible-start", bool, True),
                        help="generate LPs whose initial basic solution is feasible; "
                             "--no-feasible-start negates every b, forcing phase 1")


def _add_solver_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workers", type=int,
                        default=_env_default("workers", int, 1),
                        help="worker processes for batch solving")
    parser.add_argument("--memory-budget", type=int,
                        default=_env_default("memory-budget", int, 1 << 30),
                        help="chunking budget in bytes for live tableaux")
    parser.add_argument("--limits-max-iters", type=int,
                        default=_env_default("limits-max-iters", int, None),
                        help="simplex iteration cap per phase (default 50*(m+n))")


def _add_format_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"),
                        default=_env_default("format", str, "json"),
                        help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="batchlp",
        description="Batched dense LP solving with verification oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one MPS file and certify the result")
    _add_workload_args(p_solve)
    _add_solver_args(p_solve)
    _add_format_arg(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_batch = sub.add_parser("batch", help="solve many LPs (MPS files or a workload)")
    _add_workload_args(p_batch)
    _add_solver_args(p_batch)
    _add_format_arg(p_batch)
    p_batch.set_defaults(func=cmd_batch)

    p_gen = sub.add_parser("gen", help="emit a random workload as JSON")
    _add_workload_args(p_gen)
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="timing sweep over dims and batch sizes (CSV)")
    _add_workload_args(p_bench)
    _add_solver_args(p_bench)
    p_bench.add_argument("--repeats", type=int,
                         default=_env_default("repeats", int, 10),
                         help="timed runs averaged per cell")
    p_bench.add_argument("--dims", default=_env_default("dims", str, None),
                         help="comma-separated sweep dimensions "
                              f"(default {','.join(map(str, BENCH_DIMS))})")
    p_bench.add_argument("--batch-sizes", default=_env_default("batch-sizes", str, None),
                         help="comma-separated sweep batch sizes "
                              f"(default {','.join(map(str, BENCH_BATCH_SIZES))})")
    p_bench.set_defaults(func=cmd_bench)
    # For bench, --count limits the number of sweep cells (0 = header only).

    p_verify = sub.add_parser("verify", help="cross-check solves against the oracles")
    _add_workload_args(p_verify)
    _add_solver_args(p_verify)
    _add_format_arg(p_verify)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def _limits(args) -> SolverLimits:
    return SolverLimits(max_iterations=args.limits_max_iters)


def _config(args) -> BatchConfig:
    return BatchConfig(memory_budget_bytes=args.memory_budget,
                       worker_count=args.workers, limits=_limits(args))


def _load_mps(path: str) -> tuple[StandardFormLP, VariableMap, tuple[str, ...]]:
    text = Path(path).read_text(encoding="utf-8", errors="replace")
    glp = lower_to_general(parse_mps(text))
    lp, vmap = standardize(glp)
    return lp, vmap, glp.col_names


def _outcome_record(outcome: SolveOutcome, vmap: VariableMap | None = None,
                    col_names: tuple[str, ...] = ()) -> dict:
    record: dict = {
        "status": outcome.status.value,
        "iterations": {"phase1": outcome.iterations_phase1,
                       "phase2": outcome.iterations_phase2},
    }
    if outcome.is_optimal():
        record["standard_objective"] = outcome.objective_value
        if vmap is not None:
            mapped = vmap.recover_outcome(outcome)
            record["objective"] = mapped.objective_value
            names = col_names or tuple(f"x{j}" for j in range(len(mapped.primal_point)))
            record["variables"] = {name: float(v)
                                   for name, v in zip(names, mapped.primal_point)}
        else:
            record["objective"] = outcome.objective_value
            record["variables"] = {f"x{j}": float(v)
                                   for j, v in enumerate(outcome.primal_point)}
    return record


def cmd_solve(args) -> int:
    if not args.input or len(args.input) != 1:
        print("error: solve needs exactly one --input file", file=sys.stderr)
        return 1
    lp, vmap, col_names = _load_mps(args.input[0])
    outcome = solve(lp, _limits(args))
    record = _outcome_record(outcome, vmap, col_names)
    certified = True
    if outcome.is_optimal():
        cert = check_certificate(lp, outcome)
        certified = cert.certified
        record["certificate"] = {
            "max_reduced_cost": cert.max_reduced_cost,
            "max_violation": cert.max_violation,
            "max_negativity": cert.max_negativity,
            "certified": cert.certified,
        }
    _emit_record(record, args.format)
    return 0 if certified else 2


def _emit_record(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2))
    elif fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["status", "objective", "iterations_phase1",
                         "iterations_phase2", "certified"])
        cert = record.get("certificate", {})
        writer.writerow([
            record["status"],
            _fmt(record["objective"]) if "objective" in record else "",
            record["iterations"]["phase1"],
            record["iterations"]["phase2"],
            str(cert.get("certified", "")).lower(),
        ])
        print(out.getvalue(), end="")
    else:
        print(f"status: {record['status']}")
        if "objective" in record:
            print(f"objective: {_fmt(record['objective'])}")
            for name, value in record.get("variables", {}).items():
                print(f"  {name} = {_fmt(value)}")
        print(f"iterations: phase1={record['iterations']['phase1']} "
              f"phase2={record['iterations']['phase2']}")
        if "certificate" in record:
            print(f"certified: {record['certificate']['certified']}")


def _gather_batch(args) -> tuple[list[StandardFormLP], list[VariableMap | None],
                                 list[tuple[str, ...]], float]:
    """Returns (lps, per-LP variable maps, per-LP column names, setup seconds)."""
    started = time.perf_counter()
    if args.input:
        if len(args.input) == 1 and args.input[0].endswith(".json"):
            payload = json.loads(Path(args.input[0]).read_text(encoding="utf-8"))
            lps = [standard_form(rec["c"], rec["A"], rec["b"]) for rec in payload["lps"]]
            return lps, [None] * len(lps), [()] * len(lps), time.perf_counter() - started
        loaded = [_load_mps(path) for path in args.input]
        lps = [lp for lp, _, _ in loaded]
        vmaps = [vmap for _, vmap, _ in loaded]
        names = [cols for _, _, cols in loaded]
        return lps, vmaps, names, time.perf_counter() - started
    if args.dim is None or args.count is None:
        raise ValueError("need --input files or --dim/--count for a generated workload")
    lps = gen_random_lps(args.dim, args.count, args.seed, args.feasible_start)
    return lps, [None] * len(lps), [()] * len(lps), time.perf_counter() - started


def cmd_batch(args) -> int:
    lps, vmaps, names, _setup = _gather_batch(args)
    report = batch_solve(lps, _config(args))
    results = [
        {"index": i, **_outcome_record(outcome, vmaps[i], names[i])}
        for i, outcome in enumerate(report.outcomes)
    ]
    payload = {
        "schema": "batchlp.batch-report/1",
        "count": len(results),
        "chunk_sizes": list(report.plan.sizes),
        "status_counts": report.status_counts(),
        "results": results,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["index", "status", "objective",
                         "iterations_phase1", "iterations_phase2"])
        for rec in results:
            writer.writerow([
                rec["index"], rec["status"],
                _fmt(rec["objective"]) if "objective" in rec else "",
                rec["iterations"]["phase1"], rec["iterations"]["phase2"],
            ])
    else:
        for rec in results:
            line = f"[{rec['index']}] {rec['status']}"
            if "objective" in rec:
                line += f" objective={_fmt(rec['objective'])}"
            print(line)
    return 0


def cmd_gen(args) -> int:
    if args.dim is None or args.count is None:
        raise ValueError("gen needs --dim and --count")
    lps = gen_random_lps(args.dim, args.count, args.seed, args.feasible_start)
    payload = {
        "schema": WORKLOAD_SCHEMA,
        "dim": args.dim,
        "count": args.count,
        "seed": args.seed,
        "feasible_start": args.feasible_start,
        "lps": [
            {"c": lp.c.tolist(), "A": lp.A.tolist(), "b": lp.b.tolist()}
            for lp in lps
        ],
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_bench(args) -> int:
    dims = ([int(v) for v in args.dims.split(",")] if args.dims else list(BENCH_DIMS))
    sizes = ([int(v) for v in args.batch_sizes.split(",")]
             if args.batch_sizes else list(BENCH_BATCH_SIZES))
    cells = [(dim, size) for dim in dims for size in sizes]
    if args.count is not None:
        cells = cells[: max(args.count, 0)]

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_CSV_HEADER)
    config = _config(args)
    for cell_index, (dim, size) in enumerate(cells):
        setup_start = time.perf_counter()
        lps = gen_random_lps(dim, size, args.seed + cell_index, args.feasible_start)
        setup_seconds = time.perf_counter() - setup_start
        walls = []
        report = None
        for _ in range(max(args.repeats, 1)):
            report = batch_solve(lps, config)
            walls.append(report.total_seconds)
        counts = report.status_counts()
        mean_wall = sum(walls) / len(walls)
        writer.writerow([
            dim, size, max(args.repeats, 1),
            f"{setup_seconds * 1e3:.3f}", f"{mean_wall * 1e3:.3f}",
            f"{size / mean_wall:.3f}" if mean_wall > 0 else "inf",
            counts.get("optimal", 0), counts.get("unbounded", 0),
            counts.get("infeasible", 0), counts.get("iteration_limit", 0),
        ])
    return 0


def cmd_verify(args) -> int:
    checks: list[dict] = []
    failures = 0

    def check_one(label: str, lp: StandardFormLP, vmap: VariableMap | None) -> None:
        nonlocal failures
        outcome = solve(lp, _limits(args))
        entry: dict = {"name": label, "status": outcome.status.value}
        ok = True
        if outcome.is_optimal():
            cert = check_certificate(lp, outcome)
            entry["certified"] = cert.certified
            ok &= cert.certified
        try:
            reference = vertex_enumerate(lp)
        except OracleBudget:
            entry["oracle"] = "skipped"
        else:
            entry["oracle"] = reference.status.value
            ok &= reference.status is outcome.status
            if ok and outcome.is_optimal():
                scale = max(1.0, abs(reference.objective_value))
                gap = abs(outcome.objective_value - reference.objective_value) / scale
                entry["oracle_gap"] = gap
                ok &= gap <= 1e-6
        entry["ok"] = ok
        checks.append(entry)
        if not ok:
            failures += 1

    if args.input:
        for path in args.input:
            lp, vmap, _ = _load_mps(path)
            check_one(path, lp, vmap)
    else:
        if args.dim is None or args.count is None:
            raise ValueError("verify needs --input files or --dim/--count")
        for i, lp in enumerate(gen_random_lps(args.dim, args.count, args.seed,
                                              args.feasible_start)):
            check_one(f"generated[{i}]", lp, None)

    payload = {"schema": "batchlp.verify-report/1",
               "checked": len(checks), "failures": failures, "checks": checks}
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for entry in checks:
            print(f"{entry['name']}: {'ok' if entry['ok'] else 'FAIL'} "
                  f"(status={entry['status']}, oracle={entry.get('oracle', '-')})")
        print(f"checked={len(checks)} failures={failures}")
    return 2 if failures else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnsupportedFeature, HeterogeneousBatch, BatchTooLarge,
            OSError, ValueError, json.JSONDecodeError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
