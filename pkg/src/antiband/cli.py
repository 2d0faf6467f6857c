"""Command-line harness: bounds, heuristics, exact solve, model export and brute force."""
from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .bounds import best_upper_bound
from .exact import brute_force, solve
from .graph import Graph, GraphError, ParseError, antibandwidth, instance_name, read_graph
from .heuristics import multi_start
from .mip_export import FORMULATIONS, export, model_filename

logger = logging.getLogger("antiband")

MODES = ("bounds", "heuristic", "solve", "export", "oracle")
COLUMNS = ("name", "n", "m", "T1.1", "T1.2", "T1.3", "t_T1.3", "T1.4", "t_T1.4",
           "bound", "heuristic", "LB", "UB", "status", "time", "error")
INSTANCE_SUFFIXES = (".mtx", ".mtx.gz", ".edges", ".txt", ".el", ".gz")
EXIT_OK, EXIT_USAGE, EXIT_INPUT = 0, 2, 3


@dataclass
class RunConfig:
    mode: str = "bounds"
    time_limit_total: float = 1800.0
    subsolver_time_limit: float = 10.0
    formulation: str | None = None
    k: int | None = None
    ub: int | None = None
    output: str | None = None
    format: str = "csv"
    jobs: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.time_limit_total <= 0 or self.subsolver_time_limit <= 0:
            raise ValueError("time limits must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.format not in ("csv", "markdown"):
            raise ValueError("format must be csv or markdown")
        if self.mode == "export":
            if self.formulation not in FORMULATIONS:
                raise ValueError(f"export needs --formulation from {FORMULATIONS}")
            if self.formulation == "fek" and self.k is None:
                raise ValueError("formulation fek needs --k")


def _bounds_columns(record: dict, report) -> None:
    record.update({
        "T1.1": report.t11, "T1.2": report.t12,
        "T1.3": report.t13, "t_T1.3": round(report.t13_time, 3),
        "T1.4": report.t14, "t_T1.4": round(report.t14_time, 3),
        "bound": report.best,
    })


def _export_path(g: Graph, config: RunConfig) -> Path:
    name = model_filename(g.name, config.formulation)
    if config.output is None:
        return Path(name)
    out = Path(config.output)
    if out.is_dir() or config.output.endswith(os.sep):
        return out / name
    return out


def run_graph(g: Graph, config: RunConfig) -> dict:
    """Report record for an already parsed graph."""
    start = time.perf_counter()
    record = {c: "" for c in COLUMNS}
    record.update(name=g.name, n=g.n, m=g.m)
    mode = config.mode
    if mode == "oracle":
        value = brute_force(g)
        record.update(LB=value, UB=value, status="optimal")
    elif mode == "export":
        ub = config.ub
        if ub is None and config.formulation == "f":
            ub = best_upper_bound(g, config.subsolver_time_limit).best
        model = export(g, config.formulation, ub=ub, k=config.k)
        path = _export_path(g, config)
        model.write(path)
        record["status"] = f"written {path}"
    else:
        report = best_upper_bound(g, config.subsolver_time_limit)
        _bounds_columns(record, report)
        if mode == "bounds":
            record["UB"] = report.best
            record["status"] = "bounds"
        elif mode == "heuristic":
            f = multi_start(g, report.best, time_limit=config.time_limit_total)
            z = antibandwidth(g, f)
            record.update(heuristic=z, LB=z, UB=report.best,
                          status="optimal" if z == report.best else "feasible")
        else:
            result = solve(g, config.time_limit_total, config.subsolver_time_limit, bounds=report)
            record.update(heuristic=result.heuristic_value, LB=result.lower_bound,
                          UB=result.upper_bound, status=result.status)
    record["time"] = round(time.perf_counter() - start, 3)
    return record


def run_instance(path: str | Path, config: RunConfig) -> dict:
    """Parse ``path`` and run the configured mode. Parse errors propagate."""
    g = read_graph(path)
    return run_graph(g, config)


def _safe_run(path: Path, config: RunConfig) -> dict:
    try:
        return run_instance(path, config)
    except (ParseError, GraphError, ValueError, OSError) as exc:
        record = {c: "" for c in COLUMNS}
        record.update(name=instance_name(path), status="error", error=str(exc))
        return record


def instance_files(directory: str | Path) -> list[Path]:
    paths = [p for p in Path(directory).iterdir()
             if p.is_file() and p.name.endswith(INSTANCE_SUFFIXES)]
    return sorted(paths, key=lambda p: (instance_name(p), p.name))


def run_benchmark(directory: str | Path, config: RunConfig) -> list[dict]:
    """One record per instance file, ordered by instance name; failures become error rows."""
    paths = instance_files(directory)
    if not paths:
        logger.warning("no instance files in %s", directory)
        return []
    if config.jobs == 1:
        return [_safe_run(p, config) for p in paths]
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(_safe_run, paths, [config] * len(paths)))


def summarize(records: list[dict]) -> dict:
    """Count of optimal rows and mean percentage gap 100 * (UB - LB) / LB."""
    solved = [r for r in records if isinstance(r.get("LB"), int) and isinstance(r.get("UB"), int)]
    gaps = [100.0 * (r["UB"] - r["LB"]) / r["LB"] for r in solved if r["LB"] > 0]
    return {
        "instances": len(records),
        "optimal": sum(r.get("status") == "optimal" for r in records),
        "errors": sum(r.get("status") == "error" for r in records),
        "mean_gap": round(sum(gaps) / len(gaps), 2) if gaps else None,
    }


def format_report(records: list[dict], fmt: str = "csv", footer: bool = True) -> str:
    buf = io.StringIO()
    summary = summarize(records)
    if fmt == "csv":
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        if footer and records:
            buf.write("# " + ", ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
    else:
        buf.write("| " + " | ".join(COLUMNS) + " |\n")
        buf.write("|" + "---|" * len(COLUMNS) + "\n")
        for r in records:
            buf.write("| " + " | ".join(str(r.get(c, "")) for c in COLUMNS) + " |\n")
        if footer and records:
            buf.write("\n" + ", ".join(f"{k}: {v}" for k, v in summary.items()) + "\n")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antiband", description=__doc__)
    p.add_argument("input", help="instance file (MatrixMarket or edge list) or a directory of them")
    p.add_argument("--mode", choices=MODES, default="bounds")
    p.add_argument("--time-limit", type=float, default=1800.0, help="total seconds per instance")
    p.add_argument("--sub-time-limit", type=float, default=10.0,
                   help="seconds per stable set / coloring sub-solve")
    p.add_argument("--formulation", choices=FORMULATIONS)
    p.add_argument("--k", type=int)
    p.add_argument("--ub", type=int, help="upper bound used by export")
    p.add_argument("--out", help="report file, or model file/directory in export mode")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    # ANTIBAND_SEED is accepted but unused: every algorithm here is deterministic
    try:
        config = RunConfig(args.mode, args.time_limit, args.sub_time_limit, args.formulation,
                           args.k, args.ub, args.out, args.format, args.jobs)
    except ValueError as exc:
        print(f"antiband: {exc}", file=sys.stderr)
        return EXIT_USAGE

    target = Path(args.input)
    if target.is_dir():
        records = run_benchmark(target, config)
    elif target.is_file():
        try:
            records = [run_instance(target, config)]
        except (ParseError, GraphError, ValueError, OSError) as exc:
            print(f"antiband: {target}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        print(f"antiband: no such file or directory: {target}", file=sys.stderr)
        return EXIT_INPUT

    text = format_report(records, config.format)
    if config.output and config.mode != "export":
        Path(config.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
