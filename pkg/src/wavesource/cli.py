"""Command line entry point: ``wavesource {table1,table2,table3,reconstruct}``.

Exit status is 0 on success, 2 for configuration errors and 3 for
numerical failures (a singular or indefinite system).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

from . import experiments
from .config import ConfigError, load_config
from .inverse import SolverError
from .numerics import NotPositiveDefiniteError, SingularMatrixError
from .volterra import MarchingBreakdownError, SingularKernelError

EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


def write_csv(path: Path, header: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _write_table(out: Path, name: str, rows: list[dict]) -> Path:
    path = out / f"{name}.csv"
    header = list(rows[0])
    write_csv(path, header, ([r[h] for h in header] for r in rows))
    return path


def cmd_table1(run, args) -> list[Path]:
    return [_write_table(args.out, "table1", experiments.table1(run))]


def cmd_table2(run, args) -> list[Path]:
    return [_write_table(args.out, "table2", experiments.table2(run))]


def cmd_table3(run, args) -> list[Path]:
    seeds = run.seed_list(args.seed_count)
    return [_write_table(args.out, "table3", experiments.table3(run, seeds))]


def cmd_reconstruct(run, args) -> list[Path]:
    res = experiments.reconstruct(run)
    trace = args.out / "trace.csv"
    profile = args.out / "profile.csv"
    write_csv(trace, ["t", "g_clean", "g_noisy"], zip(*(map(float, c) for c in (res.t, res.g_clean, res.g_noisy))))
    write_csv(profile, ["x", "F_true", "F_rec"], zip(*(map(float, c) for c in (res.x, res.F_true, res.F_rec))))
    print(f"method={run.method} gamma={run.gamma:g} gamma1={res.gamma1:.6g} eps_F={res.rel_error:.6g}")
    return [trace, profile]


COMMANDS = {
    "table1": cmd_table1,
    "table2": cmd_table2,
    "table3": cmd_table3,
    "reconstruct": cmd_reconstruct,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavesource",
        description="Reconstruct a spacewise wave-equation source from boundary data.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", type=Path, default=None, help="JSON experiment configuration")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory for CSV files")
    parser.add_argument("--seed-count", type=int, default=11, help="ensemble size when 'seeds' is not configured")
    parser.add_argument("--method", choices=("spectral", "volterra"), default=None,
                        help="override the configured reconstruction method")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.seed_count < 1:
            raise ConfigError("--seed-count", "must be >= 1")
        run = load_config(args.config)
        if args.method is not None:
            run = replace(run, method=args.method)
        paths = COMMANDS[args.command](run, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SolverError, NotPositiveDefiniteError, SingularMatrixError,
            SingularKernelError, MarchingBreakdownError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
