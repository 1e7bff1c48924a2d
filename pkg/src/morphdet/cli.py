"""Command-line driver.

    morphdet sweep --scenario scenario.txt --output ber.csv [--seed N] [--min-errors N] [--max-symbols N]
    morphdet trace --scenario single.txt --symbol-index 17 --output trace.csv

Exit codes: 0 success, 2 bad scenario or arguments, 3 output not writable.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from pathlib import Path

from . import kernels
from .detectors import detect_morph
from .montecarlo import run_symbol, sweep
from .scenario import ScenarioError, load_scenario

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_UNWRITABLE = 3

CSV_HEADER = (
    "detector",
    "epsilon",
    "sigma1",
    "sigma2",
    "total_std",
    "symbols",
    "errors",
    "ber",
    "ci_low",
    "ci_high",
    "capped",
    "seed",
)
TRACE_HEADER = ("index", "r_raw", "r_filtered", "q", "s1", "s2", "s_r", "decision")


def _num(x) -> str:
    # repr is locale-independent and round-trips doubles
    return repr(float(x))


def sweep_csv(spec) -> str:
    scn = spec.scenario
    curves = sweep(scn, spec.sigma2_grid)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for name, points in curves.items():
        for p in points:
            writer.writerow(
                (
                    name,
                    _num(scn.noise.epsilon),
                    _num(scn.noise.sigma1),
                    _num(p.sigma2),
                    _num(p.total_std),
                    p.symbols,
                    p.errors,
                    _num(p.ber),
                    _num(p.ci_low),
                    _num(p.ci_high),
                    "true" if p.capped else "false",
                    scn.master_seed,
                )
            )
    return buf.getvalue()


def trace_csv(spec, symbol_index: int) -> str:
    scn = spec.scenario
    outcome = run_symbol(scn, symbol_index)
    tr = detect_morph(outcome.r_filtered, scn.quant, scn.se)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    s_r = tr.s_r
    for i in range(scn.symbol_len):
        writer.writerow(
            (
                i,
                _num(outcome.r_raw[i]),
                _num(outcome.r_filtered[i]),
                int(tr.q[i]),
                int(tr.s1[i]),
                int(tr.s2[i]),
                _num(s_r[i]),
                tr.decision,
            )
        )
    return buf.getvalue()


def _check_writable(path: Path) -> str | None:
    if path.is_dir():
        return f"{path} is a directory"
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        return f"directory {parent} does not exist"
    if path.exists() and not os.access(path, os.W_OK):
        return f"{path} is not writable"
    if not path.exists() and not os.access(parent, os.W_OK):
        return f"directory {parent} is not writable"
    return None


def _write(path: Path, text: str) -> int:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc.strerror}", file=sys.stderr)
        return EXIT_UNWRITABLE
    return EXIT_OK


def run_sweep_command(scenario_path, output_path, seed=None, min_errors=None, max_symbols=None) -> int:
    output_path = Path(output_path)
    try:
        spec = load_scenario(scenario_path, seed=seed, min_errors=min_errors, max_symbols=max_symbols)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    problem = _check_writable(output_path)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_UNWRITABLE
    t0 = time.perf_counter()
    text = sweep_csv(spec)
    status = _write(output_path, text)
    if status == EXIT_OK:
        rows = text.count("\n") - 1
        print(
            f"wrote {rows} rows to {output_path} in {time.perf_counter() - t0:.1f}s (kernels: {kernels.BACKEND})",
            file=sys.stderr,
        )
    return status


def dump_trace_command(scenario_path, symbol_index: int, output_path) -> int:
    output_path = Path(output_path)
    try:
        spec = load_scenario(scenario_path)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if len(spec.sigma2_grid) != 1:
        print(f"error: {scenario_path}: trace needs exactly one sigma2_grid value", file=sys.stderr)
        return EXIT_BAD_INPUT
    if symbol_index < 0:
        print("error: symbol index must be non-negative", file=sys.stderr)
        return EXIT_BAD_INPUT
    problem = _check_writable(output_path)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_UNWRITABLE
    return _write(output_path, trace_csv(spec, symbol_index))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morphdet", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="BER sweep over the scenario's sigma2 grid, written as CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--min-errors", type=int)
    p.add_argument("--max-symbols", type=int)

    p = sub.add_parser("trace", help="per-sample trace of one morphological decision")
    p.add_argument("--scenario", required=True)
    p.add_argument("--symbol-index", type=int, default=0)
    p.add_argument("--output", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        return run_sweep_command(args.scenario, args.output, args.seed, args.min_errors, args.max_symbols)
    return dump_trace_command(args.scenario, args.symbol_index, args.output)


if __name__ == "__main__":
    sys.exit(main())
