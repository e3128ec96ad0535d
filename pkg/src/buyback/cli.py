"""Command-line front end.

Subcommands: ``ratio`` (closed-form constants), ``simulate`` (Monte Carlo
payoff reports), ``lowerbound`` (continuous-game sweep), ``verify``
(invariant suites).  Exit codes: 0 success, 1 verification failure,
2 usage error, 3 input-format error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional

from .harness import (GeneratorSpec, RatioReport, estimate_expected_payoff,
                      generate, worst_prefix_ratio, write_reports_csv,
                      REPORT_COLUMNS)
from .lowerbound import lowerbound_row
from .matroids import Instance, load_instance
from .ratios import RatioConstants, gma_ratio_bound, ratio_formula
from .algorithms import run_gma, run_randalg
from .rng import SplitMix64, trial_seed

LOWERBOUND_COLUMNS = ["y", "k", "w", "P", "V", "bound_c", "c_star_gap"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="buyback",
        description="Online buyback algorithms: simulation and analysis.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_ratio = sub.add_parser("ratio", help="print competitive-ratio constants")
    p_ratio.add_argument("--f", type=float, required=True)

    p_sim = sub.add_parser("simulate", help="run an algorithm and emit a report")
    p_sim.add_argument("--algorithm", choices=("gma", "randalg"),
                       default="randalg")
    p_sim.add_argument("--f", type=float, required=True)
    p_sim.add_argument("--r", type=float, default=None)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--trials", type=int, default=1000)
    p_sim.add_argument("--instance", help="instance JSON file")
    p_sim.add_argument("--generator", help="generator spec as JSON text")
    p_sim.add_argument("--out", help="output file (default stdout)")
    p_sim.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sim.add_argument("--worst-prefix", action="store_true",
                       help="also report the adversarial stopping prefix")
    p_sim.add_argument("--trace-out",
                       help="write the first trial's event trace as JSON lines")

    p_lb = sub.add_parser("lowerbound", help="continuous-game ratio sweep")
    p_lb.add_argument("--f", type=float, required=True)
    p_lb.add_argument("--y", type=float, action="append", required=True,
                      help="horizon (repeatable)")
    p_lb.add_argument("--kmax", type=int, default=40)
    p_lb.add_argument("--out", help="output CSV (default stdout)")

    sub.add_parser("verify", help="run all invariant suites")
    return parser


def _cmd_ratio(args, parser) -> int:
    if args.f < 0:
        parser.error("--f must be nonnegative")
    consts = RatioConstants.for_factor(args.f)
    if consts.degenerate:
        # minimizing base degenerates to the open-interval infimum at f = 0
        ratio_at = gma_at = 1.0
        note = "  (degenerate: infimum at r -> 1)"
    else:
        ratio_at = ratio_formula(consts.r_star, consts.f)
        gma_at = gma_ratio_bound(consts.r_star, consts.f)
        note = ""
    print(f"f                    {consts.f:.6g}")
    print(f"c_star               {consts.c_star:.10g}")
    print(f"r_star               {consts.r_star:.10g}{note}")
    print(f"ratio_at_r_star      {ratio_at:.10g}")
    print(f"gma_bound_at_r_star  {gma_at:.10g}")
    return 0


def _load_input(args, parser) -> tuple:
    if bool(args.instance) == bool(args.generator):
        parser.error("exactly one of --instance / --generator is required")
    if args.instance:
        try:
            return load_instance(args.instance), args.instance
        except (OSError, ValueError, KeyError, TypeError,
                json.JSONDecodeError) as exc:
            print(f"error: cannot read instance {args.instance}: {exc}",
                  file=sys.stderr)
            raise SystemExit(3)
    try:
        spec = GeneratorSpec.from_dict(json.loads(args.generator))
        return generate(spec), spec.describe()
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: bad generator spec: {exc}", file=sys.stderr)
        raise SystemExit(3)


def _cmd_simulate(args, parser) -> int:
    if args.f < 0:
        parser.error("--f must be nonnegative")
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    if args.r is not None and not (args.r > 1.0 + args.f):
        parser.error("--r must exceed 1 + f")
    if args.algorithm == "randalg" and args.r is None and args.f == 0.0:
        parser.error("--r is required at f = 0 (the optimal base degenerates)")
    instance, instance_id = _load_input(args, parser)

    report = estimate_expected_payoff(args.algorithm, instance, args.f,
                                      args.trials, args.seed, r=args.r,
                                      instance_id=instance_id)
    rows = [report.row()]
    if args.worst_prefix:
        p, ratio = worst_prefix_ratio(args.algorithm, instance, args.f,
                                      args.trials, args.seed, r=args.r)
        rows.append({**report.row(), "instance": f"{instance_id}[:{p}]",
                     "ratio": ratio})

    if args.trace_out:
        if args.algorithm == "gma":
            trace = run_gma(instance, args.f)
        else:
            from .ratios import optimal_r
            r = args.r if args.r is not None else optimal_r(args.f)
            trace = run_randalg(instance, args.f, r,
                                SplitMix64(trial_seed(args.seed, 0)))
        trace.write_jsonl(args.trace_out)

    if args.format == "json":
        text = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    else:
        import io
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(v) if isinstance(v, float) else v
                             for k, v in row.items()})
        text = buf.getvalue()
    _emit(text, args.out)
    return 0


def _cmd_lowerbound(args, parser) -> int:
    if any(y <= 1.0 for y in args.y):
        parser.error("--y entries must exceed 1")
    if args.kmax < 2:
        parser.error("--kmax must be at least 2")
    import io
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=LOWERBOUND_COLUMNS)
    writer.writeheader()
    for y in args.y:
        row = lowerbound_row(args.f, y, args.kmax)
        writer.writerow({k: repr(v) if isinstance(v, float) else v
                         for k, v in row.items()})
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_verify() -> int:
    from .verify import run_all
    any_failed = False
    for name, passed, failed, messages in run_all():
        status = "ok" if failed == 0 else "FAIL"
        print(f"{name:24s} {passed:4d} passed {failed:4d} failed  [{status}]")
        for msg in messages[:5]:
            print(f"    {msg}")
        any_failed = any_failed or failed > 0
    return 1 if any_failed else 0


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "ratio":
        return _cmd_ratio(args, parser)
    if args.subcommand == "simulate":
        return _cmd_simulate(args, parser)
    if args.subcommand == "lowerbound":
        return _cmd_lowerbound(args, parser)
    if args.subcommand == "verify":
        return _cmd_verify()
    parser.error(f"unknown subcommand {args.subcommand!r}")


if __name__ == "__main__":
    sys.exit(main())
