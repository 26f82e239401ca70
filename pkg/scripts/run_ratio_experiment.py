"""Sweep instance sizes and compare online policies against the optimum.

For each size n the script draws seeded random instances, solves each
one exactly, runs the selected policies online and prints the max and
mean throughput ratios OPT/ALG. Any instance where a policy drops
below ceil(OPT/2) is reported as a counterexample and flips the exit
code, so the run doubles as a check of the factor-2 guarantee.

Example:
    python3 scripts/run_ratio_experiment.py --sizes 2 3 4 5 6 7 8 --count 150
"""

from __future__ import annotations

import argparse
from pathlib import Path

from thermosched import RandomModel, ratio_experiment, serialize_report
from thermosched.gantt import approx_decimal
from thermosched.policies import POLICIES
from thermosched.serialization import format_rational


def fmt(value) -> str:
    if value is None:
        return "-"
    return f"{format_rational(value)} ({approx_decimal(value)})"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 5, 6, 7, 8])
    parser.add_argument("--count", type=int, default=150, help="instances per size")
    parser.add_argument("--seed-base", type=int, default=1000, help="seed = base * n")
    parser.add_argument(
        "--policy",
        action="append",
        choices=sorted(POLICIES),
        help="policy to evaluate (repeatable; default coolest and edf)",
    )
    parser.add_argument("--release-span", type=int, default=4)
    parser.add_argument("--max-window", type=int, default=4)
    parser.add_argument(
        "--report-dir", type=Path, default=None, help="write one JSON report per size"
    )
    args = parser.parse_args()
    policies = tuple(args.policy or ("coolest", "edf"))

    failures = 0
    header = f"{'n':>3} {'count':>6} {'skipped':>8}"
    for name in policies:
        header += f" {name + ' max':>16} {name + ' mean':>17}"
    print(header)
    for n in args.sizes:
        model = RandomModel(
            n=n,
            release_span=args.release_span,
            max_window=args.max_window,
            seed=args.seed_base * n,
        )
        report = ratio_experiment(model, policies, args.count)
        row = f"{n:>3} {report.count:>6} {report.skipped_zero_opt:>8}"
        for pos in range(len(policies)):
            row += f" {fmt(report.max_ratios[pos]):>16} {fmt(report.mean_ratios[pos]):>17}"
        print(row)
        for ce in report.counterexamples:
            failures += 1
            print(
                f"    counterexample: seed={ce.seed} policy={ce.policy} "
                f"OPT={ce.opt} ALG={ce.throughput}"
            )
        if args.report_dir is not None:
            args.report_dir.mkdir(parents=True, exist_ok=True)
            path = args.report_dir / f"ratios_n{n}.json"
            path.write_text(serialize_report(report))
            print(f"    wrote {path}")
    if failures:
        print(f"{failures} counterexample(s) to the factor-2 guarantee")
        return 1
    print("all policies stayed within factor 2 of the optimum")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
