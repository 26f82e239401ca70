"""Check both hardness reductions against brute-force source deciders.

For every 3-Partition source with two triples and 9 <= beta <= 16,
and for a battery of numerical 3-D matching sources, the script
generates the scheduling instance, solves it exactly, and compares
"full throughput reachable" against an independent brute-force search
on the source numbers. Satisfiable sources additionally get their
canonical schedule re-simulated and their certificate re-extracted.

Example:
    python3 scripts/run_reduction_equivalence.py
"""

from __future__ import annotations

import argparse
import itertools

from thermosched import (
    N3DMInstance,
    ThreePartitionInstance,
    brute_3partition,
    brute_n3dm,
    canonical_schedule_3partition,
    canonical_schedule_n3dm,
    extract_3partition,
    extract_n3dm_matching,
    gen_from_3partition,
    gen_from_n3dm,
    simulate,
    solve_optimal,
)

MATCHING_SOURCES = (
    N3DMInstance((0, 8), (8, 0), (4, 4), 12),
    N3DMInstance((1, 2), (2, 1), (3, 3), 6),
    N3DMInstance((0, 0), (0, 0), (3, 3), 3),
    N3DMInstance((1, 1), (1, 1), (1, 1), 3),
    N3DMInstance((0, 1), (0, 1), (2, 2), 3),
    N3DMInstance((2, 4), (2, 0), (2, 2), 6),
    N3DMInstance((8, 0), (0, 8), (0, 0), 8),
    N3DMInstance((2, 0), (2, 0), (2, 0), 3),
    N3DMInstance((1, 1), (1, 1), (0, 2), 3),
    N3DMInstance((1, 1), (1, 1), (0, 4), 4),
    N3DMInstance((4, 0), (4, 0), (4, 0), 6),
)


def two_triple_partition_sources():
    for beta in range(9, 17):
        window = [v for v in range(1, beta) if 4 * v > beta and 2 * v < beta]
        for values in itertools.combinations_with_replacement(window, 6):
            if sum(values) == 2 * beta:
                yield ThreePartitionInstance(values, beta)


def check_3partition(verbose: bool) -> int:
    mismatches = 0
    for src in two_triple_partition_sources():
        instance, meta = gen_from_3partition(src)
        opt = solve_optimal(instance).best_throughput
        cert = brute_3partition(src)
        agree = (opt == 4 * meta.n) == (cert is not None)
        if not agree:
            mismatches += 1
        if cert is not None:
            schedule = canonical_schedule_3partition(src, meta, cert)
            trace = simulate(instance, schedule)
            assert not trace.violations and trace.throughput == 4 * meta.n
            assert extract_3partition(meta, schedule) == cert
        if verbose or not agree:
            verdict = "ok" if agree else "MISMATCH"
            partition = "yes" if cert is not None else "no"
            print(
                f"  beta={src.beta:>2} values={src.values}  "
                f"OPT={opt}/{4 * meta.n} partition={partition:<3} {verdict}"
            )
    return mismatches


def check_matching(verbose: bool) -> int:
    mismatches = 0
    sources = list(MATCHING_SOURCES)
    for beta in range(1, 9):
        for a in range(beta + 1):
            for b in range(beta + 1 - a):
                sources.append(N3DMInstance((a,), (b,), (beta - a - b,), beta))
    for src in sources:
        instance, meta = gen_from_n3dm(src)
        want = 4 * meta.n + 1
        opt = solve_optimal(instance).best_throughput
        cert = brute_n3dm(src)
        agree = (opt == want) == (cert is not None)
        if not agree:
            mismatches += 1
        if cert is not None:
            schedule = canonical_schedule_n3dm(src, meta, cert)
            trace = simulate(instance, schedule)
            assert not trace.violations and trace.throughput == want
            assert extract_n3dm_matching(meta, schedule) == cert
        if verbose or not agree:
            verdict = "ok" if agree else "MISMATCH"
            matching = "yes" if cert is not None else "no"
            print(
                f"  beta={src.beta:>2} a={src.a} b={src.b} c={src.c}  "
                f"OPT={opt}/{want} matching={matching:<3} {verdict}"
            )
    return len(sources), mismatches


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", action="store_true", help="print every source")
    args = parser.parse_args()

    print("3-Partition sources (n=2, beta 9..16):")
    bad = check_3partition(args.verbose)
    total = sum(1 for _ in two_triple_partition_sources())
    print(f"  {total} sources checked, {bad} mismatch(es)")

    print("matching sources (all n=1 with beta <= 8, plus n=2 battery):")
    count, bad2 = check_matching(args.verbose)
    print(f"  {count} sources checked, {bad2} mismatch(es)")

    if bad or bad2:
        print("equivalence FAILED")
        return 1
    print("solver and brute-force deciders agree on every source")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
