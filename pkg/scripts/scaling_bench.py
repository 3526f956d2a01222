#!/usr/bin/env python3
"""Wall-time scaling of the greedy deceptor versus target-community edge
count on planted-partition graphs, with a log-log slope fit."""

import argparse

from commhide import harness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--edges",
        default="1000,3162,10000,31623,100000",
        help="comma-separated target-community edge counts",
    )
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    targets = [int(x) for x in args.edges.split(",")]
    rows = harness.bench(targets, seed=args.seed)
    print(harness.format_table(rows))
    print(f"log-log slope: {harness.loglog_slope(rows):.3f}")
    if args.out:
        harness.write_records(args.out, rows)


if __name__ == "__main__":
    main()
