#!/usr/bin/env python3
"""Metric trends on planted-partition graphs: NMI/MNMI/CommS/CommU versus
budget fraction (at fixed mixing) and versus mixing (at fixed budget)."""

import argparse

from commhide import harness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--method", default="neural", choices=list(harness.METHODS))
    ap.add_argument("--runs", type=int, default=4)
    ap.add_argument("--targets-per-graph", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-prefix", default=None)
    args = ap.parse_args()

    axes = {
        "budget-fraction": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6],
        "mu": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
    }
    for axis, values in axes.items():
        rows = harness.sweep(
            axis,
            values,
            method=args.method,
            runs=args.runs,
            n_targets=args.targets_per_graph,
            seed=args.seed,
        )
        print(f"== {axis} ==")
        print(harness.format_table(rows))
        if args.out_prefix:
            harness.write_records(f"{args.out_prefix}-{axis}.jsonl", rows)


if __name__ == "__main__":
    main()
