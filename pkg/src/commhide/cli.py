"""Command-line harness.

Subcommands: generate, detect, deceive, evaluate, sweep, bench,
hide-nodes. Output files are edge lists / tab-separated partitions /
JSON-lines records; summaries go to stdout. Set COMMHIDE_THREADS to
parallelize protocol cells across processes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, harness, io, neural, synthgen
from .detectors import DetectorConfig, detect
from .graph import CommunityPartition, GraphError


def _add_detector_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--detector",
        default="louvain",
        choices=["louvain", "labelprop", "external"],
        help="community detector (default: louvain)",
    )
    p.add_argument(
        "--partition-in",
        default=None,
        help="partition file (required when --detector external)",
    )
    p.add_argument("--seed", type=int, default=0)


def _detector_config(args) -> DetectorConfig:
    return DetectorConfig(
        args.detector, seed=args.seed, external_path=args.partition_in
    )


def _load_graph(path: str):
    return io.read_edge_list(path)


def _initial_partition(args, g, name_to_id) -> CommunityPartition:
    if args.detector == "external" or (
        getattr(args, "use_partition", False) and args.partition_in
    ):
        return io.read_partition(args.partition_in, name_to_id)
    return detect(g, _detector_config(args))


def _resolve_target(target: str, p: CommunityPartition) -> int:
    if target == "largest":
        return max(p.communities, key=lambda c: (len(p.members(c)), -c))
    c = int(target)
    p.members(c)  # validate
    return c


def _budget_for(args, size: int) -> neural.Budget:
    beta = harness.default_budget(size, args.budget_frac)
    return harness.make_budget(
        beta,
        getattr(args, "beta_add_frac", None),
        getattr(args, "beta_del_frac", None),
    )


def cmd_generate(args) -> int:
    params = synthgen.SynthParams(args.n, args.k, args.mu, args.avg_deg, args.seed)
    g, p = synthgen.generate(params)
    io.write_edge_list(args.out, g)
    if args.partition_out:
        io.write_partition(args.partition_out, p)
    print(
        f"generated n={g.n} m={g.edge_count} k={args.k} mu={args.mu} "
        f"avg_deg={args.avg_deg} seed={args.seed} -> {args.out}"
    )
    return 0


def cmd_detect(args) -> int:
    g, name_to_id, id_to_name = _load_graph(args.edges)
    p = detect(g, _detector_config(args))
    if args.out:
        io.write_partition(args.out, p, id_to_name)
        print(f"detected {len(p.communities)} communities -> {args.out}")
    else:
        for v, c in enumerate(p.labels):
            print(f"{id_to_name[v]}\t{c}")
    return 0


def cmd_deceive(args) -> int:
    g, name_to_id, id_to_name = _load_graph(args.edges)
    p = _initial_partition(args, g, name_to_id)
    c = _resolve_target(args.target, p)
    budget = _budget_for(args, len(p.members(c)))
    g_after, plan = harness.run_method(args.method, g, p, c, budget, args.seed)
    io.write_edge_list(args.out, g_after, id_to_name)
    if args.plan_out:
        harness.write_records(
            args.plan_out,
            [
                {
                    "kind": u.kind.value,
                    "u": id_to_name[u.u],
                    "v": id_to_name[u.v],
                    "loss": u.loss,
                    "method": args.method,
                    "seed": args.seed,
                    "budget": budget.beta,
                    "detector": args.detector,
                    "target": c,
                    "version": __version__,
                }
                for u in plan.updates
            ],
        )
    print(
        f"method={args.method} target={c} budget={budget.beta} "
        f"applied={len(plan.updates)} "
        f"(+{len(plan.additions)}/-{len(plan.deletions)}) "
        f"total_loss={sum(plan.per_step_loss):.6f} "
        f"early_stop={plan.terminated_early} -> {args.out}"
    )
    return 0


def cmd_evaluate(args) -> int:
    g_before, name_to_id, _ = _load_graph(args.edges)
    g_after, after_names, _ = _load_graph(args.edges_after)
    if set(after_names) - set(name_to_id):
        raise io.ParseError("rewired graph mentions nodes absent from the original")
    # remap the after-graph onto the before-graph's node ids
    from .graph import Graph

    remapped = Graph(g_before.n)
    inv = {i: name for name, i in after_names.items()}
    for u, v in g_after.edges():
        remapped.add_edge(name_to_id[inv[u]], name_to_id[inv[v]])
    p_before = _initial_partition(args, g_before, name_to_id)
    c = _resolve_target(args.target, p_before)
    report = harness.evaluate(
        g_before,
        remapped,
        p_before,
        c,
        _detector_config(args),
        meta={
            "target": c,
            "detector": args.detector,
            "seed": args.seed,
            "version": __version__,
        },
    )
    print(json.dumps(report.as_record()))
    return 0


def cmd_sweep(args) -> int:
    values = [float(x) for x in args.values.split(",")]
    rows = harness.sweep(
        args.axis,
        values,
        n=args.n,
        k_comms=args.k,
        avg_deg=args.avg_deg,
        mu=args.mu,
        budget_frac=args.budget_frac,
        method=args.method,
        detector=args.detector,
        n_targets=args.targets_per_graph,
        runs=args.runs,
        seed=args.seed,
    )
    if args.out:
        harness.write_records(args.out, rows)
    print(harness.format_table(rows))
    return 0


def cmd_bench(args) -> int:
    targets = [int(x) for x in args.edges.split(",")]
    rows = harness.bench(targets, budget_frac=args.budget_frac, seed=args.seed)
    if args.out:
        harness.write_records(args.out, rows)
    print(harness.format_table(rows))
    print(f"log-log slope (seconds vs target-community edges): "
          f"{harness.loglog_slope(rows):.3f}")
    return 0


def cmd_hide_nodes(args) -> int:
    g, name_to_id, id_to_name = _load_graph(args.edges)
    if args.target is not None:
        p = _initial_partition(args, g, name_to_id)
        t = name_to_id.get(args.target)
        if t is None:
            raise io.ParseError(f"unknown node {args.target!r}")
        budget = _budget_for(args, len(p.members(p.label_of(t))))
        g_after, plan = neural.hide_node(g, p, t, budget, args.seed)
        if args.out:
            io.write_edge_list(args.out, g_after, id_to_name)
        p_after = detect(g_after, _detector_config(args))
        co = p.members(p.label_of(t)) - {t}
        new = p_after.members(p_after.label_of(t))
        hidden = not co or len(co & new) < len(co) / 2
        print(
            f"target={args.target} budget={budget.beta} "
            f"applied={len(plan.updates)} hidden={hidden}"
        )
        return 0
    score = harness.node_hiding_score(
        g,
        runs=args.runs,
        target_frac=args.target_frac,
        budget_frac=args.budget_frac,
        detector=args.detector,
        seed=args.seed,
    )
    print(f"node-hiding score over {args.runs} runs: {score:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="commhide", description="community deception toolkit"
    )
    ap.add_argument("--version", action="version", version=f"commhide {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="planted-partition benchmark graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True, help="number of communities")
    p.add_argument("--mu", type=float, required=True, help="mixing parameter")
    p.add_argument("--avg-deg", type=float, default=20.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--partition-out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("detect", help="run a community detector")
    p.add_argument("edges")
    _add_detector_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_detect, use_partition=False)

    p = sub.add_parser("deceive", help="rewire to hide a community")
    p.add_argument("edges")
    _add_detector_args(p)
    p.add_argument("--use-partition", action="store_true",
                   help="take the initial partition from --partition-in")
    p.add_argument("--method", default="neural", choices=list(harness.METHODS))
    p.add_argument("--target", default="largest",
                   help="community id, or 'largest' (default)")
    p.add_argument("--budget-frac", type=float, default=0.3)
    p.add_argument("--beta-add-frac", type=float, default=None)
    p.add_argument("--beta-del-frac", type=float, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--plan-out", default=None)
    p.set_defaults(func=cmd_deceive)

    p = sub.add_parser("evaluate", help="score a rewiring against the original")
    p.add_argument("edges")
    p.add_argument("edges_after")
    _add_detector_args(p)
    p.add_argument("--use-partition", action="store_true")
    p.add_argument("--target", default="largest")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="metric trends along a parameter axis")
    p.add_argument("--axis", required=True, choices=["budget-fraction", "mu"])
    p.add_argument("--values", required=True, help="comma-separated axis values")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--avg-deg", type=float, default=20.0)
    p.add_argument("--mu", type=float, default=0.4)
    p.add_argument("--budget-frac", type=float, default=0.3)
    p.add_argument("--method", default="neural", choices=list(harness.METHODS))
    p.add_argument("--detector", default="louvain",
                   choices=["louvain", "labelprop"])
    p.add_argument("--targets-per-graph", type=int, default=3)
    p.add_argument("--runs", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="deceive wall-time scaling benchmark")
    p.add_argument("--edges", required=True,
                   help="comma-separated target-community edge counts")
    p.add_argument("--budget-frac", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("hide-nodes", help="single-node hiding")
    p.add_argument("edges")
    _add_detector_args(p)
    p.add_argument("--use-partition", action="store_true")
    p.add_argument("--target", default=None,
                   help="node name to hide; omit to run the scoring protocol")
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--target-frac", type=float, default=0.3)
    p.add_argument("--budget-frac", type=float, default=0.3)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_hide_nodes)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
