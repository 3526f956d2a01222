"""Experiment orchestration: closed-loop detect -> deceive -> re-detect
pipelines, protocol averaging, parameter sweeps, and the scalability
benchmark."""

from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import baselines, metrics, neural, synthgen
from .detectors import DetectorConfig, detect
from .graph import CommunityPartition, Graph, classify_edges
from .metrics import EvaluationReport

THREADS_ENV = "COMMHIDE_THREADS"

METHODS = (
    "neural",
    "random",
    "dice",
    "nagaraja-degree",
    "nagaraja-eigen",
    "nagaraja-random",
)


def default_budget(community_size: int, frac: float = 0.3) -> int:
    return math.ceil(frac * community_size)


def make_budget(
    beta: int, add_frac: float | None = None, del_frac: float | None = None
) -> neural.Budget:
    if add_frac is None and del_frac is None:
        return neural.Budget(beta)
    if add_frac is None:
        add_frac = 1.0 - del_frac
    beta_add = int(round(add_frac * beta))
    return neural.Budget(beta, beta_add=beta_add, beta_del=beta - beta_add)


def run_method(
    method: str,
    g: Graph,
    p: CommunityPartition,
    c: int,
    budget: neural.Budget,
    seed: int,
) -> tuple[Graph, neural.UpdatePlan]:
    if method == "neural":
        return neural.deceive(g, p, c, budget, seed)
    if method == "random":
        return baselines.random_deceive(g, p, c, budget, seed)
    if method == "dice":
        return baselines.dice_deceive(g, p, c, budget, seed)
    if method.startswith("nagaraja-"):
        variant = method.split("-", 1)[1]
        return baselines.nagaraja_deceive(g, p, c, budget, variant, seed)
    raise ValueError(f"unknown method {method!r}")


def evaluate(
    g_before: Graph,
    g_after: Graph,
    p_before: CommunityPartition,
    c: int,
    detector: DetectorConfig,
    meta: dict | None = None,
    mnmi_graph: str = "before",
) -> EvaluationReport:
    """Re-detect on the rewired graph and score all four metrics."""
    if g_before.n != g_after.n:
        raise ValueError("graphs cover different node universes")
    p_after = detect(g_after, detector)
    members = p_before.members(c)
    hood = g_before if mnmi_graph == "before" else g_after
    return EvaluationReport(
        nmi=metrics.nmi(p_before, p_after),
        mnmi=metrics.mnmi(p_before, p_after, hood, c),
        comm_splits=metrics.comm_splits(p_after, members),
        comm_uniformity=metrics.comm_uniformity(p_after, members),
        meta=dict(meta or {}),
    )


@dataclass
class ExperimentSpec:
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    method: str = "neural"
    budget_frac: float = 0.3
    add_frac: float | None = None
    del_frac: float | None = None
    target: str = "each"  # each | largest | community id as str
    runs: int = 10
    seed: int = 0


def _cell_seed(base: int, run: int, target: int) -> int:
    return (base * 1000003 + run * 10007 + target) % (2**31 - 1)


def _protocol_cell(args) -> dict:
    g, spec, run, c = args
    det = DetectorConfig(
        spec.detector.algorithm,
        seed=spec.detector.seed + run,
        louvain_resolution=spec.detector.louvain_resolution,
        max_passes=spec.detector.max_passes,
        external_path=spec.detector.external_path,
    )
    p = detect(g, det)
    if c not in p.communities:
        return {}
    beta = default_budget(len(p.members(c)), spec.budget_frac)
    budget = make_budget(beta, spec.add_frac, spec.del_frac)
    seed = _cell_seed(spec.seed, run, c)
    g_after, plan = run_method(spec.method, g, p, c, budget, seed)
    report = evaluate(
        g, g_after, p, c, det,
        meta={
            "method": spec.method,
            "seed": seed,
            "budget": beta,
            "detector": spec.detector.algorithm,
            "target": c,
            "run": run,
            "n_updates": len(plan.updates),
        },
    )
    return report.as_record()


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_protocol(g: Graph, spec: ExperimentSpec) -> list[dict]:
    """Averaging protocol: each target community once per run.

    With target="each" every detected community is a target in turn; with
    "largest" only the biggest one; an integer string pins one community.
    """
    cells = []
    for run in range(spec.runs):
        det = DetectorConfig(
            spec.detector.algorithm,
            seed=spec.detector.seed + run,
            louvain_resolution=spec.detector.louvain_resolution,
            max_passes=spec.detector.max_passes,
            external_path=spec.detector.external_path,
        )
        p = detect(g, det)
        if spec.target == "each":
            targets = p.community_ids()
        elif spec.target == "largest":
            targets = [max(p.communities, key=lambda c: (len(p.members(c)), -c))]
        else:
            targets = [int(spec.target)]
        for c in targets:
            cells.append((g, spec, run, c))
    workers = _thread_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_protocol_cell, cells))
    else:
        results = [_protocol_cell(cell) for cell in cells]
    return [r for r in results if r]


def aggregate(records: list[dict]) -> dict:
    keys = ("nmi", "mnmi", "comm_splits", "comm_uniformity")
    if not records:
        return {k: float("nan") for k in keys}
    return {k: sum(r[k] for r in records) / len(records) for k in keys}


def sweep(
    axis: str,
    values: list[float],
    n: int = 2000,
    k_comms: int = 20,
    avg_deg: float = 20.0,
    mu: float = 0.4,
    budget_frac: float = 0.3,
    method: str = "neural",
    detector: str = "louvain",
    n_targets: int = 3,
    runs: int = 2,
    seed: int = 0,
) -> list[dict]:
    """Run the full pipeline per axis value and average the metrics.

    axis is "budget-fraction" or "mu"; the other parameter stays at its
    default-protocol value.
    """
    if axis not in ("budget-fraction", "mu"):
        raise ValueError(f"unknown sweep axis {axis!r}")
    rows = []
    for value in values:
        cur_mu = value if axis == "mu" else mu
        cur_frac = value if axis == "budget-fraction" else budget_frac
        records: list[dict] = []
        for run in range(runs):
            params = synthgen.SynthParams(n, k_comms, cur_mu, avg_deg, seed=seed + run)
            g, _ = synthgen.generate(params)
            det = DetectorConfig(detector, seed=seed + run)
            p = detect(g, det)
            # target choice must not depend on the axis value: pairing the
            # same (graph, targets) across values cancels detector noise
            rng = random.Random(_cell_seed(seed, run, 0))
            ids = p.community_ids()
            targets = rng.sample(ids, min(n_targets, len(ids)))
            for c in targets:
                beta = default_budget(len(p.members(c)), cur_frac)
                g_after, _ = run_method(
                    method, g, p, c, neural.Budget(beta), _cell_seed(seed, run, c)
                )
                rep = evaluate(
                    g, g_after, p, c, det,
                    meta={"axis": axis, "value": value, "target": c, "run": run},
                )
                records.append(rep.as_record())
        row = {"axis": axis, "value": value, "cells": len(records)}
        row.update(aggregate(records))
        rows.append(row)
    return rows


def bench(
    edge_targets: list[int],
    avg_deg: float = 20.0,
    mu: float = 0.4,
    k_comms: int = 4,
    budget_frac: float = 0.3,
    seed: int = 0,
) -> list[dict]:
    """Time deceive() on planted-partition graphs whose target community
    spans roughly the requested edge counts. Only the deceive call is
    timed; graph generation and setup are excluded."""
    rows = []
    for target_edges in edge_targets:
        # |E_C| ~ s * avg_deg * (1 - mu/2); round s up to keep n divisible
        s = max(8, math.ceil(target_edges / (avg_deg * (1.0 - mu / 2))))
        n = s * k_comms
        params = synthgen.SynthParams(n, k_comms, mu, avg_deg, seed=seed)
        g, p = synthgen.generate(params)
        c = 0
        intra, inter = classify_edges(g, p, c)
        e_c = len(intra) + len(inter)
        beta = default_budget(len(p.members(c)), budget_frac)
        t0 = time.perf_counter()
        _, plan = neural.deceive(g, p, c, neural.Budget(beta), seed)
        elapsed = time.perf_counter() - t0
        rows.append(
            {
                "requested_edges": target_edges,
                "community_size": s,
                "n": n,
                "e_c": e_c,
                "beta": beta,
                "updates": len(plan.updates),
                "seconds": elapsed,
            }
        )
    return rows


def loglog_slope(rows: list[dict], x_key: str = "e_c", y_key: str = "seconds") -> float:
    from scipy.stats import linregress

    xs = [math.log(r[x_key]) for r in rows]
    ys = [math.log(r[y_key]) for r in rows]
    return linregress(xs, ys).slope


def node_hiding_score(
    g: Graph,
    runs: int = 20,
    target_frac: float = 0.3,
    budget_frac: float = 0.3,
    detector: str = "louvain",
    seed: int = 0,
) -> float:
    """Fraction of randomly chosen target nodes hidden after rewiring.

    A node counts as hidden when, after re-detection, fewer than half of
    its original co-members share its new community. Each target's budget
    is derived from its original community size.
    """
    hidden = 0
    total = 0
    n_targets = math.ceil(target_frac * g.n)
    for run in range(runs):
        det = DetectorConfig(detector, seed=seed + run)
        p = detect(g, det)
        rng = random.Random(_cell_seed(seed, run, 0))
        targets = rng.sample(range(g.n), n_targets)
        for t in targets:
            co_members = p.members(p.label_of(t)) - {t}
            beta = default_budget(len(p.members(p.label_of(t))), budget_frac)
            g_after, _ = neural.hide_node(g, p, t, neural.Budget(beta), seed)
            p_after = detect(g_after, det)
            new_comm = p_after.members(p_after.label_of(t))
            total += 1
            if not co_members or len(co_members & new_comm) < len(co_members) / 2:
                hidden += 1
    return hidden / total if total else 0.0


def write_records(path: str, records: list[dict]) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")


def format_table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)"
    keys = list(rows[0])
    widths = {
        k: max(len(k), *(len(_fmt(r.get(k))) for r in rows)) for k in keys
    }
    lines = ["  ".join(k.ljust(widths[k]) for k in keys)]
    for r in rows:
        lines.append("  ".join(_fmt(r.get(k)).ljust(widths[k]) for k in keys))
    return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)
