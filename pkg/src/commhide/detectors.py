"""Built-in community detection: Louvain and asynchronous label
propagation, plus loading of externally computed partitions.

Both detectors are fully seeded; a fixed seed gives a deterministic
partition. Louvain runs greedy modularity two-phase passes until no move
improves modularity by more than 1e-9, breaking ties toward the first
community encountered in neighbor-scan order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import CommunityPartition, Graph, UnknownNodeError
from .io import read_partition

_GAIN_TOL = 1e-9


@dataclass
class DetectorConfig:
    algorithm: str = "louvain"  # louvain | labelprop | external
    seed: int = 0
    louvain_resolution: float = 1.0
    max_passes: int = 100
    external_path: str | None = None


def modularity(g: Graph, p: CommunityPartition) -> float:
    """Newman modularity Q of a partition."""
    m = g.edge_count
    if m == 0:
        raise ValueError("modularity undefined on a graph with no edges")
    intra: dict[int, int] = {}
    deg_sum: dict[int, int] = {}
    for v in range(g.n):
        c = p.label_of(v)
        deg_sum[c] = deg_sum.get(c, 0) + g.degree(v)
    for u, v in g.edges():
        if p.labels[u] == p.labels[v]:
            c = p.labels[u]
            intra[c] = intra.get(c, 0) + 1
    q = 0.0
    for c, d in deg_sum.items():
        q += intra.get(c, 0) / m - (d / (2 * m)) ** 2
    return q


class _WeightedGraph:
    """Aggregated-level graph for Louvain: weighted adjacency + self-loops."""

    def __init__(self, n: int):
        self.adj: list[dict[int, float]] = [dict() for _ in range(n)]
        self.loops = [0.0] * n

    @classmethod
    def from_graph(cls, g: Graph) -> "_WeightedGraph":
        w = cls(g.n)
        for u, v in g.edges():
            w.adj[u][v] = 1.0
            w.adj[v][u] = 1.0
        return w

    @property
    def n(self) -> int:
        return len(self.adj)

    def strength(self, v: int) -> float:
        return sum(self.adj[v].values()) + 2 * self.loops[v]

    def total_weight(self) -> float:
        return sum(self.strength(v) for v in range(self.n)) / 2


def _louvain_local_move(
    wg: _WeightedGraph, rng: random.Random, resolution: float, max_passes: int
) -> list[int]:
    n = wg.n
    comm = list(range(n))
    k = [wg.strength(v) for v in range(n)]
    sigma_tot = list(k)
    two_m = 2 * wg.total_weight()
    if two_m == 0:
        return comm
    order = list(range(n))
    for _ in range(max_passes):
        rng.shuffle(order)
        gain_total = 0.0
        for v in order:
            cv = comm[v]
            links: dict[int, float] = {}
            for w, wt in wg.adj[v].items():
                links[comm[w]] = links.get(comm[w], 0.0) + wt
            sigma_tot[cv] -= k[v]
            base = links.get(cv, 0.0) - resolution * sigma_tot[cv] * k[v] / two_m
            best_comm, best_gain = cv, 0.0
            for c, wt in links.items():
                if c == cv:
                    continue
                gain = (wt - resolution * sigma_tot[c] * k[v] / two_m) - base
                if gain > best_gain + _GAIN_TOL:
                    best_gain = gain
                    best_comm = c
            comm[v] = best_comm
            sigma_tot[best_comm] += k[v]
            gain_total += best_gain
        if gain_total <= _GAIN_TOL:
            break
    return comm


def louvain(
    g: Graph, seed: int = 0, resolution: float = 1.0, max_passes: int = 100
) -> CommunityPartition:
    rng = random.Random(seed)
    wg = _WeightedGraph.from_graph(g)
    node_comm = list(range(g.n))  # original node -> current top-level label
    prev_q = None
    while True:
        comm = _louvain_local_move(wg, rng, resolution, max_passes)
        ids = sorted(set(comm))
        remap = {c: i for i, c in enumerate(ids)}
        comm = [remap[c] for c in comm]
        node_comm = [comm[c] for c in node_comm]
        if len(ids) == wg.n:
            break
        # aggregate communities into super-nodes
        agg = _WeightedGraph(len(ids))
        for v in range(wg.n):
            cv = comm[v]
            agg.loops[cv] += wg.loops[v]
            for w, wt in wg.adj[v].items():
                cw = comm[w]
                if cv == cw:
                    if v < w:
                        agg.loops[cv] += wt
                else:
                    agg.adj[cv][cw] = agg.adj[cv].get(cw, 0.0) + wt
        wg = agg
        if g.edge_count > 0:
            q = modularity(g, CommunityPartition(node_comm))
            assert prev_q is None or q >= prev_q - _GAIN_TOL, "modularity regressed"
            if prev_q is not None and q <= prev_q + _GAIN_TOL:
                break
            prev_q = q
    return CommunityPartition(node_comm)


def label_propagation(
    g: Graph, seed: int = 0, max_passes: int = 100
) -> CommunityPartition:
    rng = random.Random(seed)
    labels = list(range(g.n))
    order = list(range(g.n))
    for _ in range(max_passes):
        rng.shuffle(order)
        changed = False
        for v in order:
            nbrs = g.neighbors(v)
            if not nbrs:
                continue
            counts: dict[int, int] = {}
            for w in nbrs:
                counts[labels[w]] = counts.get(labels[w], 0) + 1
            top = max(counts.values())
            winners = sorted(c for c, k in counts.items() if k == top)
            if labels[v] in winners:
                continue
            labels[v] = winners[rng.randrange(len(winners))]
            changed = True
        if not changed:
            break
    remap = {c: i for i, c in enumerate(sorted(set(labels)))}
    return CommunityPartition([remap[c] for c in labels])


def detect(g: Graph, cfg: DetectorConfig) -> CommunityPartition:
    if g.n == 0:
        raise ValueError("cannot detect communities on an empty graph")
    if cfg.algorithm == "louvain":
        return louvain(g, cfg.seed, cfg.louvain_resolution, cfg.max_passes)
    if cfg.algorithm == "labelprop":
        return label_propagation(g, cfg.seed, cfg.max_passes)
    if cfg.algorithm == "external":
        if cfg.external_path is None:
            raise ValueError("external detector requires a partition path")
        name_to_id = {str(v): v for v in range(g.n)}
        p = read_partition(cfg.external_path, name_to_id)
        if p.n != g.n:
            raise UnknownNodeError("external partition does not cover the graph")
        return p
    raise ValueError(f"unknown detector {cfg.algorithm!r}")
