"""Shared fixtures and independent reference implementations.

The reference functions recompute everything from first principles
(itertools over neighbor sets, full-graph recomputation) so they stay
independent of the package's incremental code paths.
"""

from __future__ import annotations

import itertools
import random

import pytest

from commhide import permanence
from commhide.graph import (
    CommunityPartition,
    EdgeUpdate,
    Graph,
    UpdateKind,
    classify_edges,
)


def ref_permanence(g: Graph, p: CommunityPartition, v: int) -> float:
    nbrs = sorted(g.neighbors(v))
    deg = len(nbrs)
    if deg == 0:
        return 0.0
    own = p.label_of(v)
    internal = [w for w in nbrs if p.label_of(w) == own]
    external = [w for w in nbrs if p.label_of(w) != own]
    i = len(internal)
    if external:
        counts = {}
        for w in external:
            counts[p.label_of(w)] = counts.get(p.label_of(w), 0) + 1
        e_max = max(counts.values())
    else:
        e_max = 1
    if i >= 2:
        links = sum(
            1 for a, b in itertools.combinations(internal, 2) if g.has_edge(a, b)
        )
        c_in = links / (i * (i - 1) / 2)
    else:
        c_in = 0.0
    return i / (e_max * deg) - (1.0 - c_in)


def ref_network_permanence(g: Graph, p: CommunityPartition) -> float:
    return sum(ref_permanence(g, p, v) for v in range(g.n)) / g.n


def ref_update_loss(
    g: Graph, p: CommunityPartition, kind: UpdateKind, u: int, v: int
) -> float:
    """Full-network Perm(G) - Perm(G') recomputation."""
    before = ref_network_permanence(g, p)
    h = g.copy()
    if kind is UpdateKind.ADD_INTER:
        h.add_edge(u, v)
    else:
        h.delete_edge(u, v)
    return before - ref_network_permanence(h, p)


def brute_best_update(g: Graph, p: CommunityPartition, c: int):
    """Exhaustive per-step oracle over the full legal update universe.

    Returns ('add'|'del', (u, v), loss) with the package's tie rules:
    addition beats deletion at equal loss, then smallest pair. None when
    the universe is empty.
    """
    members = p.members(c)
    best = None

    def consider(op, pair, loss):
        nonlocal best
        if best is None or loss > best[2] + 1e-15:
            best = (op, pair, loss)
        elif abs(loss - best[2]) <= 1e-15:
            if (best[0] == "del" and op == "add") or (
                best[0] == op and pair < best[1]
            ):
                best = (op, pair, loss)

    for u in sorted(members):
        for v in range(g.n):
            if v in members or g.has_edge(u, v):
                continue
            r = permanence.exact_loss(
                g, p, EdgeUpdate(UpdateKind.ADD_INTER, u, v, 0.0)
            )
            consider("add", (u, v), r.total_loss)
    intra, _ = classify_edges(g, p, c)
    for a, b in sorted(intra):
        if g.degree(a) < 2 or g.degree(b) < 2:
            continue
        r = permanence.exact_loss(
            g, p, EdgeUpdate(UpdateKind.DELETE_INTRA, a, b, 0.0)
        )
        consider("del", (a, b), r.total_loss)
    return best


def random_instance(
    rnd: random.Random,
    n_lo: int = 6,
    n_hi: int = 24,
    k_lo: int = 2,
    k_hi: int = 5,
    density: float = 3.0,
) -> tuple[Graph, CommunityPartition]:
    """Random graph with a random full-coverage partition."""
    n = rnd.randrange(n_lo, n_hi + 1)
    g = Graph(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = rnd.randrange(0, min(len(pairs), int(density * n)) + 1)
    for u, v in rnd.sample(pairs, m):
        g.add_edge(u, v)
    k = rnd.randrange(k_lo, k_hi)
    labels = [rnd.randrange(k) for _ in range(n)]
    for i in range(k):
        labels[i % n] = i
    return g, CommunityPartition(labels)


@pytest.fixture
def g6() -> tuple[Graph, CommunityPartition]:
    """Triangle community {0,1,2}, path community {3,4,5}, bridge (2,3)."""
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (2, 3)])
    return g, CommunityPartition([0, 0, 0, 1, 1, 1])
