"""Permanence per node / per network, and exact loss of edge updates.

Permanence of a node v:

    perm(v) = I(v) / (E_max(v) * deg(v)) - (1 - C_in(v))

with I(v) the number of neighbors inside v's community, E_max(v) the
largest neighbor count into any single other community, and C_in(v) the
edge density among v's internal neighbors.

Degenerate-case conventions (used uniformly throughout the package):
  * E_max := 1 when v has no external neighbors (avoids division by zero),
  * C_in := 0 when v has fewer than two internal neighbors,
  * perm := 0 for isolated nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    CommunityPartition,
    EdgeUpdate,
    Graph,
    GraphError,
    UpdateKind,
)


class IllegalUpdateError(GraphError):
    pass


@dataclass(frozen=True)
class PermanenceTerms:
    internal_degree: int
    max_external: int
    degree: int
    internal_clustering: float
    permanence: float


@dataclass
class LossReport:
    update: EdgeUpdate
    affected_nodes: set[int]
    delta_per_node: dict[int, float] = field(default_factory=dict)
    total_loss: float = 0.0


def permanence_from_terms(i: int, e_max: int, deg: int, c_in: float) -> float:
    if deg == 0:
        return 0.0
    return i / (e_max * deg) - (1.0 - c_in)


def permanence_of(g: Graph, p: CommunityPartition, v: int) -> PermanenceTerms:
    own = p.label_of(v)
    nbrs = g.neighbors(v)
    internal = [w for w in nbrs if p.labels[w] == own]
    i = len(internal)
    ext_counts: dict[int, int] = {}
    for w in nbrs:
        c = p.labels[w]
        if c != own:
            ext_counts[c] = ext_counts.get(c, 0) + 1
    e_max = max(ext_counts.values()) if ext_counts else 1
    if i < 2:
        c_in = 0.0
    else:
        links = 0
        for idx, a in enumerate(internal):
            adj_a = g.neighbors(a)
            for b in internal[idx + 1 :]:
                if b in adj_a:
                    links += 1
        c_in = links / (i * (i - 1) / 2)
    perm = permanence_from_terms(i, e_max, len(nbrs), c_in)
    return PermanenceTerms(i, e_max, len(nbrs), c_in, perm)


def network_permanence(g: Graph, p: CommunityPartition) -> float:
    if g.n == 0:
        raise ValueError("network permanence undefined on an empty graph")
    return sum(permanence_of(g, p, v).permanence for v in range(g.n)) / g.n


def raw_update_loss(
    g: Graph, p: CommunityPartition, op: str, u: int, v: int
) -> tuple[set[int], dict[int, float], float]:
    """Permanence loss of adding/deleting edge (u, v), with no intra/inter
    legality check (test hook for probing the excluded update classes).

    Affected nodes are {u, v} plus their common neighbors (the only nodes
    whose internal clustering can change). The graph is left unmodified.
    Returns (affected, per-node deltas, total loss normalized by |V|).
    """
    if op not in ("add", "del"):
        raise ValueError(f"unknown op {op!r}")
    affected = {u, v} | (g.neighbors(u) & g.neighbors(v))
    before = {w: permanence_of(g, p, w).permanence for w in affected}
    if op == "add":
        g.add_edge(u, v)
    else:
        g.delete_edge(u, v)
    try:
        after = {w: permanence_of(g, p, w).permanence for w in affected}
    finally:
        if op == "add":
            g.delete_edge(u, v)
        else:
            g.add_edge(u, v)
    deltas = {w: before[w] - after[w] for w in affected}
    total = sum(deltas.values()) / g.n
    return affected, deltas, total


def check_update_legal(g: Graph, p: CommunityPartition, update: EdgeUpdate) -> None:
    u, v = update.u, update.v
    if update.kind is UpdateKind.ADD_INTER:
        if p.label_of(u) == p.label_of(v):
            raise IllegalUpdateError(f"({u}, {v}) is not inter-community")
        if g.has_edge(u, v):
            raise IllegalUpdateError(f"edge ({u}, {v}) already present")
    else:
        if p.label_of(u) != p.label_of(v):
            raise IllegalUpdateError(f"({u}, {v}) is not intra-community")
        if not g.has_edge(u, v):
            raise IllegalUpdateError(f"edge ({u}, {v}) not present")


def exact_loss(g: Graph, p: CommunityPartition, update: EdgeUpdate) -> LossReport:
    """Exact permanence loss Perm(G) - Perm(G') of one legal edge update."""
    check_update_legal(g, p, update)
    op = "add" if update.kind is UpdateKind.ADD_INTER else "del"
    affected, deltas, total = raw_update_loss(g, p, op, update.u, update.v)
    resolved = EdgeUpdate(update.kind, update.u, update.v, total)
    return LossReport(resolved, affected, deltas, total)


def score_intra_deletion(
    g: Graph, p: CommunityPartition, u: int, v: int
) -> float | None:
    """Closed-form pull-term score for deleting intra edge (u, v).

    Per endpoint: (1/E_max) * (deg - I) / (deg * (deg - 1)), summed over
    both endpoints. Returns None (candidate excluded) when either endpoint
    has degree < 2, where the formula is singular.
    """
    if p.label_of(u) != p.label_of(v) or not g.has_edge(u, v):
        raise IllegalUpdateError(f"({u}, {v}) is not a present intra-community edge")
    total = 0.0
    for x in (u, v):
        t = permanence_of(g, p, x)
        if t.degree < 2:
            return None
        total += (t.degree - t.internal_degree) / (
            t.max_external * t.degree * (t.degree - 1)
        )
    return total


def score_inter_addition(
    g: Graph, p: CommunityPartition, u: int, target_comm: int
) -> float:
    """Closed-form score for u gaining an edge into target_comm.

    When target_comm currently exerts u's maximum external pull, the new
    edge bumps E_max along with the degree:

        I * [1/(E_max*deg) - 1/((E_max+1)*(deg+1))]

    otherwise only the degree grows:

        (I/E_max) * [1/deg - 1/(deg+1)]
    """
    own = p.label_of(u)
    p.members(target_comm)
    if target_comm == own:
        raise IllegalUpdateError(f"target community {target_comm} is u's own")
    t = permanence_of(g, p, u)
    if t.degree == 0:
        return 0.0
    count_into_target = sum(
        1 for w in g.neighbors(u) if p.labels[w] == target_comm
    )
    i, e_max, deg = t.internal_degree, t.max_external, t.degree
    has_external = deg > i
    if has_external and count_into_target == e_max:
        return i * (1.0 / (e_max * deg) - 1.0 / ((e_max + 1) * (deg + 1)))
    return (i / e_max) * (1.0 / deg - 1.0 / (deg + 1))
