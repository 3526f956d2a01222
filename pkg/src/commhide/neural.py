"""Greedy permanence-loss deception of a target community.

Each step applies whichever legal update (inter-community addition
incident to the target, or intra-community deletion inside it) has the
larger exact network permanence loss, with ties going to addition. The
partition is frozen during rewiring: every loss is evaluated against the
community structure obtained from the initial detection.

The per-step argmax is exact over the full legal update universe. Both
update classes only perturb permanence terms of nodes within distance one
of the touched edge, so the engine keeps per-node terms and candidate
scores incrementally instead of rescanning the graph every step.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from sortedcontainers import SortedList

from . import permanence
from .graph import (
    CommunityPartition,
    EdgeUpdate,
    Graph,
    UpdateKind,
)


@dataclass(frozen=True)
class Budget:
    """Total edge-update budget, optionally split into add/delete quotas."""

    beta: int
    beta_add: int | None = None
    beta_del: int | None = None

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("budget must be non-negative")
        if (self.beta_add is None) != (self.beta_del is None):
            raise ValueError("split budgets must be given together")
        if self.beta_add is not None:
            if self.beta_add < 0 or self.beta_del < 0:
                raise ValueError("split budgets must be non-negative")
            if self.beta_add + self.beta_del != self.beta:
                raise ValueError("split budgets must sum to beta")


@dataclass
class UpdatePlan:
    updates: list[EdgeUpdate] = field(default_factory=list)
    per_step_loss: list[float] = field(default_factory=list)
    terminated_early: bool = False

    @property
    def additions(self) -> list[EdgeUpdate]:
        return [u for u in self.updates if u.kind is UpdateKind.ADD_INTER]

    @property
    def deletions(self) -> list[EdgeUpdate]:
        return [u for u in self.updates if u.kind is UpdateKind.DELETE_INTRA]


class _DeceptionEngine:
    """Incremental candidate scoring for one (graph, partition, target)."""

    def __init__(self, g: Graph, p: CommunityPartition, cid: int):
        self.g = g
        self.p = p
        self.cid = cid
        self.labels = p.labels
        self.members = p.members(cid)
        n = g.n

        # neighbor counts per community, for every node
        self.cnt: list[dict[int, int]] = [dict() for _ in range(n)]
        for v in range(n):
            c = self.cnt[v]
            for w in g.neighbors(v):
                lw = self.labels[w]
                c[lw] = c.get(lw, 0) + 1

        # edge count among internal neighbors, for target members only
        self.tri: dict[int, int] = {u: 0 for u in self.members}
        intra = []
        for u in self.members:
            for v in g.neighbors(u):
                if u < v and v in self.members:
                    intra.append((u, v))
        for a, b in intra:
            for w in g.neighbors(a) & g.neighbors(b):
                if w in self.members:
                    self.tri[w] += 1

        # deletion candidates: lazy max-heap keyed by (-loss, a, b)
        self.del_heap: list[tuple[float, int, int, int]] = []
        self.del_stamp: dict[tuple[int, int], int] = {}
        for a, b in intra:
            self._rescore_deletion(a, b)

        # addition candidates: one gain value per external node (its own
        # side of the loss) and per-member add scores; both kept in sorted
        # order keyed by (-score, node) for best-first walks
        self.ext_gain: dict[int, float] = {}
        ext_entries = []
        for v in range(n):
            if v not in self.members:
                gain = self._external_gain(v)
                self.ext_gain[v] = gain
                ext_entries.append((-gain, v))
        self.ext_list = SortedList(ext_entries)

        self.fval: dict[int, tuple[float, float, frozenset[int]]] = {}
        mem_entries = []
        for u in self.members:
            fv = self._member_scores(u)
            self.fval[u] = fv
            mem_entries.append((-fv[0], u))
        self.mem_list = SortedList(mem_entries)

    # ---- per-node scores -------------------------------------------------

    def _ext_counts(self, x: int) -> tuple[int, int]:
        """(internal degree, real max external count) of node x."""
        own = self.labels[x]
        i = 0
        e_real = 0
        for c, k in self.cnt[x].items():
            if c == own:
                i = k
            elif k > e_real:
                e_real = k
        return i, e_real

    def _external_gain(self, v: int) -> float:
        """Loss contribution of external node v when it gains an edge to
        the target community (its internal clustering is unaffected)."""
        deg = self.g.degree(v)
        if deg == 0:
            return 1.0
        i, e_real = self._ext_counts(v)
        into_c = self.cnt[v].get(self.cid, 0)
        e1 = max(e_real, 1)
        e2 = max(e_real, into_c + 1, 1)
        return i / (e1 * deg) - i / (e2 * (deg + 1))

    def _member_scores(self, u: int) -> tuple[float, float, frozenset[int]]:
        """(max-pull gain, regular gain, max-pull communities) for member u."""
        deg = self.g.degree(u)
        if deg == 0:
            return 1.0, 1.0, frozenset()
        i, e_real = self._ext_counts(u)
        e1 = max(e_real, 1)
        freg = i / (e1 * deg) - i / (e1 * (deg + 1))
        if e_real == 0:
            return freg, freg, frozenset()
        fmax = i / (e_real * deg) - i / ((e_real + 1) * (deg + 1))
        mp = frozenset(
            c for c, k in self.cnt[u].items() if c != self.cid and k == e_real
        )
        return fmax, freg, mp

    def _deletion_loss(self, a: int, b: int) -> float | None:
        """Exact loss of deleting intra edge (a, b); None when excluded."""
        g = self.g
        da, db = g.degree(a), g.degree(b)
        if da < 2 or db < 2:
            return None
        common_int = [
            w for w in g.neighbors(a) & g.neighbors(b) if w in self.members
        ]
        cn = len(common_int)
        total = 0.0
        for x, deg in ((a, da), (b, db)):
            i, e_real = self._ext_counts(x)
            e1 = max(e_real, 1)
            t = self.tri[x]
            cin_before = t / (i * (i - 1) / 2) if i >= 2 else 0.0
            before = i / (e1 * deg) - (1.0 - cin_before)
            i2, t2 = i - 1, t - cn
            cin_after = t2 / (i2 * (i2 - 1) / 2) if i2 >= 2 else 0.0
            after = i2 / (e1 * (deg - 1)) - (1.0 - cin_after)
            total += before - after
        for w in common_int:
            iw = self.cnt[w][self.cid]
            total += 1.0 / (iw * (iw - 1) / 2)
        return total / g.n

    # ---- candidate maintenance ------------------------------------------

    def _rescore_deletion(self, a: int, b: int) -> None:
        key = (a, b) if a < b else (b, a)
        stamp = self.del_stamp.get(key, 0) + 1
        self.del_stamp[key] = stamp
        loss = self._deletion_loss(*key)
        if loss is not None:
            heapq.heappush(self.del_heap, (-loss, key[0], key[1], stamp))

    def _invalidate_deletion(self, a: int, b: int) -> None:
        key = (a, b) if a < b else (b, a)
        self.del_stamp[key] = self.del_stamp.get(key, 0) + 1

    def _refresh_ext(self, v: int) -> None:
        self.ext_list.remove((-self.ext_gain[v], v))
        gain = self._external_gain(v)
        self.ext_gain[v] = gain
        self.ext_list.add((-gain, v))

    def _refresh_member(self, u: int) -> None:
        self.mem_list.remove((-self.fval[u][0], u))
        fv = self._member_scores(u)
        self.fval[u] = fv
        self.mem_list.add((-fv[0], u))

    # ---- per-step argmax -------------------------------------------------

    def best_deletion(self) -> tuple[int, int, float] | None:
        heap = self.del_heap
        while heap:
            neg, a, b, stamp = heap[0]
            if self.del_stamp.get((a, b)) != stamp:
                heapq.heappop(heap)
                continue
            return a, b, -neg
        return None

    def best_addition(self) -> tuple[int, int, float] | None:
        if not self.ext_list or not self.mem_list:
            return None
        g_top = -self.ext_list[0][0]
        best_loss = None
        best_pair = None
        adj = self.g.neighbors
        for neg_fmax_u, u in self.mem_list:
            fmax_u = -neg_fmax_u
            if best_loss is not None and fmax_u + g_top < best_loss:
                break
            fmax, freg, mp = self.fval[u]
            nbrs_u = adj(u)
            for neg_gain, v in self.ext_list:
                gain_v = -neg_gain
                if best_loss is not None and fmax + gain_v < best_loss:
                    break
                if v in nbrs_u:
                    continue
                f_uv = fmax if self.labels[v] in mp else freg
                val = f_uv + gain_v
                pair = (u, v)
                if (
                    best_loss is None
                    or val > best_loss
                    or (val == best_loss and pair < best_pair)
                ):
                    best_loss = val
                    best_pair = pair
        if best_pair is None:
            return None
        # normalize by |V| to match deletion losses and exact_loss totals
        return best_pair[0], best_pair[1], best_loss / self.g.n

    # ---- applying updates ------------------------------------------------

    def apply_addition(self, u: int, v: int) -> None:
        g = self.g
        g.add_edge(u, v)
        cv = self.labels[v]
        self.cnt[u][cv] = self.cnt[u].get(cv, 0) + 1
        self.cnt[v][self.cid] = self.cnt[v].get(self.cid, 0) + 1
        for b in g.neighbors(u):
            if b in self.members:
                self._rescore_deletion(u, b)
        self._refresh_member(u)
        self._refresh_ext(v)

    def apply_deletion(self, u: int, v: int) -> None:
        g = self.g
        common_int = [
            w for w in g.neighbors(u) & g.neighbors(v) if w in self.members
        ]
        g.delete_edge(u, v)
        self.cnt[u][self.cid] -= 1
        self.cnt[v][self.cid] -= 1
        cn = len(common_int)
        self.tri[u] -= cn
        self.tri[v] -= cn
        for w in common_int:
            self.tri[w] -= 1
        self._invalidate_deletion(u, v)

        to_rescore: set[tuple[int, int]] = set()
        for x in (u, v):
            internal = [b for b in g.neighbors(x) if b in self.members]
            for b in internal:
                to_rescore.add((min(x, b), max(x, b)))
            # candidates for which x is a common internal neighbor
            for idx, a in enumerate(internal):
                adj_a = g.neighbors(a)
                for b in internal[idx + 1 :]:
                    if b in adj_a:
                        to_rescore.add((min(a, b), max(a, b)))
        for w in common_int:
            for b in g.neighbors(w):
                if b in self.members:
                    to_rescore.add((min(w, b), max(w, b)))
        for a, b in to_rescore:
            self._rescore_deletion(a, b)
        self._refresh_member(u)
        self._refresh_member(v)

    # ---- driver ----------------------------------------------------------

    def step(
        self, allow_add: bool, allow_del: bool
    ) -> tuple[UpdateKind, int, int, float] | None:
        add = self.best_addition() if allow_add else None
        dele = self.best_deletion() if allow_del else None
        add_loss = add[2] if add else float("-inf")
        del_loss = dele[2] if dele else float("-inf")
        if add is not None and add_loss > 0 and add_loss >= del_loss:
            return UpdateKind.ADD_INTER, add[0], add[1], add_loss
        if dele is not None and del_loss > 0:
            return UpdateKind.DELETE_INTRA, dele[0], dele[1], del_loss
        return None


def best_addition(
    g: Graph, p: CommunityPartition, c: int
) -> tuple[EdgeUpdate, float] | None:
    """Best single inter-community addition incident to community c,
    or None when no candidate has positive exact loss."""
    if not p.members(c):
        raise ValueError(f"community {c} is empty")
    engine = _DeceptionEngine(g.copy(), p, c)
    res = engine.best_addition()
    if res is None or res[2] <= 0:
        return None
    u, v, loss = res
    report = permanence.exact_loss(g, p, EdgeUpdate(UpdateKind.ADD_INTER, u, v, 0.0))
    return report.update, report.total_loss


def best_deletion(
    g: Graph, p: CommunityPartition, c: int
) -> tuple[EdgeUpdate, float] | None:
    """Best single intra-community deletion inside community c (endpoints
    of degree >= 2 only), or None when none has positive exact loss."""
    p.members(c)
    engine = _DeceptionEngine(g.copy(), p, c)
    res = engine.best_deletion()
    if res is None or res[2] <= 0:
        return None
    a, b, loss = res
    report = permanence.exact_loss(g, p, EdgeUpdate(UpdateKind.DELETE_INTRA, a, b, 0.0))
    return report.update, report.total_loss


def deceive(
    g: Graph,
    p: CommunityPartition,
    c: int,
    budget: Budget,
    seed: int = 0,
) -> tuple[Graph, UpdatePlan]:
    """Greedily rewire a copy of g to hide community c within the budget.

    Deterministic for a fixed (graph, partition, budget): ties break
    toward addition and toward the lexicographically smallest pair. The
    seed is recorded by callers for provenance but does not influence the
    plan.
    """
    p.members(c)
    work = g.copy()
    engine = _DeceptionEngine(work, p, c)
    plan = UpdatePlan()
    adds_left = budget.beta_add if budget.beta_add is not None else budget.beta
    dels_left = budget.beta_del if budget.beta_del is not None else budget.beta
    remaining = budget.beta
    while remaining > 0:
        chosen = engine.step(adds_left > 0, dels_left > 0)
        if chosen is None:
            plan.terminated_early = True
            break
        kind, u, v, _ = chosen
        report = permanence.exact_loss(work, p, EdgeUpdate(kind, u, v, 0.0))
        if kind is UpdateKind.ADD_INTER:
            engine.apply_addition(u, v)
            adds_left -= 1
        else:
            engine.apply_deletion(u, v)
            dels_left -= 1
        remaining -= 1
        plan.updates.append(report.update)
        plan.per_step_loss.append(report.total_loss)
    return work, plan


def hide_node(
    g: Graph,
    p: CommunityPartition,
    t: int,
    budget: Budget,
    seed: int = 0,
) -> tuple[Graph, UpdatePlan]:
    """Hide a single node by treating it as a singleton target.

    The target being a single node fixes the update universe: deleting an
    intra-community edge is pointless for a one-node target, so the plan
    consists solely of inter-community additions incident to t. Losses are
    evaluated against the full original partition, so successive additions
    ratchet up t's maximum external pull and drag it out of its community.
    Deterministic: ties break toward the smallest node id.
    """
    c_t = p.label_of(t)
    work = g.copy()
    plan = UpdatePlan()
    n = g.n
    for _ in range(budget.beta):
        best: tuple[float, int] | None = None
        for v in range(n):
            if v == t or p.labels[v] == c_t or work.has_edge(t, v):
                continue
            # C_in is untouched on both sides of an inter addition, so the
            # closed-form pull scores give the exact loss; an isolated
            # endpoint contributes +1 (permanence 0 -> -1)
            loss = sum(
                1.0
                if work.degree(x) == 0
                else permanence.score_inter_addition(work, p, x, comm)
                for x, comm in ((t, p.labels[v]), (v, c_t))
            ) / n
            if best is None or loss > best[0]:
                best = (loss, v)
        if best is None or best[0] <= 0:
            plan.terminated_early = True
            break
        loss, v = best
        work.add_edge(t, v)
        update = EdgeUpdate(UpdateKind.ADD_INTER, t, v, loss)
        plan.updates.append(update)
        plan.per_step_loss.append(loss)
    return work, plan
