"""Comparison deceptors sharing the Budget/UpdatePlan contract.

Random: coin-flips add vs delete over any pair/edge touching the target.
DICE: same coin, restricted to inter-community additions and
intra-community deletions. Nagaraja: additions only, pairing the
highest-centrality eligible node inside the target with the highest
outside (degree / eigenvector / random scoring). All methods are seeded
and reproducible; each recorded update carries its exact permanence loss.
"""

from __future__ import annotations

import random
from enum import Enum

from . import permanence
from .graph import CommunityPartition, EdgeUpdate, Graph, UpdateKind
from .neural import Budget, UpdatePlan

_MAX_RETRIES = 1000


class BaselineKind(Enum):
    RANDOM = "random"
    DICE = "dice"
    NAGARAJA_DEGREE = "nagaraja-degree"
    NAGARAJA_EIGEN = "nagaraja-eigen"
    NAGARAJA_RANDOM = "nagaraja-random"


def _record(work: Graph, p: CommunityPartition, plan: UpdatePlan, kind: UpdateKind, u: int, v: int) -> None:
    op = "add" if kind is UpdateKind.ADD_INTER else "del"
    _, _, loss = permanence.raw_update_loss(work, p, op, u, v)
    if kind is UpdateKind.ADD_INTER:
        work.add_edge(u, v)
    else:
        work.delete_edge(u, v)
    plan.updates.append(EdgeUpdate(kind, u, v, loss))
    plan.per_step_loss.append(loss)


def _sample_touching_pair(
    rng: random.Random, work: Graph, members: list[int], outside: list[int]
) -> tuple[int, int] | None:
    """Uniform non-adjacent pair with at least one endpoint in the target."""
    n_cross = len(members) * len(outside)
    n_inner = len(members) * (len(members) - 1) // 2
    if n_cross + n_inner == 0:
        return None
    for _ in range(_MAX_RETRIES):
        idx = rng.randrange(n_cross + n_inner)
        if idx < n_cross:
            u = members[idx // len(outside)]
            v = outside[idx % len(outside)]
        else:
            idx -= n_cross
            i = 0
            # decode triangular index over member pairs
            row_len = len(members) - 1
            while idx >= row_len:
                idx -= row_len
                row_len -= 1
                i += 1
            u = members[i]
            v = members[i + 1 + idx]
        if not work.has_edge(u, v):
            return (u, v)
    return None


def random_deceive(
    g: Graph, p: CommunityPartition, c: int, budget: Budget, seed: int
) -> tuple[Graph, UpdatePlan]:
    rng = random.Random(seed)
    members = sorted(p.members(c))
    member_set = p.members(c)
    outside = sorted(set(range(g.n)) - member_set)
    work = g.copy()
    plan = UpdatePlan()
    for _ in range(budget.beta):
        applied = False
        for _ in range(_MAX_RETRIES):
            if rng.random() < 0.5:
                pair = _sample_touching_pair(rng, work, members, outside)
                if pair is None:
                    continue
                u, v = pair
                op = "add"
            else:
                edges = [
                    (u, v)
                    for u, v in work.edges()
                    if u in member_set or v in member_set
                ]
                if not edges:
                    continue
                u, v = rng.choice(edges)
                op = "del"
            # the random baseline may add intra or delete inter pairs; plan
            # records label the raw operation, not the NEURAL update class
            _, _, loss = permanence.raw_update_loss(work, p, op, u, v)
            if op == "add":
                work.add_edge(u, v)
                kind = UpdateKind.ADD_INTER
            else:
                work.delete_edge(u, v)
                kind = UpdateKind.DELETE_INTRA
            plan.updates.append(EdgeUpdate(kind, u, v, loss))
            plan.per_step_loss.append(loss)
            applied = True
            break
        if not applied:
            plan.terminated_early = True
            break
    return work, plan


def dice_deceive(
    g: Graph, p: CommunityPartition, c: int, budget: Budget, seed: int
) -> tuple[Graph, UpdatePlan]:
    rng = random.Random(seed)
    member_set = p.members(c)
    members = sorted(member_set)
    outside = sorted(set(range(g.n)) - member_set)
    work = g.copy()
    plan = UpdatePlan()
    for _ in range(budget.beta):
        applied = False
        for _ in range(_MAX_RETRIES):
            if rng.random() < 0.5 and outside:
                u = rng.choice(members)
                v = rng.choice(outside)
                if work.has_edge(u, v):
                    continue
                _record(work, p, plan, UpdateKind.ADD_INTER, u, v)
            else:
                intra = [
                    (u, v)
                    for u, v in work.edges()
                    if u in member_set and v in member_set
                ]
                if not intra:
                    continue
                u, v = rng.choice(intra)
                _record(work, p, plan, UpdateKind.DELETE_INTRA, u, v)
            applied = True
            break
        if not applied:
            plan.terminated_early = True
            break
    return work, plan


def _eigenvector_centrality(
    g: Graph, tol: float = 1e-10, max_iter: int = 1000
) -> list[float]:
    """Power iteration per connected component."""
    n = g.n
    score = [0.0] * n
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        x = {v: 1.0 / len(comp) for v in comp}
        for _ in range(max_iter):
            nxt = {v: sum(x[w] for w in g.neighbors(v)) for v in comp}
            norm = sum(val * val for val in nxt.values()) ** 0.5
            if norm == 0:
                break
            nxt = {v: val / norm for v, val in nxt.items()}
            if sum(abs(nxt[v] - x[v]) for v in comp) < tol * len(comp):
                x = nxt
                break
            x = nxt
        for v in comp:
            score[v] = x[v]
    return score


def nagaraja_deceive(
    g: Graph,
    p: CommunityPartition,
    c: int,
    budget: Budget,
    variant: str = "degree",
    seed: int = 0,
) -> tuple[Graph, UpdatePlan]:
    rng = random.Random(seed)
    member_set = p.members(c)
    members = sorted(member_set)
    outside = sorted(set(range(g.n)) - member_set)
    work = g.copy()
    plan = UpdatePlan()

    def centrality() -> list[float]:
        if variant == "degree":
            return [work.degree(v) for v in range(work.n)]
        if variant == "eigen":
            return _eigenvector_centrality(work)
        if variant == "random":
            return [rng.random() for _ in range(work.n)]
        raise ValueError(f"unknown variant {variant!r}")

    for _ in range(budget.beta):
        score = centrality()
        inner = sorted(members, key=lambda v: (-score[v], v))
        outer = sorted(outside, key=lambda v: (-score[v], v))
        chosen = None
        for u in inner:
            nbrs = work.neighbors(u)
            for v in outer:
                if v not in nbrs:
                    chosen = (u, v)
                    break
            if chosen:
                break
        if chosen is None:
            plan.terminated_early = True
            break
        _record(work, p, plan, UpdateKind.ADD_INTER, *chosen)
    return work, plan
