"""Evaluation metrics for community deception.

NMI uses natural logs and the arithmetic-mean-of-entropies normalization.
A zero-entropy marginal yields NMI 0, except when both partitions are the
(identical) single-community labeling, which scores 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import CommunityPartition, Graph


@dataclass
class EvaluationReport:
    nmi: float
    mnmi: float
    comm_splits: int
    comm_uniformity: float
    meta: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        rec = {
            "nmi": self.nmi,
            "mnmi": self.mnmi,
            "comm_splits": self.comm_splits,
            "comm_uniformity": self.comm_uniformity,
        }
        rec.update(self.meta)
        return rec


def _nmi_from_labels(a: list[int], b: list[int]) -> float:
    n = len(a)
    if n == 0:
        raise ValueError("empty label vectors")
    count_a: dict[int, int] = {}
    count_b: dict[int, int] = {}
    joint: dict[tuple[int, int], int] = {}
    for x, y in zip(a, b):
        count_a[x] = count_a.get(x, 0) + 1
        count_b[y] = count_b.get(y, 0) + 1
        joint[(x, y)] = joint.get((x, y), 0) + 1
    h_a = -sum((c / n) * math.log(c / n) for c in count_a.values())
    h_b = -sum((c / n) * math.log(c / n) for c in count_b.values())
    if h_a == 0.0 and h_b == 0.0:
        return 1.0  # both single-community, hence identical
    if h_a == 0.0 or h_b == 0.0:
        return 0.0
    mi = 0.0
    for (x, y), c in joint.items():
        mi += (c / n) * math.log(n * c / (count_a[x] * count_b[y]))
    return mi / ((h_a + h_b) / 2)


def nmi(p_before: CommunityPartition, p_after: CommunityPartition) -> float:
    if p_before.n != p_after.n:
        raise ValueError("partitions cover different node universes")
    return _nmi_from_labels(p_before.labels, p_after.labels)


def mnmi(
    p_before: CommunityPartition,
    p_after: CommunityPartition,
    g: Graph,
    c: int,
) -> float:
    """NMI restricted to the target community and its immediate neighbors.

    The neighborhood is taken in g; pass the pre-rewiring graph to measure
    concealment of the original local context (the default protocol).
    """
    if p_before.n != p_after.n:
        raise ValueError("partitions cover different node universes")
    members = p_before.members(c)
    region = set(members)
    for v in members:
        region |= g.neighbors(v)
    nodes = sorted(region)
    return _nmi_from_labels(
        [p_before.labels[v] for v in nodes], [p_after.labels[v] for v in nodes]
    )


def comm_splits(p_after: CommunityPartition, c_nodes: set[int]) -> int:
    """Number of post-rewiring communities containing target nodes."""
    if not c_nodes:
        raise ValueError("target node set is empty")
    return len({p_after.label_of(v) for v in c_nodes})


def comm_uniformity(p_after: CommunityPartition, c_nodes: set[int]) -> float:
    """Entropy of the target nodes' spread over post-rewiring communities."""
    if not c_nodes:
        raise ValueError("target node set is empty")
    counts: dict[int, int] = {}
    for v in c_nodes:
        lab = p_after.label_of(v)
        counts[lab] = counts.get(lab, 0) + 1
    total = len(c_nodes)
    return -sum((k / total) * math.log(k / total) for k in counts.values())
