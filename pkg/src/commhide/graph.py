"""Undirected simple graph with a community-partition overlay.

Nodes are dense integer ids 0..n-1. Adjacency is kept as per-node sets;
anything that must be order-sensitive (edge listings, tie-breaking) sorts
on the way out.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class GraphError(Exception):
    pass


class UnknownNodeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class MissingEdgeError(GraphError):
    pass


class UnknownCommunityError(GraphError):
    pass


class Graph:
    """Mutable undirected simple graph on nodes 0..n-1."""

    __slots__ = ("_adj", "edge_count")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("node count must be non-negative")
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self.edge_count = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @property
    def n(self) -> int:
        return len(self._adj)

    def _check_node(self, v: int) -> None:
        if not (0 <= v < len(self._adj)):
            raise UnknownNodeError(f"node {v} not in graph of size {len(self._adj)}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._adj[u]

    def neighbors(self, v: int) -> set[int]:
        self._check_node(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_node(v)
        return len(self._adj[v])

    def add_edge(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise SelfLoopError(f"self-loop on node {u}")
        if v in self._adj[u]:
            raise DuplicateEdgeError(f"edge ({u}, {v}) already present")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self.edge_count += 1

    def delete_edge(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if v not in self._adj[u]:
            raise MissingEdgeError(f"edge ({u}, {v}) not present")
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self.edge_count -= 1

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in sorted order."""
        for u in range(len(self._adj)):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def copy(self) -> "Graph":
        g = Graph(len(self._adj))
        g._adj = [set(s) for s in self._adj]
        g.edge_count = self.edge_count
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class CommunityPartition:
    """Total, disjoint community labeling of all nodes of a graph."""

    __slots__ = ("labels", "communities")

    def __init__(self, labels: list[int]):
        self.labels = list(labels)
        self.communities: dict[int, set[int]] = {}
        for v, c in enumerate(self.labels):
            self.communities.setdefault(c, set()).add(v)

    @property
    def n(self) -> int:
        return len(self.labels)

    def label_of(self, v: int) -> int:
        try:
            return self.labels[v]
        except IndexError:
            raise UnknownNodeError(f"node {v} not covered by partition") from None

    def members(self, c: int) -> set[int]:
        try:
            return self.communities[c]
        except KeyError:
            raise UnknownCommunityError(f"community {c} not in partition") from None

    def community_ids(self) -> list[int]:
        return sorted(self.communities)

    def with_singleton(self, v: int) -> tuple["CommunityPartition", int]:
        """Copy of the partition with v split out as its own new community.

        Returns the derived partition and the fresh community id of v.
        """
        self.label_of(v)
        new_id = max(self.communities) + 1
        labels = list(self.labels)
        labels[v] = new_id
        return CommunityPartition(labels), new_id

    def copy(self) -> "CommunityPartition":
        return CommunityPartition(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommunityPartition):
            return NotImplemented
        return self.labels == other.labels

    def __repr__(self) -> str:
        return f"CommunityPartition(n={self.n}, k={len(self.communities)})"


class UpdateKind(Enum):
    ADD_INTER = "add"
    DELETE_INTRA = "del"


@dataclass(frozen=True)
class EdgeUpdate:
    """One rewiring action together with its exact network permanence loss."""

    kind: UpdateKind
    u: int
    v: int
    loss: float

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


def classify_edges(
    g: Graph, p: CommunityPartition, c: int
) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """Split edges touching community c into intra and inter sets.

    Intra: both endpoints in c. Inter: exactly one endpoint in c.
    Edges are returned as (min, max) pairs.
    """
    members = p.members(c)
    intra: set[tuple[int, int]] = set()
    inter: set[tuple[int, int]] = set()
    for u in members:
        for v in g.neighbors(u):
            if v in members:
                if u < v:
                    intra.add((u, v))
            else:
                inter.add((min(u, v), max(u, v)))
    return intra, inter


def neighbor_community_histogram(
    g: Graph, p: CommunityPartition, v: int
) -> dict[int, int]:
    """Count v's neighbors per community (own community included)."""
    counts: Counter[int] = Counter()
    for w in g.neighbors(v):
        counts[p.label_of(w)] += 1
    return dict(counts)
