"""Edge-list and partition file I/O.

Edge-list format: one edge per line, two whitespace-separated node names,
`#` starts a comment, blank lines ignored. Directed duplicates are
collapsed (input is symmetrized); self-loops are rejected.

Partition format: ``node<TAB>community_id`` per line, every node exactly once.
"""

from __future__ import annotations

import os

from .graph import CommunityPartition, Graph, GraphError


class ParseError(GraphError):
    pass


def _strip_comment(line: str) -> str:
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


def read_edge_list(path: str | os.PathLike) -> tuple[Graph, dict[str, int], list[str]]:
    """Read an edge list; returns (graph, name->id map, id->name list)."""
    name_to_id: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = _strip_comment(raw).strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(
                    f"{path}:{lineno}: expected two node names, got {len(parts)}"
                )
            a, b = parts
            if a == b:
                raise ParseError(f"{path}:{lineno}: self-loop on node {a!r}")
            for name in (a, b):
                if name not in name_to_id:
                    name_to_id[name] = len(name_to_id)
            u, v = name_to_id[a], name_to_id[b]
            edges.add((min(u, v), max(u, v)))
    g = Graph.from_edges(len(name_to_id), sorted(edges))
    id_to_name = [""] * len(name_to_id)
    for name, i in name_to_id.items():
        id_to_name[i] = name
    return g, name_to_id, id_to_name


def write_edge_list(path: str | os.PathLike, g: Graph, id_to_name: list[str] | None = None) -> None:
    with open(path, "w") as fh:
        for u, v in g.edges():
            if id_to_name is None:
                fh.write(f"{u} {v}\n")
            else:
                fh.write(f"{id_to_name[u]} {id_to_name[v]}\n")


def read_partition(
    path: str | os.PathLike, name_to_id: dict[str, int]
) -> CommunityPartition:
    """Read a partition file covering exactly the nodes of name_to_id."""
    labels: dict[int, int] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = _strip_comment(raw).strip()
            if not line:
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) != 2:
                raise ParseError(
                    f"{path}:{lineno}: expected 'node<TAB>community_id'"
                )
            name, comm = parts
            if name not in name_to_id:
                raise ParseError(f"{path}:{lineno}: unknown node {name!r}")
            v = name_to_id[name]
            if v in labels:
                raise ParseError(f"{path}:{lineno}: node {name!r} listed twice")
            try:
                labels[v] = int(comm)
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}: community id {comm!r} is not an integer"
                ) from None
    missing = set(range(len(name_to_id))) - set(labels)
    if missing:
        raise ParseError(f"{path}: {len(missing)} node(s) missing a community label")
    return CommunityPartition([labels[v] for v in range(len(name_to_id))])


def write_partition(
    path: str | os.PathLike, p: CommunityPartition, id_to_name: list[str] | None = None
) -> None:
    with open(path, "w") as fh:
        for v, c in enumerate(p.labels):
            name = str(v) if id_to_name is None else id_to_name[v]
            fh.write(f"{name}\t{c}\n")
