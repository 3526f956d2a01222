import pytest
from hypothesis import given, strategies as st

from commhide.graph import (
    CommunityPartition,
    DuplicateEdgeError,
    Graph,
    MissingEdgeError,
    SelfLoopError,
    UnknownCommunityError,
    UnknownNodeError,
    classify_edges,
    neighbor_community_histogram,
)


class TestGraph:
    def test_empty(self):
        g = Graph(0)
        assert g.n == 0 and g.edge_count == 0
        assert list(g.edges()) == []

    def test_negative_size_rejected(self):
        with pytest.raises(ValueError):
            Graph(-1)

    def test_add_and_delete(self):
        g = Graph(3)
        g.add_edge(0, 1)
        assert g.has_edge(1, 0) and g.edge_count == 1
        assert g.degree(0) == 1 and g.degree(2) == 0
        g.delete_edge(1, 0)
        assert not g.has_edge(0, 1) and g.edge_count == 0

    def test_errors(self):
        g = Graph(3)
        g.add_edge(0, 1)
        with pytest.raises(SelfLoopError):
            g.add_edge(1, 1)
        with pytest.raises(DuplicateEdgeError):
            g.add_edge(1, 0)
        with pytest.raises(MissingEdgeError):
            g.delete_edge(0, 2)
        with pytest.raises(UnknownNodeError):
            g.add_edge(0, 3)
        with pytest.raises(UnknownNodeError):
            g.degree(-1)

    def test_edges_sorted(self):
        g = Graph.from_edges(4, [(2, 3), (0, 3), (1, 0)])
        assert list(g.edges()) == [(0, 1), (0, 3), (2, 3)]

    def test_copy_is_independent(self):
        g = Graph.from_edges(3, [(0, 1)])
        h = g.copy()
        h.add_edge(1, 2)
        assert not g.has_edge(1, 2)
        assert g != h
        assert g == Graph.from_edges(3, [(0, 1)])

    @given(
        st.integers(2, 12).flatmap(
            lambda n: st.tuples(
                st.just(n),
                st.sets(
                    st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).map(
                        lambda t: (min(t), max(t))
                    ).filter(lambda t: t[0] != t[1])
                ),
            )
        )
    )
    def test_from_edges_roundtrip(self, case):
        n, edges = case
        g = Graph.from_edges(n, sorted(edges))
        assert sorted(g.edges()) == sorted(edges)
        assert g.edge_count == len(edges)
        assert sum(g.degree(v) for v in range(n)) == 2 * len(edges)


class TestPartition:
    def test_members_and_labels(self):
        p = CommunityPartition([0, 1, 0, 2])
        assert p.n == 4
        assert p.members(0) == {0, 2}
        assert p.label_of(3) == 2
        assert p.community_ids() == [0, 1, 2]

    def test_errors(self):
        p = CommunityPartition([0, 1])
        with pytest.raises(UnknownCommunityError):
            p.members(7)
        with pytest.raises(UnknownNodeError):
            p.label_of(5)

    def test_with_singleton(self):
        p = CommunityPartition([0, 0, 1])
        q, new_id = p.with_singleton(1)
        assert new_id == 2
        assert q.members(2) == {1}
        assert q.members(0) == {0}
        assert p.members(0) == {0, 1}  # original untouched

    def test_copy_and_eq(self):
        p = CommunityPartition([0, 1, 1])
        q = p.copy()
        assert p == q and p is not q


def test_classify_edges(g6):
    g, p = g6
    intra, inter = classify_edges(g, p, 0)
    assert intra == {(0, 1), (0, 2), (1, 2)}
    assert inter == {(2, 3)}
    intra_b, inter_b = classify_edges(g, p, 1)
    assert intra_b == {(3, 4), (4, 5)}
    assert inter_b == {(2, 3)}


def test_neighbor_community_histogram(g6):
    g, p = g6
    assert neighbor_community_histogram(g, p, 2) == {0: 2, 1: 1}
    assert neighbor_community_histogram(g, p, 5) == {1: 1}
