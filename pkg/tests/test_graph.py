import pytest

from kpathpart import (
    DiGraph,
    GraphError,
    PathCycleCover,
    PathPartition,
    cover_components,
    partition_from_edges,
    singletons_of,
    validate_partition,
)
from kpathpart.generators import tight27, tight27_reference_partitions


def path_graph(n):
    return DiGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


class TestDiGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            DiGraph.from_edges(2, [(0, 0)])

    def test_rejects_duplicate_edges(self):
        with pytest.raises(GraphError):
            DiGraph.from_edges(2, [(0, 1), (0, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            DiGraph.from_edges(2, [(0, 2)])

    def test_adjacency_mirrors_edges(self):
        g = DiGraph.from_edges(4, [(0, 1), (0, 2), (2, 1), (3, 0)])
        assert g.out_adj[0] == (1, 2)
        assert g.in_adj[1] == (0, 2)
        assert g.in_adj[0] == (3,)
        assert g.m == 4

    def test_empty_graph(self):
        g = DiGraph.from_edges(0, [])
        assert g.n == 0 and g.m == 0


class TestValidatePartition:
    def test_single_path_is_its_own_partition(self):
        g = path_graph(3)
        p = PathPartition(k=3, paths=((0, 1, 2),))
        assert validate_partition(g, p).ok

    def test_non_edge_in_sequence(self):
        g = path_graph(3)
        p = PathPartition(k=3, paths=((0, 2), (1,)))
        report = validate_partition(g, p)
        assert not report.ok
        assert any("missing edge (0,2)" in v for v in report.violations)

    def test_tight_instance_optimal_partition(self):
        g = tight27()
        _, q_opt = tight27_reference_partitions()
        assert validate_partition(g, q_opt).ok
        assert q_opt.path_count == 9

    def test_reports_all_violations(self):
        g = path_graph(4)
        p = PathPartition(k=2, paths=((0, 1, 2), (0,)))
        report = validate_partition(g, p)
        assert len(report.violations) >= 3  # too long, duplicate, uncovered

    def test_order_bound(self):
        g = path_graph(4)
        p = PathPartition(k=3, paths=((0, 1, 2, 3),))
        assert not validate_partition(g, p).ok


class TestPartitionIdentities:
    @pytest.mark.parametrize(
        "paths",
        [((0, 1, 2), (3,), (4, 5)), ((0,), (1,), (2,), (3,), (4,), (5,))],
    )
    def test_order_weighted_count_equals_n(self, paths):
        p = PathPartition(k=3, paths=paths)
        n = sum(len(q) for q in paths)
        assert sum(i * c for i, c in p.order_counts().items()) == n
        assert p.edge_count + p.path_count == n

    def test_singletons_of(self):
        assert singletons_of(PathPartition(k=3, paths=((0, 1, 2),))) == []
        assert singletons_of(PathPartition(k=3, paths=((0,), (1,), (2,)))) == [0, 1, 2]
        assert singletons_of(PathPartition(k=3, paths=((0, 1), (2,)))) == [2]


class TestCoverComponents:
    def test_two_cycle(self):
        g = DiGraph.from_edges(2, [(0, 1), (1, 0)])
        c = PathCycleCover(n=2, edges=frozenset([(0, 1), (1, 0)]))
        comps = cover_components(g, c)
        assert [(x.kind, x.vertices) for x in comps] == [("cycle", (0, 1))]
        assert comps[0].is_two_cycle

    def test_path_and_isolated_vertex(self):
        g = DiGraph.from_edges(4, [(0, 1), (1, 2)])
        c = PathCycleCover(n=4, edges=frozenset([(0, 1), (1, 2)]))
        comps = cover_components(g, c)
        assert [(x.kind, x.vertices) for x in comps] == [
            ("path", (0, 1, 2)),
            ("path", (3,)),
        ]

    def test_three_cycle(self):
        g = DiGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
        c = PathCycleCover(n=3, edges=frozenset([(0, 1), (1, 2), (2, 0)]))
        comps = cover_components(g, c)
        assert [(x.kind, x.vertices) for x in comps] == [("cycle", (0, 1, 2))]

    def test_rejects_degree_violation(self):
        with pytest.raises(GraphError):
            PathCycleCover(n=3, edges=frozenset([(0, 1), (0, 2)]))

    def test_rejects_foreign_edges(self):
        g = DiGraph.from_edges(3, [(0, 1)])
        c = PathCycleCover(n=3, edges=frozenset([(1, 2)]))
        with pytest.raises(GraphError):
            cover_components(g, c)

    def test_components_reserialize_to_input(self):
        edges = frozenset([(0, 1), (1, 0), (2, 3), (4, 5), (5, 6), (6, 4)])
        g = DiGraph.from_edges(7, edges)
        c = PathCycleCover(n=7, edges=edges)
        regained = {e for comp in cover_components(g, c) for e in comp.edges()}
        assert regained == set(edges)


class TestPartitionFromEdges:
    def test_rejects_cycles(self):
        g = DiGraph.from_edges(2, [(0, 1), (1, 0)])
        with pytest.raises(GraphError):
            partition_from_edges(g, 3, [(0, 1), (1, 0)])

    def test_uncovered_vertices_become_singletons(self):
        g = DiGraph.from_edges(4, [(0, 1)])
        p = partition_from_edges(g, 3, [(0, 1)])
        assert p.paths == ((0, 1), (2,), (3,))
