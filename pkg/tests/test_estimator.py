import numpy as np
import pytest
from sklearn.base import clone

from kpathpart import DiGraph, GraphError, KPathPartitioner, as_digraph
from kpathpart.generators import tight27


def adjacency_path(n):
    a = np.zeros((n, n), dtype=int)
    for i in range(n - 1):
        a[i, i + 1] = 1
    return a


class TestAsDigraph:
    def test_dense_adjacency(self):
        g = as_digraph(adjacency_path(4))
        assert g.edges == frozenset([(0, 1), (1, 2), (2, 3)])

    def test_ignores_diagonal(self):
        a = np.eye(3, dtype=int)
        assert as_digraph(a).m == 0

    def test_edge_list_pair(self):
        g = as_digraph((3, [(0, 1), (2, 0)]))
        assert g.n == 3 and g.m == 2

    def test_digraph_passthrough(self):
        g = DiGraph.from_edges(2, [(0, 1)])
        assert as_digraph(g) is g

    def test_sparse_duck_type(self):
        class FakeSparse:
            def toarray(self):
                return adjacency_path(3)

        assert as_digraph(FakeSparse()).m == 2

    def test_rejects_non_square(self):
        with pytest.raises(GraphError):
            as_digraph(np.zeros((2, 3)))


class TestEstimator:
    def test_fit_sets_attributes(self):
        est = KPathPartitioner(k=3).fit(adjacency_path(7))
        assert est.n_paths_ == 3
        assert est.n_singletons_ == 0
        assert est.labels_.shape == (7,)
        assert len(est.paths()) == 3

    def test_labels_match_partition(self):
        est = KPathPartitioner(k=3).fit(adjacency_path(6))
        for idx, path in enumerate(est.partition_.paths):
            for v in path:
                assert est.labels_[v] == idx

    def test_fit_predict(self):
        labels = KPathPartitioner(k=3).fit_predict(adjacency_path(3))
        assert set(labels) == {0}

    def test_get_set_params_roundtrip(self):
        est = KPathPartitioner(k=5, algorithm="singleton")
        assert est.get_params() == {"k": 5, "algorithm": "singleton"}
        est.set_params(k=7, algorithm="cycle_elim")
        assert est.get_params() == {"k": 7, "algorithm": "cycle_elim"}

    def test_clone(self):
        est = KPathPartitioner(k=7, algorithm="cycle_elim")
        assert clone(est).get_params() == est.get_params()

    @pytest.mark.parametrize(
        "k,expected",
        [(3, "two_path"), (4, "singleton"), (7, "cycle_elim"), (9, "cycle_elim")],
    )
    def test_auto_resolution(self, k, expected):
        assert KPathPartitioner(k=k)._resolve_algorithm() == expected

    def test_cycle_elim_on_tight_instance(self):
        est = KPathPartitioner(k=7, algorithm="cycle_elim").fit(tight27())
        assert est.n_paths_ <= 9  # 27 vertices, k = 7 allows 4+ per path

    def test_two_path_requires_k3(self):
        with pytest.raises(GraphError):
            KPathPartitioner(k=4, algorithm="two_path").fit(adjacency_path(4))

    def test_unfitted_paths_raises(self):
        with pytest.raises(GraphError):
            KPathPartitioner().paths()
