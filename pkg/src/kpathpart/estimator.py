"""scikit-learn style front end.

``KPathPartitioner`` behaves like a clustering estimator: ``fit`` takes a
directed graph (adjacency matrix, edge list, or :class:`DiGraph`) and
labels every vertex with the index of the path covering it, so the
algorithms compose with pipelines, ``clone`` and parameter search.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .cycle_elim import approx2
from .graph import DiGraph, GraphError, PathPartition
from .singleton_augment import approx1
from .two_path_augment import approx3


def as_digraph(X) -> DiGraph:
    """Coerce estimator input to a DiGraph.

    Accepts a DiGraph, a square (sparse or dense) adjacency matrix whose
    nonzero entries are edges, or an ``(n, edge_list)`` pair.
    """
    if isinstance(X, DiGraph):
        return X
    if (
        isinstance(X, tuple)
        and len(X) == 2
        and isinstance(X[0], int)
    ):
        n, edges = X
        return DiGraph.from_edges(n, edges)
    if hasattr(X, "toarray"):  # scipy sparse
        X = X.toarray()
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphError(
            f"adjacency matrix must be square, got shape {getattr(arr, 'shape', None)}"
        )
    n = arr.shape[0]
    mask = arr != 0
    np.fill_diagonal(mask, False)
    us, vs = np.nonzero(mask)
    return DiGraph.from_edges(n, [(int(u), int(v)) for u, v in zip(us, vs)])


class KPathPartitioner(ClusterMixin, BaseEstimator):
    """Cover a directed graph with at most-k-vertex paths, few of them.

    Parameters
    ----------
    k : int, default=3
        Maximum path order.
    algorithm : {"auto", "singleton", "cycle_elim", "two_path"}
        "singleton" is the k/2-approximation for any k >= 2,
        "cycle_elim" the (k+2)/3-approximation for k >= 7, and
        "two_path" the 13/9-approximation for k = 3.  "auto" picks the
        best guarantee available for k.

    Attributes
    ----------
    partition_ : PathPartition
    labels_ : ndarray of shape (n,), path index per vertex
    n_paths_ : int
    n_singletons_ : int
    """

    def __init__(self, k: int = 3, algorithm: str = "auto"):
        self.k = k
        self.algorithm = algorithm

    def _resolve_algorithm(self) -> str:
        if self.algorithm != "auto":
            return self.algorithm
        if self.k == 3:
            return "two_path"
        if self.k >= 7:
            return "cycle_elim"
        return "singleton"

    def fit(self, X, y=None):
        g = as_digraph(X)
        algo = self._resolve_algorithm()
        if algo == "singleton":
            partition = approx1(g, self.k)
        elif algo == "cycle_elim":
            partition = approx2(g, self.k)
        elif algo == "two_path":
            if self.k != 3:
                raise GraphError("two_path requires k=3")
            partition = approx3(g)
        else:
            raise GraphError(f"unknown algorithm {self.algorithm!r}")
        self.n_features_in_ = g.n
        self.partition_ = partition
        labels = np.empty(g.n, dtype=np.int64)
        for idx, path in enumerate(partition.paths):
            for v in path:
                labels[v] = idx
        self.labels_ = labels
        self.n_paths_ = partition.path_count
        self.n_singletons_ = partition.num_singletons
        return self

    def paths(self) -> list[list[int]]:
        """The fitted paths as plain lists."""
        self._check_fitted()
        return [list(p) for p in self.partition_.paths]

    def _check_fitted(self) -> None:
        if not hasattr(self, "partition_"):
            raise GraphError("estimator is not fitted yet; call fit first")


__all__ = ["KPathPartitioner", "as_digraph", "PathPartition"]
