"""Deterministic instance generators.

Random families draw from numpy's PCG64 generator seeded with the spec's
64-bit seed; ordered vertex pairs are visited in lexicographic order with
one uniform draw per pair (pairs ``u < v`` for the bidirected family), so
a GenSpec is a pure function of its fields.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DiGraph, GraphError, PathPartition

FAMILIES = (
    "random",
    "bidirected_random",
    "disjoint_two_cycles",
    "long_path",
    "long_cycle",
    "tight27",
)


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int = 0
    edge_prob: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.family == "tight27":
            if self.n not in (0, 27):
                raise GraphError("tight27 has a fixed 27 vertices")
        elif self.n < 0:
            raise GraphError(f"n must be non-negative, got {self.n}")
        if self.family == "disjoint_two_cycles" and self.n % 2 != 0:
            raise GraphError("disjoint_two_cycles needs an even vertex count")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise GraphError(f"edge_prob must be in [0,1], got {self.edge_prob}")
        if not 0 <= self.seed < 2**64:
            raise GraphError("seed must fit in 64 bits")


def generate(spec: GenSpec) -> DiGraph:
    """Build the graph described by ``spec``; identical specs yield
    byte-identical graphs."""
    n = spec.n
    if spec.family == "random":
        rng = np.random.Generator(np.random.PCG64(spec.seed))
        edges = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and rng.random() < spec.edge_prob
        ]
        return DiGraph.from_edges(n, edges)
    if spec.family == "bidirected_random":
        rng = np.random.Generator(np.random.PCG64(spec.seed))
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < spec.edge_prob:
                    edges.append((u, v))
                    edges.append((v, u))
        return DiGraph.from_edges(n, edges)
    if spec.family == "disjoint_two_cycles":
        edges = []
        for a in range(0, n, 2):
            edges.append((a, a + 1))
            edges.append((a + 1, a))
        return DiGraph.from_edges(n, edges)
    if spec.family == "long_path":
        return DiGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if spec.family == "long_cycle":
        if n < 2:
            raise GraphError("long_cycle needs at least 2 vertices")
        edges = [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)]
        return DiGraph.from_edges(n, edges)
    if spec.family == "tight27":
        return tight27()
    raise AssertionError(spec.family)


# Row/column layout of the 27-vertex tight instance: rows u, v, w of nine
# vertices each.  Row x is the directed path x0 -> x1 -> ... -> x8; the
# only cross-row edges are (u4, v4) and (v4, w4).
_U = tuple(range(0, 9))
_V = tuple(range(9, 18))
_W = tuple(range(18, 27))


def tight27() -> DiGraph:
    edges = []
    for row in (_U, _V, _W):
        edges.extend((row[i], row[i + 1]) for i in range(8))
    edges.append((_U[4], _V[4]))
    edges.append((_V[4], _W[4]))
    return DiGraph.from_edges(27, edges)


def tight27_reference_partitions() -> tuple[PathPartition, PathPartition]:
    """The locally-optimal and the optimal 3-path partitions of the tight
    instance: 12 2-paths plus the column 3-path (13 paths, no singletons),
    against nine row 3-paths."""
    alg_paths = [(_U[4], _V[4], _W[4])]
    for row in (_U, _V, _W):
        for i in (0, 2, 5, 7):
            alg_paths.append((row[i], row[i + 1]))
    q_alg = PathPartition(k=3, paths=tuple(alg_paths))

    opt_paths = []
    for row in (_U, _V, _W):
        for i in (0, 3, 6):
            opt_paths.append((row[i], row[i + 1], row[i + 2]))
    q_opt = PathPartition(k=3, paths=tuple(opt_paths))
    return q_alg, q_opt
