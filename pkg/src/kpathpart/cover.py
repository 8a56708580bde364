"""Maximum (unweighted) path-cycle cover of a directed graph.

A 1-matching in a digraph is exactly a matching in the bipartite graph
obtained by splitting every vertex into an out-copy and an in-copy, so the
cover is computed with augmenting paths on that split graph.  All scans
run in ascending vertex order, which makes the returned cover a
deterministic function of the input.
"""

from __future__ import annotations

from .graph import DiGraph, PathCycleCover


def max_path_cycle_cover(g: DiGraph) -> PathCycleCover:
    """A path-cycle cover of maximum edge count."""
    match_out: list[int | None] = [None] * g.n  # out-copy u -> chosen head v
    match_in: list[int | None] = [None] * g.n  # in-copy v -> chosen tail u

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in g.out_adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_in[v] is None or try_augment(match_in[v], seen):
                match_out[u] = v
                match_in[v] = u
                return True
        return False

    for u in range(g.n):
        if g.out_adj[u]:
            try_augment(u, [False] * g.n)

    edges = frozenset(
        (u, v) for u, v in enumerate(match_out) if v is not None
    )
    return PathCycleCover(n=g.n, edges=edges)
