"""Core graph types: directed graphs, path partitions and path-cycle covers.

Vertex ids are dense integers ``0..n-1``; external vertex names are mapped
at the I/O boundary.  All types are immutable after construction, so they
can be shared freely between threads; algorithms build fresh outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property


class GraphError(ValueError):
    """Raised when a graph, partition or cover is structurally invalid."""


@dataclass(frozen=True)
class DiGraph:
    """A simple directed graph on vertices ``0..n-1``.

    No self-loops, no duplicate edges.  ``out_adj``/``in_adj`` are derived
    from ``edges`` and always sorted, which keeps every scan over
    neighbours deterministic.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    out_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        outs: list[list[int]] = [[] for _ in range(self.n)]
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop ({u},{v}) is not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
            outs[u].append(v)
            ins[v].append(u)
        object.__setattr__(self, "out_adj", tuple(tuple(sorted(a)) for a in outs))
        object.__setattr__(self, "in_adj", tuple(tuple(sorted(a)) for a in ins))

    @classmethod
    def from_edges(cls, n: int, edges) -> "DiGraph":
        edges = list(edges)
        dedup = frozenset((int(u), int(v)) for u, v in edges)
        if len(dedup) != len(edges):
            raise GraphError("duplicate edges are not allowed")
        return cls(n=n, edges=dedup)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a structural check: an ok flag plus every violation found.

    Validation never fails fast; listing all violations makes test
    diagnostics usable.
    """

    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PathPartition:
    """Vertex-disjoint directed paths of order at most ``k`` covering V.

    ``paths`` is kept in canonical form (each path as given, paths sorted by
    first vertex) so equal partitions serialize identically.
    """

    k: int
    paths: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise GraphError(f"k must be at least 1, got {self.k}")
        object.__setattr__(
            self, "paths", tuple(sorted((tuple(p) for p in self.paths), key=lambda p: p[:1]))
        )

    @classmethod
    def singletons(cls, g: DiGraph, k: int) -> "PathPartition":
        return cls(k=k, paths=tuple((v,) for v in range(g.n)))

    @property
    def path_count(self) -> int:
        return len(self.paths)

    @property
    def num_singletons(self) -> int:
        return sum(1 for p in self.paths if len(p) == 1)

    @property
    def edge_count(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def order_counts(self) -> dict[int, int]:
        """Number of i-paths per order i (only orders that occur)."""
        counts: dict[int, int] = {}
        for p in self.paths:
            counts[len(p)] = counts.get(len(p), 0) + 1
        return counts

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1)
        )

    def covered_vertices(self) -> list[int]:
        return sorted(v for p in self.paths for v in p)


def validate_partition(g: DiGraph, p: PathPartition) -> ValidationReport:
    """Check every PathPartition invariant of ``p`` against ``g``.

    Returns a report listing all violations (empty when the partition is a
    valid k-path partition of ``g``).
    """
    violations: list[str] = []
    seen: dict[int, int] = {}
    for idx, path in enumerate(p.paths):
        if len(path) == 0:
            violations.append(f"path #{idx} is empty")
            continue
        if len(path) > p.k:
            violations.append(f"path {list(path)} has order {len(path)} > k={p.k}")
        for v in path:
            if not (0 <= v < g.n):
                violations.append(f"vertex {v} out of range for n={g.n}")
            elif v in seen:
                violations.append(f"vertex {v} appears in more than one path")
            else:
                seen[v] = idx
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                violations.append(f"missing edge ({a},{b})")
    for v in range(g.n):
        if v not in seen:
            violations.append(f"vertex {v} is not covered")
    return ValidationReport(ok=not violations, violations=tuple(violations))


def singletons_of(p: PathPartition) -> list[int]:
    """Vertices that form 1-paths, in ascending order."""
    return sorted(path[0] for path in p.paths if len(path) == 1)


@dataclass(frozen=True)
class Component:
    """A connected component of a path-cycle cover.

    ``vertices`` lists the component in traversal order: for a path, from
    head to tail; for a cycle, starting at its smallest vertex.  A 2-cycle
    is simply a cycle component of length two.
    """

    kind: str  # "path" | "cycle"
    vertices: tuple[int, ...]

    @property
    def is_two_cycle(self) -> bool:
        return self.kind == "cycle" and len(self.vertices) == 2

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        es = [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]
        if self.kind == "cycle":
            es.append((vs[-1], vs[0]))
        return es

    @property
    def edge_count(self) -> int:
        if self.kind == "cycle":
            return len(self.vertices)
        return len(self.vertices) - 1


@dataclass(frozen=True)
class PathCycleCover:
    """An edge set with in-degree and out-degree at most 1 at every vertex."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        succ: dict[int, int] = {}
        pred: dict[int, int] = {}
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop ({u},{v}) in cover")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"cover edge ({u},{v}) out of range for n={self.n}")
            if u in succ:
                raise GraphError(f"vertex {u} has two outgoing cover edges")
            if v in pred:
                raise GraphError(f"vertex {v} has two incoming cover edges")
            succ[u] = v
            pred[v] = u

    @property
    def size(self) -> int:
        return len(self.edges)

    def successor_map(self) -> dict[int, int]:
        return {u: v for u, v in self.edges}

    def predecessor_map(self) -> dict[int, int]:
        return {v: u for u, v in self.edges}

    @cached_property
    def components(self) -> tuple[Component, ...]:
        succ = self.successor_map()
        pred = self.predecessor_map()
        seen: set[int] = set()
        comps: list[Component] = []
        for v in range(self.n):
            if v in seen:
                continue
            # walk back to the head, or detect a cycle through v
            start = v
            cur = v
            on_cycle = False
            while cur in pred:
                cur = pred[cur]
                if cur == start:
                    on_cycle = True
                    break
            if on_cycle:
                cyc = [start]
                nxt = succ[start]
                while nxt != start:
                    cyc.append(nxt)
                    nxt = succ[nxt]
                lo = cyc.index(min(cyc))
                cyc = cyc[lo:] + cyc[:lo]
                seen.update(cyc)
                comps.append(Component(kind="cycle", vertices=tuple(cyc)))
            else:
                head = cur
                chain = [head]
                while chain[-1] in succ:
                    chain.append(succ[chain[-1]])
                seen.update(chain)
                comps.append(Component(kind="path", vertices=tuple(chain)))
        comps.sort(key=lambda c: min(c.vertices))
        return tuple(comps)

    def two_cycles(self) -> list[Component]:
        return [c for c in self.components if c.is_two_cycle]


def cover_components(g: DiGraph, c: PathCycleCover) -> tuple[Component, ...]:
    """Decompose ``c`` into maximal path/cycle components.

    Rejects covers whose edges are not edges of ``g`` (the degree bounds are
    already enforced by the PathCycleCover constructor).
    """
    for e in c.edges:
        if e not in g.edges:
            raise GraphError(f"cover edge {e} is not an edge of the graph")
    if c.n != g.n:
        raise GraphError(f"cover has n={c.n} but graph has n={g.n}")
    return c.components


def partition_from_edges(g: DiGraph, k: int, edges) -> PathPartition:
    """Build a PathPartition from a set of partition edges.

    The edge set must induce vertex-disjoint directed paths (no cycles, no
    degree-2 endpoints); every uncovered vertex becomes a singleton.
    """
    cover = PathCycleCover(n=g.n, edges=frozenset(edges))
    paths: list[tuple[int, ...]] = []
    for comp in cover.components:
        if comp.kind == "cycle":
            raise GraphError(f"edge set contains a cycle through {comp.vertices[0]}")
        paths.append(comp.vertices)
    return PathPartition(k=k, paths=tuple(paths))
