"""The 13/9-approximation for 3-path partition: 2-path reduction.

Relative to a 3-path partition, the edges of 2-paths are matched, edges
outside the partition are free, and edges of 3-paths are irrelevant.  An
augmenting walk starts and ends with matched edges, alternates matched and
free edges, and obeys six constraints that make its symmetric difference
turn three 2-paths into two 3-paths.  The search is seeded with a
partition that already has the minimum number of singletons, which the
updates preserve.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import (
    DiGraph,
    GraphError,
    PathPartition,
    partition_from_edges,
    validate_partition,
)
from .singleton_augment import approx1

Edge = tuple[int, int]


class TwoPathEdgeClass(Enum):
    MATCHED = "matched"
    FREE = "free"
    IRRELEVANT = "irrelevant"


def classify_two_path_edges(g: DiGraph, p: PathPartition) -> dict[Edge, TwoPathEdgeClass]:
    if p.k != 3:
        raise GraphError(f"2-path reduction needs a 3-path partition, got k={p.k}")
    matched = {(path[0], path[1]) for path in p.paths if len(path) == 2}
    partition_edges = p.edge_set
    classes = {}
    for e in g.edges:
        if e in matched:
            classes[e] = TwoPathEdgeClass.MATCHED
        elif e in partition_edges:
            classes[e] = TwoPathEdgeClass.IRRELEVANT
        else:
            classes[e] = TwoPathEdgeClass.FREE
    return classes


@dataclass(frozen=True)
class AugmentingWalk3:
    """Alternating walk: entries are ("M", edge) / ("F", edge), beginning
    and ending with matched edges."""

    entries: tuple[tuple[str, Edge], ...]

    @property
    def first_matched(self) -> Edge:
        return self.entries[0][1]

    @property
    def last_matched(self) -> Edge:
        return self.entries[-1][1]

    def matched_occurrences(self) -> list[Edge]:
        return [e for kind, e in self.entries if kind == "M"]

    def free_edges(self) -> list[Edge]:
        return [e for kind, e in self.entries if kind == "F"]

    def distinct_matched(self) -> set[Edge]:
        return set(self.matched_occurrences())


def _compose(e1: Edge, e2: Edge) -> bool:
    """True when the two directed edges chain into a directed 3-path."""
    p, q = e1
    r, s = e2
    return (q == r and p != s) or (s == p and r != q)


def _other(e: Edge, v: int) -> int:
    return e[1] if e[0] == v else e[0]


@dataclass
class _Visit:
    arrival_vertex: int | None
    arrival_free: Edge | None
    exit_vertex: int | None
    exit_free: Edge | None


def find_two_path_augmenting(g: DiGraph, p: PathPartition) -> AugmentingWalk3 | None:
    """Search for an augmenting walk, trying every matched start edge and
    every eligible first free edge in lexicographic order.

    The search is a depth-first exploration carrying the full walk, so
    acceptance rules that depend on earlier free-edge choices (doubled
    first/last edges) are evaluated exactly.  Any returned walk is
    re-validated by the standalone constraint checker.  The caller is
    expected to seed with a minimum-singleton partition.
    """
    if p.k != 3:
        raise GraphError(f"2-path reduction needs a 3-path partition, got k={p.k}")
    matched_at: dict[int, Edge] = {}
    matched_edges: list[Edge] = []
    for path in p.paths:
        if len(path) == 2:
            e = (path[0], path[1])
            matched_edges.append(e)
            matched_at[path[0]] = e
            matched_at[path[1]] = e
    matched_edges.sort()
    if len(matched_edges) < 3:
        return None

    partition_edges = p.edge_set
    free_at: dict[int, list[Edge]] = {}
    for e in sorted(g.edges):
        if e in partition_edges:
            continue
        free_at.setdefault(e[0], []).append(e)
        free_at.setdefault(e[1], []).append(e)

    def accepts(candidate: list[tuple[str, Edge]]) -> bool:
        """Constraint-satisfying endings must also produce a valid update;
        the six constraints alone admit rare degenerate closures."""
        return not check_augmenting_walk(g, p, AugmentingWalk3(entries=tuple(candidate)))

    def extend(
        entries: list[tuple[str, Edge]],
        visits: dict[Edge, int],
        first_visit: dict[Edge, _Visit],
        used_free: set[Edge],
        e0: Edge,
        alpha: int,
        cur_free: Edge,
        arrive: int,
    ) -> list[tuple[str, Edge]] | None:
        m = matched_at.get(arrive)
        if m is None:
            return None
        count = visits.get(m, 0)
        distinct = len(visits)

        if count == 0:
            # Case 1: a fresh matched edge either closes the walk or passes
            # it through to its other endpoint
            if distinct + 1 >= 3 and _compose(cur_free, m):
                candidate = entries + [("M", m)]
                if accepts(candidate):
                    return candidate
            exit_v = _other(m, arrive)
            visits[m] = 1
            entries.append(("M", m))
            for f in free_at.get(exit_v, ()):
                if f in used_free:
                    continue
                used_free.add(f)
                entries.append(("F", f))
                first_visit[m] = _Visit(arrive, cur_free, exit_v, f)
                res = extend(
                    entries, visits, first_visit, used_free, e0, alpha, f, _other(f, exit_v)
                )
                if res is not None:
                    return res
                entries.pop()
                used_free.discard(f)
            first_visit.pop(m, None)
            entries.pop()
            del visits[m]
            return None

        if count == 1:
            if m == e0:
                # Case 2.1: the start edge is included a second time; the
                # walk passes through, and the two free edges meeting at the
                # first free edge's endpoint must chain into a 3-path
                first_free = entries[1][1]
                beta = _other(e0, alpha)
                if arrive == alpha:
                    if not _compose(cur_free, first_free):
                        return None
                    exit_v, restrict = beta, False
                else:
                    exit_v, restrict = alpha, True
                visits[m] = 2
                entries.append(("M", m))
                for f in free_at.get(exit_v, ()):
                    if f in used_free:
                        continue
                    if restrict and not _compose(f, first_free):
                        continue
                    used_free.add(f)
                    entries.append(("F", f))
                    res = extend(
                        entries, visits, first_visit, used_free, e0, alpha, f, _other(f, exit_v)
                    )
                    if res is not None:
                        return res
                    entries.pop()
                    used_free.discard(f)
                entries.pop()
                visits[m] = 1
                return None
            # Case 2.2: a revisited non-start edge can only close the walk,
            # doubled, with the two free edges at the arrival endpoint
            # chaining into a 3-path
            if distinct < 3:
                return None
            rec = first_visit[m]
            adjacent = rec.arrival_free if arrive == rec.arrival_vertex else rec.exit_free
            if adjacent is not None and _compose(cur_free, adjacent):
                candidate = entries + [("M", m)]
                if accepts(candidate):
                    return candidate
            return None

        if count == 2 and m == e0:
            # Case 3: third inclusion of the start edge closes the walk
            if distinct < 3:
                return None
            priors = [e for kind, e in entries[:-1] if kind == "F" and arrive in e]
            if len(priors) == 1 and _compose(cur_free, priors[0]):
                candidate = entries + [("M", m)]
                if accepts(candidate):
                    return candidate
            return None
        return None

    for e0 in matched_edges:
        a, b = e0
        starts: list[tuple[Edge, int]] = []
        for f in free_at.get(b, ()):
            if f[0] == b and f[1] != a:  # e0 then f: a -> b -> c
                starts.append((f, b))
        for f in free_at.get(a, ()):
            if f[1] == a and f[0] != b:  # f then e0: c -> a -> b
                starts.append((f, a))
        starts.sort()
        for f1, alpha in starts:
            res = extend(
                [("M", e0), ("F", f1)],
                {e0: 1},
                {e0: _Visit(None, None, alpha, f1)},
                {f1},
                e0,
                alpha,
                f1,
                _other(f1, alpha),
            )
            if res is not None:
                walk = AugmentingWalk3(entries=tuple(res))
                problems = check_augmenting_walk(g, p, walk)
                assert not problems, f"search produced an invalid walk: {problems}"
                return walk
    return None


def check_augmenting_walk(g: DiGraph, p: PathPartition, walk: AugmentingWalk3) -> list[str]:
    """Standalone checker for the six augmenting-walk constraints plus the
    alternation/traversal structure.  An empty result means valid."""
    problems: list[str] = []
    entries = walk.entries

    def chains(e1: Edge, e2: Edge) -> bool:
        # the two directed edges form x -> y -> z with x != z
        if e1[1] == e2[0]:
            return e1[0] != e2[1]
        if e2[1] == e1[0]:
            return e2[0] != e1[1]
        return False

    if len(entries) < 3 or len(entries) % 2 == 0:
        return ["walk must alternate M/F with matched edges at both ends"]
    for i, (kind, _e) in enumerate(entries):
        if kind != ("M" if i % 2 == 0 else "F"):
            return [f"entry {i} breaks the M/F alternation"]

    matched_set = {(path[0], path[1]) for path in p.paths if len(path) == 2}
    matched_of: dict[int, Edge] = {}
    for e in matched_set:
        matched_of[e[0]] = e
        matched_of[e[1]] = e
    partition_edges = p.edge_set

    for kind, e in entries:
        if e not in g.edges:
            problems.append(f"{e} is not a graph edge")
        elif kind == "M" and e not in matched_set:
            problems.append(f"{e} is not a matched (2-path) edge")
        elif kind == "F" and e in partition_edges:
            problems.append(f"{e} is not a free edge")
    if problems:
        return problems

    frees = walk.free_edges()
    if len(set(frees)) != len(frees):
        problems.append("a free edge repeats")

    occurrences = walk.matched_occurrences()
    counts: dict[Edge, int] = {}
    for e in occurrences:
        counts[e] = counts.get(e, 0) + 1
    first, last = walk.first_matched, walk.last_matched
    if len(counts) < 3:
        problems.append("fewer than three distinct matched edges")
    for e, c in counts.items():
        if e == first == last:
            if c != 3:
                problems.append("identical first/last edge must appear exactly 3 times")
        elif e in (first, last):
            if c > 2:
                problems.append(f"matched edge {e} appears {c} times")
        elif c != 1:
            problems.append(f"interior matched edge {e} appears {c} times")
    if problems:
        return problems

    # replay the traversal: the first free edge hangs off the start edge,
    # every later free edge leaves the far endpoint of the matched edge the
    # walk just reached
    if not chains(entries[0][1], entries[1][1]):
        return ["first matched and first free edge do not form a 3-path"]
    e0 = entries[0][1]
    f1 = entries[1][1]
    alpha = e0[0] if e0[0] in f1 else e0[1]
    arrive = _other(f1, alpha)
    visit_edges: dict[Edge, list[tuple[int, Edge]]] = {}  # m -> [(vertex, free)]
    visit_edges[e0] = [(alpha, f1)]
    final_arrival: int | None = None
    cur_free = f1
    for i in range(2, len(entries), 2):
        m = entries[i][1]
        if matched_of.get(arrive) != m:
            return [f"entry {i}: {m} is not the matched edge at vertex {arrive}"]
        visit_edges.setdefault(m, []).append((arrive, cur_free))
        if i + 1 == len(entries):
            final_arrival = arrive
            break
        exit_v = _other(m, arrive)
        f = entries[i + 1][1]
        if exit_v not in f:
            return [f"entry {i + 1}: free edge {f} does not leave vertex {exit_v}"]
        visit_edges.setdefault(m, []).append((exit_v, f))
        cur_free = f
        arrive = _other(f, exit_v)
    assert final_arrival is not None

    def free_edges_at(m: Edge, vertex: int, *, before_final: bool) -> list[Edge]:
        recs = visit_edges.get(m, [])
        if before_final:
            recs = recs[:-1]
        return [f for v, f in recs if v == vertex]

    closing = entries[-2][1]
    if counts[first] >= 2 and first != last:
        flank = free_edges_at(first, alpha, before_final=False)
        others = [f for f in flank if f != f1]
        if not others or not (chains(f1, others[0]) or chains(others[0], f1)):
            problems.append("doubled first edge: free edges at its endpoint do not chain")
    if first != last:
        if counts[last] == 1:
            if not chains(closing, last):
                problems.append("last matched and last free edge do not form a 3-path")
        else:
            flank = free_edges_at(last, final_arrival, before_final=True)
            adjacent = [f for f in flank if f != closing]
            if len(adjacent) != 1 or not (
                chains(closing, adjacent[0]) or chains(adjacent[0], closing)
            ):
                problems.append("doubled last edge: free edges at the endpoint do not chain")
    else:
        flank = free_edges_at(first, final_arrival, before_final=True)
        adjacent = [f for f in flank if f != closing]
        if len(adjacent) != 1 or not (
            chains(closing, adjacent[0]) or chains(adjacent[0], closing)
        ):
            problems.append("tripled edge: closing free edges do not chain")
        start_side = [f for f in free_edges_at(first, alpha, before_final=True) if f != f1]
        if len(start_side) != 1 or not (
            chains(f1, start_side[0]) or chains(start_side[0], f1)
        ):
            problems.append("tripled edge: free edges at the start endpoint do not chain")
    if problems:
        return problems

    # the constraints alone are not quite sufficient: when the doubled
    # first and last edges share an adjacent free edge, the two would-be
    # 3-paths chain into a longer path.  Require the actual update to be a
    # valid 3-path partition with the promised count changes.
    try:
        result = partition_from_edges(g, 3, _symmetric_difference(p, walk))
    except GraphError as exc:
        return [f"symmetric difference is not a partition: {exc}"]
    report = validate_partition(g, result)
    if not report.ok:
        return [f"symmetric difference is invalid: {report.violations}"]
    before, after = p.order_counts(), result.order_counts()
    if (
        after.get(1, 0) != before.get(1, 0)
        or after.get(2, 0) != before.get(2, 0) - 3
        or after.get(3, 0) != before.get(3, 0) + 2
    ):
        return [f"symmetric difference changes counts {before} -> {after}"]
    return []


def _symmetric_difference(p: PathPartition, walk: AugmentingWalk3) -> frozenset[Edge]:
    """Partition edges after applying the walk: interior matched edges out
    (doubled first/last edges count as interior), free edges in."""
    counts: dict[Edge, int] = {}
    for e in walk.matched_occurrences():
        counts[e] = counts.get(e, 0) + 1
    kept = set()
    if counts[walk.first_matched] == 1:
        kept.add(walk.first_matched)
    if counts[walk.last_matched] == 1:
        kept.add(walk.last_matched)
    removed = {e for e in counts if e not in kept}
    return frozenset((p.edge_set - removed) | set(walk.free_edges()))


def apply_two_path_augmenting(
    g: DiGraph, p: PathPartition, walk: AugmentingWalk3
) -> PathPartition:
    """Symmetric difference: add the walk's free edges, drop its interior
    matched edges (a doubled first/last edge counts as interior).  The
    result has three fewer 2-paths, two more 3-paths, and the same
    singletons."""
    problems = check_augmenting_walk(g, p, walk)
    if problems:
        raise GraphError(f"stale or invalid walk: {problems}")
    result = partition_from_edges(g, 3, _symmetric_difference(p, walk))
    report = validate_partition(g, result)
    if not report.ok:
        raise GraphError(f"stale walk: {report.violations}")
    before = p.order_counts()
    after = result.order_counts()
    if (
        after.get(1, 0) != before.get(1, 0)
        or after.get(2, 0) != before.get(2, 0) - 3
        or after.get(3, 0) != before.get(3, 0) + 2
    ):
        raise GraphError(f"update changed path counts unexpectedly: {before} -> {after}")
    return result


def approx3(g: DiGraph) -> PathPartition:
    """13/9-approximate 3-path partition."""
    partition, _ = approx3_trace(g)
    return partition


def approx3_trace(
    g: DiGraph,
) -> tuple[PathPartition, list[tuple[PathPartition, AugmentingWalk3]]]:
    """Run the algorithm and keep each (partition-before, walk) pair."""
    p = approx1(g, 3)
    history: list[tuple[PathPartition, AugmentingWalk3]] = []
    while True:
        walk = find_two_path_augmenting(g, p)
        if walk is None:
            return p, history
        history.append((p, walk))
        p = apply_two_path_augmenting(g, p, walk)
