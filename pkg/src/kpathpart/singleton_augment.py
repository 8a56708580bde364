"""The k/2-approximation: grow a partition by eliminating singletons.

Starting from all singletons, the algorithm repeatedly searches for an
alternating walk that starts at a singleton, alternates free and matched
edges, and ends at a vertex where one more edge can be absorbed without
creating a new singleton.  Applying the walk (a symmetric-difference
update) reduces the singleton count by at least one; when no such walk
exists the singleton count is minimum over all k-path partitions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .graph import DiGraph, GraphError, PathPartition, singletons_of, validate_partition


class EdgeClass(Enum):
    MATCHED = "matched"
    FREE = "free"
    IRRELEVANT = "irrelevant"


def _partition_maps(p: PathPartition) -> tuple[dict[int, int], dict[int, int]]:
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    for path in p.paths:
        for a, b in zip(path, path[1:]):
            succ[a] = b
            pred[b] = a
    return succ, pred


def classify_edges(g: DiGraph, p: PathPartition) -> dict[tuple[int, int], EdgeClass]:
    """Assign exactly one class to every graph edge, relative to ``p``.

    The two end edges of every path of order >= 2 are matched; edges
    touching a head, tail or singleton are free; everything else is
    irrelevant.  Requires at least one singleton (otherwise the partition
    is already final and the classes are never needed).
    """
    if p.num_singletons == 0:
        raise GraphError("classification is only defined when singletons remain")
    matched: set[tuple[int, int]] = set()
    endpoints: set[int] = set()
    for path in p.paths:
        if len(path) >= 2:
            matched.add((path[0], path[1]))
            matched.add((path[-2], path[-1]))
            endpoints.add(path[0])
            endpoints.add(path[-1])
        else:
            endpoints.add(path[0])
    classes: dict[tuple[int, int], EdgeClass] = {}
    for e in g.edges:
        u, v = e
        if e in matched:
            classes[e] = EdgeClass.MATCHED
        elif u in endpoints or v in endpoints:
            classes[e] = EdgeClass.FREE
        else:
            classes[e] = EdgeClass.IRRELEVANT
    return classes


@dataclass(frozen=True)
class WalkStep:
    """One free-edge traversal: the edge, the vertex it arrives at, the
    side it arrives on ("in" = the edge enters it), and the matched edge
    continuing the walk (``None`` on the final step)."""

    free: tuple[int, int]
    arrival: int
    role: str  # "in" | "out"
    matched: tuple[int, int] | None


@dataclass(frozen=True)
class AugmentingWalk:
    start: int
    steps: tuple[WalkStep, ...]

    def matched_edges(self) -> list[tuple[int, int]]:
        return [s.matched for s in self.steps if s.matched is not None]


def _chain_len_forward(succ: dict[int, int], v: int) -> int:
    length = 1
    while v in succ:
        v = succ[v]
        length += 1
    return length


def _chain_len_backward(pred: dict[int, int], v: int) -> int:
    length = 1
    while v in pred:
        v = pred[v]
        length += 1
    return length


def _arrival_action(
    succ: dict[int, int], pred: dict[int, int], k: int, w: int, role: str
) -> tuple[int, int] | None | str:
    """Decide what happens when a free edge reaches ``w`` on side ``role``:
    ``"stop"`` means the walk ends here (augmenting), otherwise the matched
    edge continuing the walk is returned, or ``None`` for a dead end."""
    if role == "in":
        q = pred.get(w)
        if q is not None:
            # w is the j-th vertex of its path, j >= 2; only j == 2 makes the
            # displaced predecessor a new singleton, so only j == 2 continues
            if q in pred:
                return "stop"
            return (q, w)
        length = _chain_len_forward(succ, w)
        if length >= 3 or length + 1 <= k:
            return "stop"  # split at the head, or merge within the k bound
        # merging a 2-path would overflow k (only for k == 2): continue
        # through the path's own matched edge instead
        nxt = succ.get(w)
        return (w, nxt) if nxt is not None else None
    q = succ.get(w)
    if q is not None:
        if q in succ:
            return "stop"
        return (w, q)
    length = _chain_len_backward(pred, w)
    if length >= 3 or length + 1 <= k:
        return "stop"
    prv = pred.get(w)
    return (prv, w) if prv is not None else None


def find_singleton_augmenting(
    g: DiGraph, p: PathPartition, s: int
) -> AugmentingWalk | None:
    """BFS over alternating walks starting at the singleton ``s``.

    Frontier states are the walk tips (the vertex a displaced path end
    would leave behind); when two walks meet at a tip the shared suffix is
    not re-explored.  Free edges out of a tip are scanned in lexicographic
    order, so the returned walk is deterministic.
    """
    if (s,) not in p.paths:
        raise GraphError(f"vertex {s} is not a singleton of the partition")
    classes = classify_edges(g, p)
    succ, pred = _partition_maps(p)

    free_at: dict[int, list[tuple[int, int]]] = {}
    for e, cls in classes.items():
        if cls is EdgeClass.FREE:
            free_at.setdefault(e[0], []).append(e)
            free_at.setdefault(e[1], []).append(e)
    for lst in free_at.values():
        lst.sort()

    parent: dict[int, tuple[int, WalkStep]] = {}
    visited = {s}
    queue: deque[int] = deque([s])

    def branch_matched(tip: int) -> set[tuple[int, int]]:
        used: set[tuple[int, int]] = set()
        while tip != s:
            prev, step = parent[tip]
            assert step.matched is not None
            used.add(step.matched)
            tip = prev
        return used

    def reconstruct(tip: int, last: WalkStep) -> AugmentingWalk:
        steps = [last]
        while tip != s:
            prev, step = parent[tip]
            steps.append(step)
            tip = prev
        return AugmentingWalk(start=s, steps=tuple(reversed(steps)))

    while queue:
        tip = queue.popleft()
        for e in free_at.get(tip, ()):
            u, v = e
            if u == tip:
                w, role = v, "in"
            else:
                w, role = u, "out"
            action = _arrival_action(succ, pred, p.k, w, role)
            if action == "stop":
                candidate = reconstruct(tip, WalkStep(e, w, role, None))
                # the static edge classes cannot see clashes between the walk
                # and its own additions (e.g. a walk bending back into its
                # start), so gate every candidate through a trial update
                try:
                    apply_singleton_augmenting(g, p, candidate)
                except GraphError:
                    continue
                return candidate
            if action is None:
                continue
            matched = action
            nxt = matched[0] if matched[1] == w else matched[1]
            if nxt in visited:
                continue
            if matched in branch_matched(tip):
                continue
            visited.add(nxt)
            parent[nxt] = (tip, WalkStep(e, w, role, matched))
            queue.append(nxt)
    return None


def apply_singleton_augmenting(
    g: DiGraph, p: PathPartition, walk: AugmentingWalk
) -> PathPartition:
    """Symmetric-difference update along ``walk``; the result is a valid
    k-path partition with strictly fewer singletons."""
    succ, pred = _partition_maps(p)
    k = p.k

    def add(a: int, b: int) -> None:
        if a in succ or b in pred:
            raise GraphError(f"stale walk: adding ({a},{b}) clashes with the partition")
        if (a, b) not in g.edges:
            raise GraphError(f"stale walk: ({a},{b}) is not a graph edge")
        succ[a] = b
        pred[b] = a

    def remove(a: int, b: int) -> None:
        if succ.get(a) != b:
            raise GraphError(f"stale walk: ({a},{b}) is not a partition edge")
        del succ[a]
        del pred[b]

    tip = walk.start
    if tip in succ or tip in pred:
        raise GraphError(f"stale walk: start {tip} is not a singleton")
    for step in walk.steps:
        a, b = step.free
        if step.role == "in":
            if a != tip:
                raise GraphError("stale walk: free edge does not leave the tip")
            w = b
        else:
            if b != tip:
                raise GraphError("stale walk: free edge does not enter the tip")
            w = a
        if step.matched is not None:
            action = _arrival_action(succ, pred, k, w, step.role)
            if action != step.matched:
                raise GraphError("stale walk: matched continuation no longer applies")
            ma, mb = step.matched
            remove(ma, mb)
            add(a, b)
            # the walk moves to the displaced endpoint of the matched edge
            tip = ma if mb == w else mb
        else:
            action = _arrival_action(succ, pred, k, w, step.role)
            if action != "stop":
                raise GraphError("stale walk: terminal arrival is no longer terminal")
            if step.role == "in":
                q = pred.get(w)
                if q is not None:
                    remove(q, w)
                elif _chain_len_forward(succ, w) >= 3:
                    remove(w, succ[w])
            else:
                q = succ.get(w)
                if q is not None:
                    remove(w, q)
                elif _chain_len_backward(pred, w) >= 3:
                    remove(pred[w], w)
            add(a, b)

    paths: list[tuple[int, ...]] = []
    placed: set[int] = set()
    for v in range(g.n):
        if v in placed or v in pred:
            continue
        chain = [v]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        placed.update(chain)
        paths.append(tuple(chain))
    if len(placed) != g.n:
        raise GraphError("update created a cycle")
    result = PathPartition(k=k, paths=tuple(paths))
    report = validate_partition(g, result)
    if not report.ok:
        raise GraphError(f"update produced an invalid partition: {report.violations}")
    if result.num_singletons >= p.num_singletons:
        raise GraphError("update did not reduce the singleton count")
    return result


def approx1(g: DiGraph, k: int) -> PathPartition:
    """k/2-approximate k-path partition with the minimum number of
    singletons (k >= 2)."""
    partition, _ = approx1_trace(g, k)
    return partition


def approx1_trace(g: DiGraph, k: int) -> tuple[PathPartition, list[PathPartition]]:
    """Like :func:`approx1` but also returns every intermediate partition
    (one per applied walk), which the test suite checks for validity."""
    if k < 2:
        raise GraphError(f"k must be at least 2, got {k}")
    p = PathPartition.singletons(g, k)
    trace = [p]
    while True:
        progressed = False
        for s in singletons_of(p):
            walk = find_singleton_augmenting(g, p, s)
            if walk is not None:
                p = apply_singleton_augmenting(g, p, walk)
                trace.append(p)
                progressed = True
                break
        if not progressed:
            return p, trace
