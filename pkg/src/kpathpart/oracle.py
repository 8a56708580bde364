"""Exact brute-force solvers used as ground truth at desk scale.

These deliberately share no search logic with the approximation
algorithms: the partition oracles run a bitmask set-partition DP over
traceable vertex subsets, and the cover oracles do exhaustive subset
search.  Calls beyond the configured budget are rejected outright, never
silently approximated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .graph import DiGraph, PathPartition


class OverBudgetError(RuntimeError):
    """Raised when an oracle call exceeds its instance-size or time budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_n_partition: int = 15
    max_m_subsets: int = 20
    time_cap: float | None = None  # seconds per call

    def check_n(self, n: int) -> None:
        if n > self.max_n_partition:
            raise OverBudgetError(
                f"n={n} exceeds oracle budget max_n_partition={self.max_n_partition}"
            )

    def check_m(self, m: int) -> None:
        if m > self.max_m_subsets:
            raise OverBudgetError(
                f"m={m} exceeds oracle budget max_m_subsets={self.max_m_subsets}"
            )

    def deadline(self) -> float | None:
        return None if self.time_cap is None else time.monotonic() + self.time_cap


DEFAULT_BUDGET = OracleBudget()
_INF = 1 << 30


def _check_deadline(deadline: float | None) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise OverBudgetError("oracle call exceeded its time cap")


def _traceable_sets(g: DiGraph, k: int, deadline: float | None) -> dict[int, list[int]]:
    """All vertex subsets of size <= k that carry a Hamiltonian path,
    grouped by their lowest vertex.

    Uses a (mask, last-vertex) reachability walk, so only masks that are
    actually traceable ever get enumerated.
    """
    states: set[tuple[int, int]] = {(1 << v, v) for v in range(g.n)}
    by_low: dict[int, set[int]] = {}
    for mask, _last in states:
        low = (mask & -mask).bit_length() - 1
        by_low.setdefault(low, set()).add(mask)
    frontier = list(states)
    while frontier:
        _check_deadline(deadline)
        nxt: list[tuple[int, int]] = []
        for mask, last in frontier:
            if mask.bit_count() >= k:
                continue
            for w in g.out_adj[last]:
                bit = 1 << w
                if mask & bit:
                    continue
                state = (mask | bit, w)
                if state in states:
                    continue
                states.add(state)
                nxt.append(state)
                m2 = mask | bit
                low = (m2 & -m2).bit_length() - 1
                by_low.setdefault(low, set()).add(m2)
        frontier = nxt
    return {v: sorted(masks) for v, masks in by_low.items()}


def _min_cover_cost(
    g: DiGraph, k: int, cost_fn, deadline: float | None
) -> tuple[dict[int, int], dict[int, list[int]]]:
    """Memoized DP: cost[mask] = min total cost of a partition of the
    vertices *outside* ``mask``, always covering the lowest missing vertex
    first.  Returns the memo table and the traceable-set index."""
    by_low = _traceable_sets(g, k, deadline)
    full = (1 << g.n) - 1
    memo: dict[int, int] = {full: 0}

    def solve(mask: int) -> int:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        _check_deadline(deadline)
        free = ~mask & full
        v = (free & -free).bit_length() - 1
        best = _INF
        for s in by_low.get(v, ()):
            if s & mask:
                continue
            c = cost_fn(s) + solve(mask | s)
            if c < best:
                best = c
        memo[mask] = best
        return best

    solve(0)
    return memo, by_low


def _lex_min_ham_path(g: DiGraph, mask: int) -> tuple[int, ...]:
    """Lexicographically smallest Hamiltonian path sequence of the vertex
    set ``mask`` (which must be traceable)."""
    vertices = [v for v in range(g.n) if mask & (1 << v)]
    target = len(vertices)

    def extend(seq: list[int], used: int) -> tuple[int, ...] | None:
        if len(seq) == target:
            return tuple(seq)
        for w in g.out_adj[seq[-1]]:
            bit = 1 << w
            if (mask & bit) and not (used & bit):
                seq.append(w)
                res = extend(seq, used | bit)
                if res is not None:
                    return res
                seq.pop()
        return None

    for start in vertices:
        res = extend([start], 1 << start)
        if res is not None:
            return res
    raise AssertionError(f"mask {mask:b} is not traceable")


def exact_kpp(g: DiGraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> PathPartition:
    """An optimal k-path partition (minimum number of paths).

    Ties between optimal partitions are broken deterministically: each
    step covers the lowest uncovered vertex with the subset whose
    lexicographically smallest Hamiltonian path compares smallest.
    """
    budget.check_n(g.n)
    deadline = budget.deadline()
    cost, by_low = _min_cover_cost(g, k, lambda s: 1, deadline)
    full = (1 << g.n) - 1
    paths: list[tuple[int, ...]] = []
    mask = 0
    while mask != full:
        _check_deadline(deadline)
        free = ~mask & full
        v = (free & -free).bit_length() - 1
        best: tuple[int, ...] | None = None
        for s in by_low.get(v, ()):
            if s & mask:
                continue
            if cost.get(mask | s, _INF) + 1 == cost[mask]:
                cand = _lex_min_ham_path(g, s)
                if best is None or cand < best:
                    best = cand
        assert best is not None, "DP reconstruction failed"
        paths.append(best)
        for w in best:
            mask |= 1 << w
    return PathPartition(k=k, paths=tuple(paths))


def exact_min_singletons(g: DiGraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Minimum number of singletons over all k-path partitions of ``g``."""
    budget.check_n(g.n)
    deadline = budget.deadline()
    cost, _ = _min_cover_cost(
        g, k, lambda s: 1 if s.bit_count() == 1 else 0, deadline
    )
    return cost[0]


def exact_max_path_cycle_cover_size(g: DiGraph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Maximum size of a degree-feasible edge subset (path-cycle cover),
    by exhaustive search over subsets of E."""
    budget.check_m(g.m)
    deadline = budget.deadline()
    edges = g.sorted_edges()
    m = len(edges)
    best = 0
    out_used = [False] * g.n
    in_used = [False] * g.n

    def rec(idx: int, size: int) -> None:
        nonlocal best
        _check_deadline(deadline)
        if size + (m - idx) <= best:
            return
        if idx == m:
            best = max(best, size)
            return
        u, v = edges[idx]
        if not out_used[u] and not in_used[v]:
            out_used[u] = True
            in_used[v] = True
            rec(idx + 1, size + 1)
            out_used[u] = False
            in_used[v] = False
        rec(idx + 1, size)

    rec(0, 0)
    return best


def exact_max_cover_weight(inst, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Maximum number of 2-cycles saturated by any path-cycle cover drawn
    from the candidate edge set, by exhaustive subset search."""
    from .saturation import weight_of  # local import to avoid a cycle

    edges = sorted(inst.e1)
    budget.check_m(len(edges))
    deadline = budget.deadline()
    n = inst.base.n
    out_used = [False] * n
    in_used = [False] * n
    best = 0
    chosen: list[tuple[int, int]] = []

    def rec(idx: int) -> None:
        nonlocal best
        _check_deadline(deadline)
        if idx == len(edges):
            w = weight_of(frozenset(chosen), inst)
            if w > best:
                best = w
            return
        u, v = edges[idx]
        if not out_used[u] and not in_used[v]:
            out_used[u] = True
            in_used[v] = True
            chosen.append((u, v))
            rec(idx + 1)
            chosen.pop()
            out_used[u] = False
            in_used[v] = False
        rec(idx + 1)

    rec(0)
    return best
