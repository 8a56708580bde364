"""The (k+2)/3-approximation for k >= 7: cover improvement followed by
2-cycle elimination.

Pipeline: take a maximum path-cycle cover, open cycles that can absorb
degree-free vertices, then pick a minimal set M of extra edges saturating
as many 2-cycles as possible.  Contracting cover components turns
C union M into a forest of stars whose satellites are 2-cycles; each star
(and each leftover component) is transformed into paths that keep at least
two thirds of its cover edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cover import max_path_cycle_cover
from .graph import (
    Component,
    DiGraph,
    GraphError,
    PathCycleCover,
    PathPartition,
    validate_partition,
)
from .saturation import (
    SaturationInstance,
    max_weight_saturating_cover,
    prune_to_minimal,
)


class StarStructureError(AssertionError):
    """The contracted graph is not a star forest; an upstream invariant
    was violated."""


def improve_cover(g: DiGraph, cover: PathCycleCover) -> PathCycleCover:
    """Open cycles of the cover: while some non-cover edge (u,v) has
    d+(u) = 0 with v on a cycle (or d-(v) = 0 with u on a cycle), swap it
    for the cycle edge entering v (leaving u).  Size is preserved and the
    number of cycle components never increases."""
    edges = set(cover.edges)
    while True:
        succ = {a: b for a, b in edges}
        pred = {b: a for a, b in edges}
        on_cycle: set[int] = set()
        for comp in PathCycleCover(n=g.n, edges=frozenset(edges)).components:
            if comp.kind == "cycle":
                on_cycle.update(comp.vertices)
        swapped = False
        for u, v in sorted(g.edges - edges):
            if u not in succ and v in on_cycle:
                edges.remove((pred[v], v))
                edges.add((u, v))
                swapped = True
                break
            if v not in pred and u in on_cycle:
                edges.remove((u, succ[u]))
                edges.add((u, v))
                swapped = True
                break
        if not swapped:
            break
    result = PathCycleCover(n=g.n, edges=frozenset(edges))
    assert result.size == cover.size, "cover improvement changed the size"
    return result


def build_saturation_instance(g: DiGraph, cover: PathCycleCover) -> SaturationInstance:
    """Candidate edges E1: non-cover edges joining two different cover
    components of which at least one is a 2-cycle."""
    comps = cover.components
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(comps):
        for v in comp.vertices:
            comp_of[v] = idx
    two_cycle_ids = {idx for idx, c in enumerate(comps) if c.is_two_cycle}
    e1 = frozenset(
        (u, v)
        for (u, v) in g.edges - cover.edges
        if comp_of[u] != comp_of[v]
        and (comp_of[u] in two_cycle_ids or comp_of[v] in two_cycle_ids)
    )
    return SaturationInstance(
        base=g,
        cover=cover,
        e1=e1,
        two_cycles=tuple(comps[i] for i in sorted(two_cycle_ids)),
    )


@dataclass(frozen=True)
class Satellite:
    """A 2-cycle hanging off a star center by its single connecting edge."""

    comp_id: int
    anchor: int  # the satellite vertex the connecting edge touches
    other: int  # the remaining 2-cycle vertex
    attach: int  # the center vertex the connecting edge touches
    edge: tuple[int, int]
    enters_center: bool  # True when the edge runs satellite -> center

    def chain_in(self) -> list[int]:
        """Satellite vertices ordered so they can precede the center."""
        return [self.other, self.anchor]

    def chain_out(self) -> list[int]:
        """Satellite vertices ordered so they can follow the center."""
        return [self.anchor, self.other]


@dataclass(frozen=True)
class StarComponent:
    center: int  # cover component id
    satellites: tuple[Satellite, ...]

    def connecting_edges(self) -> list[tuple[int, int]]:
        return [s.edge for s in self.satellites]


@dataclass(frozen=True)
class StarForest:
    stars: tuple[StarComponent, ...]
    isolated_two_cycles: tuple[int, ...]  # component ids (the set I)
    isolated_other: tuple[int, ...]


def star_vertices(star: StarComponent, cover: PathCycleCover) -> set[int]:
    comps = cover.components
    u = set(comps[star.center].vertices)
    for s in star.satellites:
        u.update(comps[s.comp_id].vertices)
    return u


def star_cover_edge_count(star: StarComponent, cover: PathCycleCover) -> int:
    comps = cover.components
    return comps[star.center].edge_count + 2 * len(star.satellites)


def build_star_forest(
    cover: PathCycleCover, m: frozenset[tuple[int, int]]
) -> StarForest:
    """Contract cover components and classify the result.

    Every connected component of the contracted graph must be an isolated
    vertex or a star whose satellites are 2-cycles; anything else is a
    hard failure."""
    comps = cover.components
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(comps):
        for v in comp.vertices:
            comp_of[v] = idx
    two_cycle_ids = {idx for idx, c in enumerate(comps) if c.is_two_cycle}

    link: dict[tuple[int, int], list[tuple[int, int]]] = {}
    adj: dict[int, set[int]] = {i: set() for i in range(len(comps))}
    for u, v in sorted(m):
        a, b = comp_of[u], comp_of[v]
        if a == b:
            raise StarStructureError(f"M edge ({u},{v}) stays inside one component")
        key = (min(a, b), max(a, b))
        link.setdefault(key, []).append((u, v))
        adj[a].add(b)
        adj[b].add(a)
    for key, es in link.items():
        if len(es) > 1:
            raise StarStructureError(
                f"components {key} joined by {len(es)} edges after pruning"
            )

    seen: set[int] = set()
    stars: list[StarComponent] = []
    iso_two: list[int] = []
    iso_other: list[int] = []
    for root in range(len(comps)):
        if root in seen:
            continue
        group = [root]
        seen.add(root)
        i = 0
        while i < len(group):
            for nb in sorted(adj[group[i]]):
                if nb not in seen:
                    seen.add(nb)
                    group.append(nb)
            i += 1
        if len(group) == 1:
            (iso_two if root in two_cycle_ids else iso_other).append(root)
            continue
        if len(group) == 2:
            a, b = sorted(group)
            if b in two_cycle_ids:
                center, sat = a, b
            elif a in two_cycle_ids:
                center, sat = b, a
            else:
                raise StarStructureError(f"edge {a}-{b} joins two non-2-cycles")
            sat_ids = [sat]
        else:
            centers = [c for c in group if len(adj[c]) >= 2]
            if len(centers) != 1:
                raise StarStructureError(f"component {sorted(group)} is not a star")
            center = centers[0]
            sat_ids = sorted(c for c in group if c != center)
            for c in sat_ids:
                if adj[c] != {center}:
                    raise StarStructureError(f"component {sorted(group)} is not a star")
                if c not in two_cycle_ids:
                    raise StarStructureError(f"satellite {c} is not a 2-cycle")

        center_vs = set(comps[center].vertices)
        sats: list[Satellite] = []
        for c in sat_ids:
            (edge,) = link[(min(center, c), max(center, c))]
            u, v = edge
            if v in center_vs:
                sats.append(
                    Satellite(
                        comp_id=c,
                        anchor=u,
                        other=_other_vertex(comps[c], u),
                        attach=v,
                        edge=edge,
                        enters_center=True,
                    )
                )
            else:
                sats.append(
                    Satellite(
                        comp_id=c,
                        anchor=v,
                        other=_other_vertex(comps[c], v),
                        attach=u,
                        edge=edge,
                        enters_center=False,
                    )
                )
        sats_ordered = _order_satellites(comps[center], sats)
        _check_attachments(sats_ordered)
        stars.append(StarComponent(center=center, satellites=tuple(sats_ordered)))

    return StarForest(
        stars=tuple(stars),
        isolated_two_cycles=tuple(iso_two),
        isolated_other=tuple(iso_other),
    )


def _other_vertex(comp: Component, v: int) -> int:
    a, b = comp.vertices
    return b if v == a else a


def _order_satellites(center: Component, sats: list[Satellite]) -> list[Satellite]:
    pos = {v: i for i, v in enumerate(center.vertices)}
    return sorted(sats, key=lambda s: (pos[s.attach], not s.enters_center))


def _check_attachments(sats: list[Satellite]) -> None:
    by_attach: dict[int, list[Satellite]] = {}
    for s in sats:
        by_attach.setdefault(s.attach, []).append(s)
    for v, group in by_attach.items():
        if len(group) > 2:
            raise StarStructureError(f"more than two satellites attach at vertex {v}")
        if len(group) == 2 and group[0].enters_center == group[1].enters_center:
            raise StarStructureError(
                f"two satellites attach at vertex {v} with the same orientation"
            )


# --------------------------------------------------------------------------
# component transforms
# --------------------------------------------------------------------------


def _split_every_kth(seq: tuple[int, ...], k: int) -> list[tuple[int, ...]]:
    return [tuple(seq[i : i + k]) for i in range(0, len(seq), k)]


def partition_isolated_component(
    g: DiGraph, comp: Component, k: int
) -> list[tuple[int, ...]]:
    """Turn an isolated cover component into paths of order <= k keeping a
    2-path for a 2-cycle and at least 2/3 of the edges otherwise."""
    if comp.is_two_cycle:
        return [comp.vertices]
    # for a cycle the canonical rotation already drops the wrap-around edge,
    # which is exactly "delete one edge, then every k-th from one end"
    pieces = _split_every_kth(comp.vertices, k)
    kept = sum(len(p) - 1 for p in pieces)
    assert 3 * kept >= 2 * comp.edge_count, (comp, k)
    return pieces


def _path_center_fragments(
    path_vs: tuple[int, ...], sats: list[Satellite], k: int
) -> list[tuple[int, ...]]:
    """Case-driven transform of a path component plus attached 2-cycles.

    Satellites must be ordered by attachment position (ties: entering
    first).  Returns vertex paths covering the path and all satellites."""
    if not sats:
        return _split_every_kth(path_vs, k) if path_vs else []
    assert path_vs, "satellites without a center"
    pos = {v: i for i, v in enumerate(path_vs)}

    if len(path_vs) == 1:
        chain: list[int] = []
        entering = [s for s in sats if s.enters_center]
        leaving = [s for s in sats if not s.enters_center]
        assert len(entering) <= 1 and len(leaving) <= 1
        if entering:
            chain.extend(entering[0].chain_in())
        chain.append(path_vs[0])
        if leaving:
            chain.extend(leaving[0].chain_out())
        assert len(chain) <= 5 <= k
        return [tuple(chain)]

    def recurse(lo: int, hi: int) -> list[tuple[int, ...]]:
        """Transform the sub-path path_vs[lo:hi] with its own satellites."""
        segment = path_vs[lo:hi]
        inner = [s for s in sats if s.attach in segment]
        return _path_center_fragments(segment, inner, k)

    # Case 1: two satellites at the same center vertex
    for i in range(len(sats) - 1):
        if sats[i].attach == sats[i + 1].attach:
            s_in, s_out = sats[i], sats[i + 1]
            assert s_in.enters_center and not s_out.enters_center
            v = s_in.attach
            q = tuple(s_in.chain_in() + [v] + s_out.chain_out())
            j = pos[v]
            return [q] + recurse(0, j) + recurse(j + 1, len(path_vs))

    attached = {s.attach: s for s in sats}

    # Case 2: a free-free-attached (or attached-free-free) triple
    for j in range(len(path_vs) - 2):
        x, y, z = path_vs[j], path_vs[j + 1], path_vs[j + 2]
        if x not in attached and y not in attached and z in attached:
            s = attached[z]
            if not s.enters_center:
                q = tuple([x, y, z] + s.chain_out())
                return [q] + recurse(0, j) + recurse(j + 3, len(path_vs))
        if x in attached and y not in attached and z not in attached:
            s = attached[x]
            if s.enters_center:
                q = tuple(s.chain_in() + [x, y, z])
                return [q] + recurse(0, j) + recurse(j + 3, len(path_vs))

    # Case 3: consecutive satellites facing each other
    for i in range(len(sats) - 1):
        si, sj = sats[i], sats[i + 1]
        if si.enters_center and not sj.enters_center:
            pi, pj = pos[si.attach], pos[sj.attach]
            assert 1 <= pj - pi <= 2, "facing satellites with a long gap"
            mid = list(path_vs[pi : pj + 1])
            q = tuple(si.chain_in() + mid + sj.chain_out())
            assert len(q) in (6, 7) and len(q) <= k
            return [q] + recurse(0, pi) + recurse(pj + 1, len(path_vs))

    # Case 4: a satellite leaving the first attachment or entering the last
    first, last = sats[0], sats[-1]
    if not first.enters_center:
        p1 = pos[first.attach]
        assert p1 <= 1, "leaving satellite too far from the path start"
        q = tuple(list(path_vs[: p1 + 1]) + first.chain_out())
        assert len(q) in (3, 4)
        return [q] + recurse(p1 + 1, len(path_vs))
    if last.enters_center:
        ph = pos[last.attach]
        assert len(path_vs) - 1 - ph <= 1, "entering satellite too far from the end"
        q = tuple(last.chain_in() + list(path_vs[ph:]))
        assert len(q) in (3, 4)
        return recurse(0, ph) + [q]

    raise StarStructureError("exhausted all star transform cases")


def _cycle_center_fragments(
    cycle_vs: tuple[int, ...], sats: list[Satellite], k: int
) -> list[tuple[int, ...]]:
    """Cycle-center counterpart: cases 1-3 cut the cycle open and fall back
    to the path transform; otherwise all connecting edges share one
    orientation and the cycle shatters into 3- and 4-paths."""
    assert sats, "an isolated cycle is not a star"
    t = len(cycle_vs)
    pos = {v: i for i, v in enumerate(cycle_vs)}

    def arc(start: int, stop: int) -> tuple[int, ...]:
        """Vertices from position start to stop inclusive, walking the
        cycle forward.  Callers handle empty segments themselves."""
        out = []
        i = start % t
        while True:
            out.append(cycle_vs[i])
            if i == stop % t:
                break
            i = (i + 1) % t
        return tuple(out)

    def recurse_path(segment: tuple[int, ...]) -> list[tuple[int, ...]]:
        inner = [s for s in sats if s.attach in segment]
        ordered = sorted(inner, key=lambda s: (segment.index(s.attach), not s.enters_center))
        return _path_center_fragments(segment, ordered, k)

    # Case 1: two satellites at one vertex
    for i in range(len(sats) - 1):
        if sats[i].attach == sats[i + 1].attach:
            s_in, s_out = sats[i], sats[i + 1]
            assert s_in.enters_center and not s_out.enters_center
            v = s_in.attach
            q = tuple(s_in.chain_in() + [v] + s_out.chain_out())
            j = pos[v]
            segment = arc(j + 1, j - 1)  # a cycle has t >= 2, never empty
            return [q] + recurse_path(segment)

    attached = {s.attach: s for s in sats}

    # Case 2: free-free-attached triples, cyclically
    if t >= 3:
        for j in range(t):
            x, y, z = cycle_vs[j], cycle_vs[(j + 1) % t], cycle_vs[(j + 2) % t]
            if x not in attached and y not in attached and z in attached:
                s = attached[z]
                if not s.enters_center:
                    q = tuple([x, y, z] + s.chain_out())
                    segment = arc(j + 3, j - 1) if t > 3 else ()
                    return [q] + (recurse_path(segment) if segment else [])
            if x in attached and y not in attached and z not in attached:
                s = attached[x]
                if s.enters_center:
                    q = tuple(s.chain_in() + [x, y, z])
                    segment = arc(j + 3, j - 1) if t > 3 else ()
                    return [q] + (recurse_path(segment) if segment else [])

    # Case 3: cyclically consecutive satellites facing each other
    h = len(sats)
    if h >= 2:
        for i in range(h):
            si = sats[i]
            sj = sats[(i + 1) % h]
            if si.enters_center and not sj.enters_center:
                pi, pj = pos[si.attach], pos[sj.attach]
                gap = (pj - pi) % t
                assert 1 <= gap <= 2, "facing satellites with a long gap"
                mid = list(arc(pi, pj))
                q = tuple(si.chain_in() + mid + sj.chain_out())
                assert len(q) in (6, 7) and len(q) <= k
                remaining = t - (gap + 1)
                segment = arc(pj + 1, pi - 1) if remaining > 0 else ()
                return [q] + (recurse_path(segment) if segment else [])

    # Case 4: uniform orientation
    orientations = {s.enters_center for s in sats}
    if len(orientations) != 1:
        raise StarStructureError("mixed orientations survived cases 1-3")
    fragments: list[tuple[int, ...]] = []
    if not sats[0].enters_center:
        # every connecting edge leaves the cycle: cut after each attachment
        for i in range(h):
            prev_pos = pos[sats[i - 1].attach]
            cur = sats[i]
            segment = arc(prev_pos + 1, pos[cur.attach])
            q = tuple(list(segment) + cur.chain_out())
            assert len(q) in (3, 4), "stray free vertices survived case 2"
            fragments.append(q)
    else:
        for i in range(h):
            cur = sats[i]
            nxt_pos = pos[sats[(i + 1) % h].attach]
            segment = arc(pos[cur.attach], nxt_pos - 1)
            q = tuple(cur.chain_in() + list(segment))
            assert len(q) in (3, 4), "stray free vertices survived case 2"
            fragments.append(q)
    return fragments


def partition_star_path_center(
    g: DiGraph, star: StarComponent, k: int, cover: PathCycleCover
) -> list[tuple[int, ...]]:
    comp = cover.components[star.center]
    assert comp.kind == "path"
    frags = _path_center_fragments(comp.vertices, list(star.satellites), k)
    _check_star_fragments(star, cover, frags, k)
    return frags


def partition_star_cycle_center(
    g: DiGraph, star: StarComponent, k: int, cover: PathCycleCover
) -> list[tuple[int, ...]]:
    comp = cover.components[star.center]
    assert comp.kind == "cycle"
    frags = _cycle_center_fragments(comp.vertices, list(star.satellites), k)
    _check_star_fragments(star, cover, frags, k)
    return frags


def _check_star_fragments(
    star: StarComponent,
    cover: PathCycleCover,
    frags: list[tuple[int, ...]],
    k: int,
) -> None:
    want = star_vertices(star, cover)
    got = [v for f in frags for v in f]
    if sorted(got) != sorted(want):
        raise StarStructureError(
            f"star transform lost vertices: {sorted(want)} -> {sorted(got)}"
        )
    kept = sum(len(f) - 1 for f in frags)
    f_count = star_cover_edge_count(star, cover)
    if 3 * kept < 2 * f_count:
        raise StarStructureError(
            f"star transform kept {kept} of {f_count} cover edges (< 2/3)"
        )
    if any(len(f) > k for f in frags):
        raise StarStructureError("star transform produced an over-long path")


# --------------------------------------------------------------------------
# full pipeline
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Approx2Report:
    """Everything the pipeline produced, for diagnostics and tests."""

    cover: PathCycleCover
    instance: SaturationInstance
    m_raw: frozenset[tuple[int, int]]
    m_pruned: frozenset[tuple[int, int]]
    forest: StarForest
    partition: PathPartition

    @property
    def num_isolated_two_cycles(self) -> int:
        return len(self.forest.isolated_two_cycles)


def approx2_report(g: DiGraph, k: int) -> Approx2Report:
    if k < 7:
        raise GraphError(
            f"the 2-cycle elimination algorithm needs k >= 7, got k={k}; "
            "use the singleton elimination algorithm instead"
        )
    cover = improve_cover(g, max_path_cycle_cover(g))
    inst = build_saturation_instance(g, cover)
    m_raw = max_weight_saturating_cover(inst)
    m = prune_to_minimal(m_raw, inst)

    # degree sanity of the union of two path-cycle covers
    out_deg: dict[int, int] = {}
    in_deg: dict[int, int] = {}
    for a, b in cover.edges | m:
        out_deg[a] = out_deg.get(a, 0) + 1
        in_deg[b] = in_deg.get(b, 0) + 1
    assert all(d <= 2 for d in out_deg.values())
    assert all(d <= 2 for d in in_deg.values())

    forest = build_star_forest(cover, m)
    comps = cover.components
    assert len(forest.isolated_two_cycles) <= inst.r

    paths: list[tuple[int, ...]] = []
    for cid in forest.isolated_two_cycles:
        paths.extend(partition_isolated_component(g, comps[cid], k))
    for cid in forest.isolated_other:
        paths.extend(partition_isolated_component(g, comps[cid], k))
    for star in forest.stars:
        if comps[star.center].kind == "path":
            paths.extend(partition_star_path_center(g, star, k, cover))
        else:
            paths.extend(partition_star_cycle_center(g, star, k, cover))

    partition = PathPartition(k=k, paths=tuple(paths))
    report = validate_partition(g, partition)
    if not report.ok:
        raise StarStructureError(f"pipeline produced an invalid partition: {report.violations}")

    # aggregate edge-retention bound over the whole cover
    iso = len(forest.isolated_two_cycles)
    assert 3 * partition.edge_count >= 2 * cover.size - iso

    return Approx2Report(
        cover=cover,
        instance=inst,
        m_raw=frozenset(m_raw),
        m_pruned=frozenset(m),
        forest=forest,
        partition=partition,
    )


def approx2(g: DiGraph, k: int) -> PathPartition:
    """(k+2)/3-approximate k-path partition for k >= 7."""
    return approx2_report(g, k).partition
