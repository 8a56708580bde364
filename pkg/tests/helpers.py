"""Shared helpers for the test suite: seeded instance streams."""

from __future__ import annotations

from kpathpart import DiGraph, GenSpec, generate
from kpathpart.cover import max_path_cycle_cover
from kpathpart.cycle_elim import build_saturation_instance, improve_cover
from kpathpart.saturation import SaturationInstance


def random_digraph(n: int, edge_prob: float, seed: int) -> DiGraph:
    return generate(GenSpec(family="random", n=n, edge_prob=edge_prob, seed=seed))


def bidirected_digraph(n: int, edge_prob: float, seed: int) -> DiGraph:
    return generate(GenSpec(family="bidirected_random", n=n, edge_prob=edge_prob, seed=seed))


def saturation_instance_stream(count: int, *, max_e1: int, require_two_cycles: bool = True):
    """Deterministic stream of saturation instances built by the standard
    pipeline (maximum cover, improvement, candidate-edge extraction) over
    mixed random graphs."""
    produced = 0
    seed = 0
    while produced < count:
        for n in (4, 5, 6, 7, 8, 9):
            for p in (0.15, 0.25, 0.35):
                if produced >= count:
                    return
                g = bidirected_digraph(n, p, seed) if seed % 2 else _mixed(n, p, seed)
                cover = improve_cover(g, max_path_cycle_cover(g))
                inst = build_saturation_instance(g, cover)
                if len(inst.e1) > max_e1:
                    continue
                if require_two_cycles and inst.r == 0:
                    continue
                yield inst
                produced += 1
        seed += 1


def _mixed(n: int, p: float, seed: int) -> DiGraph:
    """Union of a bidirected and a one-way random layer, distinct seeds."""
    a = bidirected_digraph(n, p, seed)
    b = random_digraph(n, p, seed + 1_000_000)
    return DiGraph.from_edges(n, a.edges | b.edges)


def instance_for_saturation(g: DiGraph) -> SaturationInstance:
    cover = improve_cover(g, max_path_cycle_cover(g))
    return build_saturation_instance(g, cover)
