import pytest
from helpers import instance_for_saturation, saturation_instance_stream

from kpathpart import (
    DiGraph,
    GraphError,
    PathCycleCover,
    exact_max_cover_weight,
    max_weight_saturating_cover,
    prune_to_minimal,
    weight_of,
)
from kpathpart.graph import Component
from kpathpart.saturation import (
    SaturationInstance,
    build_gadget,
    cover_to_factor,
    factor_is_valid,
    factor_to_cover,
    factor_weight,
    gadget_to_dot,
    solve_max_weight_factor,
)


def two_cycle_pair_instance():
    """Two 2-cycles {0,1}, {2,3} plus the candidate edge (1,2)."""
    g = DiGraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)])
    return instance_for_saturation(g)


class TestSaturationInstance:
    def test_candidate_edges_extracted(self):
        inst = two_cycle_pair_instance()
        assert inst.e1 == frozenset([(1, 2)])
        assert inst.r == 2

    def test_rejects_cover_edge_in_candidates(self):
        g = DiGraph.from_edges(2, [(0, 1), (1, 0)])
        cover = PathCycleCover(n=2, edges=frozenset([(0, 1), (1, 0)]))
        comp = Component(kind="cycle", vertices=(0, 1))
        with pytest.raises(GraphError):
            SaturationInstance(
                base=g, cover=cover, e1=frozenset([(0, 1)]), two_cycles=(comp,)
            )

    def test_rejects_wrong_two_cycle_list(self):
        g = DiGraph.from_edges(2, [(0, 1), (1, 0)])
        cover = PathCycleCover(n=2, edges=frozenset([(0, 1), (1, 0)]))
        with pytest.raises(GraphError):
            SaturationInstance(base=g, cover=cover, e1=frozenset(), two_cycles=())


class TestWeightOf:
    def test_empty_set_weighs_nothing(self):
        inst = two_cycle_pair_instance()
        assert weight_of(frozenset(), inst) == 0

    def test_one_edge_saturating_both(self):
        inst = two_cycle_pair_instance()
        assert weight_of(frozenset([(1, 2)]), inst) == 2

    def test_edge_from_path_component(self):
        # hand-built: 2-cycles {0,1}, {2,3}; lone vertex 4 with edge (4,0)
        g = DiGraph.from_edges(5, [(0, 1), (1, 0), (2, 3), (3, 2), (4, 0)])
        cover = PathCycleCover(n=5, edges=frozenset([(0, 1), (1, 0), (2, 3), (3, 2)]))
        inst = SaturationInstance(
            base=g,
            cover=cover,
            e1=frozenset([(4, 0)]),
            two_cycles=(
                Component(kind="cycle", vertices=(0, 1)),
                Component(kind="cycle", vertices=(2, 3)),
            ),
        )
        assert weight_of(frozenset([(4, 0)]), inst) == 1

    def test_rejects_foreign_edge(self):
        inst = two_cycle_pair_instance()
        with pytest.raises(GraphError):
            weight_of(frozenset([(0, 3)]), inst)


class TestGadget:
    def test_no_two_cycles_means_no_hub_nodes(self):
        g = DiGraph.from_edges(4, [(0, 1), (1, 2), (3, 0)])
        inst = instance_for_saturation(g)
        assert inst.r == 0
        gadget = build_gadget(inst)
        assert len(gadget.nodes) == 2 * g.n
        assert gadget.f2 == () and gadget.f3 == ()

    def test_single_two_cycle_hub_edges(self):
        g = DiGraph.from_edges(3, [(0, 1), (1, 0)])
        inst = instance_for_saturation(g)
        assert inst.r == 1 and inst.e1 == frozenset()
        gadget = build_gadget(inst)
        assert sorted(gadget.f2) == [
            ("0+", "x_1"),
            ("0-", "x_1"),
            ("1+", "x_1"),
            ("1-", "x_1"),
        ]
        assert gadget.f3 == (("x_1", "y_1"),)

    def test_node_and_edge_counts(self):
        for inst in saturation_instance_stream(15, max_e1=12):
            gadget = build_gadget(inst)
            assert len(gadget.nodes) == 2 * inst.base.n + 2 * inst.r
            total = len(gadget.f1) + len(gadget.f2) + len(gadget.f3)
            assert total == len(inst.e1) + 5 * inst.r

    def test_degree_bounds(self):
        inst = two_cycle_pair_instance()
        gadget = build_gadget(inst)
        for v in range(4):  # all four vertices sit on 2-cycles
            assert gadget.low[f"{v}+"] == gadget.high[f"{v}+"] == 1
            assert gadget.low[f"{v}-"] == gadget.high[f"{v}-"] == 1
        assert gadget.low["x_1"] == 0 and gadget.high["x_1"] == 4
        assert gadget.low["y_1"] == 0 and gadget.high["y_1"] == 1

    def test_dot_dump_names(self):
        dot = gadget_to_dot(build_gadget(two_cycle_pair_instance()))
        assert '"0+"' in dot and '"x_1" -- "y_1"' in dot


class TestSolvers:
    def test_no_candidates_no_weight(self):
        g = DiGraph.from_edges(3, [(0, 1), (1, 0)])
        inst = instance_for_saturation(g)
        assert max_weight_saturating_cover(inst) == frozenset()

    def test_bridge_edge_saturates_both(self):
        inst = two_cycle_pair_instance()
        m = max_weight_saturating_cover(inst)
        assert m == frozenset([(1, 2)])
        assert weight_of(m, inst) == 2 == exact_max_cover_weight(inst)

    def test_engines_and_oracle_agree(self):
        for inst in saturation_instance_stream(60, max_e1=10):
            want = exact_max_cover_weight(inst)
            m_bnb = max_weight_saturating_cover(inst, method="branch_and_bound")
            assert weight_of(m_bnb, inst) == want
            gadget = build_gadget(inst)
            factor = solve_max_weight_factor(gadget)
            m_gadget = factor_to_cover(factor, gadget)
            assert weight_of(m_gadget, inst) == factor_weight(factor, gadget) == want

    def test_factor_round_trip_preserves_weight(self):
        for inst in saturation_instance_stream(40, max_e1=10):
            gadget = build_gadget(inst)
            m = max_weight_saturating_cover(inst)
            factor = cover_to_factor(m, gadget, inst)
            assert factor_is_valid(factor, gadget)
            assert factor_weight(factor, gadget) == weight_of(m, inst)
            assert factor_to_cover(factor, gadget) == m

    def test_lift_handles_multiple_edges_at_one_two_cycle(self):
        # pre-pruning, one 2-cycle may host several candidate edges
        g = DiGraph.from_edges(
            6,
            [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4), (1, 2), (3, 4), (2, 5)],
        )
        inst = instance_for_saturation(g)
        m = frozenset([(1, 2), (3, 4)])  # two edges touch 2-cycle {2,3}
        gadget = build_gadget(inst)
        factor = cover_to_factor(m, gadget, inst)
        assert factor_is_valid(factor, gadget)
        assert factor_weight(factor, gadget) == weight_of(m, inst) == 3


class TestPrune:
    def test_removes_redundant_edge_at_lone_two_cycle(self):
        # hand-built cover: 2-cycle {0,1} and path 2->3, two candidate
        # edges touching the same lone 2-cycle
        g = DiGraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (2, 0), (1, 3)])
        cover = PathCycleCover(n=4, edges=frozenset([(0, 1), (1, 0), (2, 3)]))
        inst = SaturationInstance(
            base=g,
            cover=cover,
            e1=frozenset([(2, 0), (1, 3)]),
            two_cycles=(Component(kind="cycle", vertices=(0, 1)),),
        )
        m = frozenset([(2, 0), (1, 3)])
        assert weight_of(m, inst) == 1
        pruned = prune_to_minimal(m, inst)
        assert len(pruned) == 1 and weight_of(pruned, inst) == 1

    def test_already_minimal_is_fixed_point(self):
        inst = two_cycle_pair_instance()
        m = frozenset([(1, 2)])
        assert prune_to_minimal(m, inst) == m

    def test_empty_set(self):
        inst = two_cycle_pair_instance()
        assert prune_to_minimal(frozenset(), inst) == frozenset()

    def test_idempotent_and_weight_preserving(self):
        for inst in saturation_instance_stream(40, max_e1=10):
            m = max_weight_saturating_cover(inst)
            pruned = prune_to_minimal(m, inst)
            assert weight_of(pruned, inst) == weight_of(m, inst)
            assert prune_to_minimal(pruned, inst) == pruned
            for e in sorted(pruned):
                assert weight_of(pruned - {e}, inst) < weight_of(pruned, inst)
