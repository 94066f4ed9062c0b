import pytest

from helpers import instance, open_map, rect, zone
from pamcpp.assignment import make_assignment, CostTables
from pamcpp.generate import generate_instance
from pamcpp.graph import kruskal_mst
from pamcpp.instance import build_hypergraph, neighbors4, zone_hypervertices
from pamcpp.planner import (
    build_zone_trees,
    completion_indices,
    fully_visited,
    plan_phase1,
    plan_robot,
    sequential_tree_traversal,
)
from pamcpp.solver import solve


def assert_walk(walk, grid):
    assert all(grid.is_free(c) for c in walk)
    for a, b in zip(walk, walk[1:]):
        assert b in neighbors4(a)


def setup(inst):
    h = build_hypergraph(inst.map)
    return h, [frozenset(zone_hypervertices(h, z)) for z in inst.zones]


class TestBuildZoneTrees:
    def test_empty(self):
        h = build_hypergraph(open_map(4, 4))
        assert build_zone_trees(h, 0, []) == []

    def test_zone_holds_start(self):
        inst = instance(open_map(4, 4), [zone(0, rect(0, 0, 4, 4))], [(0, 0)])
        h, zh = setup(inst)
        (tree,) = build_zone_trees(h, h.cell_to_hv[(0, 0)], zh)
        assert tree.vertices == zh[0]
        assert tree.total_cost == kruskal_mst(h, zh[0]).total_cost == 3.0
        assert tree.anchor == h.cell_to_hv[(0, 0)]

    def test_line_connector(self):
        # blocks 0..3 in a row; start in block 0, zone = blocks 2 and 3
        inst = instance(open_map(8, 2), [zone(0, rect(4, 0, 4, 2))], [(0, 0)])
        h, zh = setup(inst)
        (tree,) = build_zone_trees(h, h.cell_to_hv[(0, 0)], zh)
        assert len(tree.vertices) == 4 and len(tree.edges) == 3
        assert tree.total_cost == 3.0

    def test_anchor_chain(self):
        inst = instance(open_map(10, 2), [zone(0, rect(4, 0, 2, 2)), zone(1, rect(8, 0, 2, 2))], [(0, 0)])
        h, zh = setup(inst)
        t0, t1 = build_zone_trees(h, h.cell_to_hv[(0, 0)], zh)
        assert t0.anchor == h.block_to_hv[(0, 0)]
        assert t1.anchor == h.block_to_hv[(2, 0)]
        assert t1.vertices == {h.block_to_hv[(b, 0)] for b in (2, 3, 4)}

    def test_trees_are_trees(self):
        inst = generate_instance(31, 20, 20, 5, 1)
        h, zh = setup(inst)
        trees = build_zone_trees(h, h.cell_to_hv[inst.robots[0]], zh)
        for tree, hvs in zip(trees, zh):
            assert hvs <= tree.vertices
            assert len(tree.edges) == len(tree.vertices) - 1


class TestTraversal:
    def test_whole_tree_zone_closes_loop(self):
        inst = instance(open_map(4, 4), [zone(0, rect(0, 0, 4, 4))], [(0, 0)])
        h, zh = setup(inst)
        trees = build_zone_trees(h, h.cell_to_hv[(0, 0)], zh)
        walk, bridges = sequential_tree_traversal(h, inst.map, [inst.zones[0].cells], trees, (0, 0))
        assert len(walk) == 4 * 4 + 1
        assert walk[0] == walk[-1] == (0, 0)
        assert bridges == 0
        assert_walk(walk, inst.map)

    def test_early_exit_skips_connector_return(self):
        inst = instance(open_map(4, 2), [zone(0, rect(2, 0, 2, 2))], [(0, 0)])
        h, zh = setup(inst)
        trees = build_zone_trees(h, h.cell_to_hv[(0, 0)], zh)
        walk, _ = sequential_tree_traversal(h, inst.map, [inst.zones[0].cells], trees, (0, 0))
        assert walk == [(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (2, 1)]

    def test_adjacent_zones_in_order(self):
        inst = instance(open_map(4, 2), [zone(0, rect(0, 0, 2, 2)), zone(1, rect(2, 0, 2, 2))], [(0, 0)])
        h, zh = setup(inst)
        trees = build_zone_trees(h, h.cell_to_hv[(0, 0)], zh)
        cells = [z.cells for z in inst.zones]
        walk, _ = sequential_tree_traversal(h, inst.map, cells, trees, (0, 0))
        assert 8 <= len(walk) <= 10
        assert_walk(walk, inst.map)
        done = completion_indices(walk, cells)
        first_z2 = min(i for i, c in enumerate(walk) if c in cells[1])
        assert done[0] < first_z2 <= done[1]

    def test_mismatched_lengths(self):
        h = build_hypergraph(open_map(4, 4))
        with pytest.raises(ValueError):
            sequential_tree_traversal(h, open_map(4, 4), [], [], (0, 0))


class TestPlanPhase1:
    def test_idle_robot(self):
        inst = instance(open_map(4, 4), [], [(0, 0)])
        h, zh = setup(inst)
        a = make_assignment(CostTables((), ((),), ()), [], [[]])
        (p,) = plan_phase1(h, inst, a, zh)
        assert p.walk == ((0, 0),) and not p.covered_hvs and p.zone_completion == ()

    def test_zone_at_start(self):
        inst = instance(open_map(8, 8), [zone(0, rect(0, 0, 4, 4))], [(1, 1)])
        h, zh = setup(inst)
        p = plan_robot(h, inst, 0, [0], zh)
        assert p.walk[0] == p.walk[-1] == (1, 1)
        assert len(p.walk) == 4 * len(p.covered_hvs) + 1 == 17

    def test_sequential_completion_before_residual(self):
        inst = instance(
            open_map(16, 8),
            [zone(0, rect(4, 0, 2, 2)), zone(1, rect(8, 4, 4, 2)), zone(2, rect(12, 0, 2, 2))],
            [(0, 0), (0, 7), (15, 7)],
        )
        sol = solve(inst)
        two = [p for p in sol.phase1 if len(sol.assignment.sequences[p.robot]) >= 2]
        assert two, "expected a robot with several zones"
        for p in two:
            c = p.zone_completion
            assert list(c) == sorted(c) and len(set(c)) == len(c)
            assert c[-1] < sol.plan.phase_boundary[p.robot]

    def test_zone_order_and_coverage_on_random(self):
        for seed in range(5):
            inst = generate_instance(100 + seed, 20, 20, 6, 3, "uniform_0.8_1.2")
            sol = solve(inst)
            h = sol.hypergraph
            for p in sol.phase1:
                assert p.walk[0] == inst.robots[p.robot]
                assert_walk(p.walk, inst.map)
                assert list(p.zone_completion) == sorted(p.zone_completion)
                seen = set(p.walk)
                for z in sol.assignment.sequences[p.robot]:
                    assert inst.zones[z].cells <= seen
                assert p.covered_hvs == fully_visited(h, p.walk)
                # tree circuits plus bridges bound the walk
                assert len(p.walk) <= 4 * sum(len(t.vertices) for t in p.trees) + p.bridge_steps + 1
