from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from helpers import instance, open_map, rect, zone
from oracles import replay_coverage_times
from pamcpp.evaluate import Metrics, PlanError, baseline_plan, evaluate, lex_compare, validate_plan, zone_coverage_times
from pamcpp.generate import generate_instance
from pamcpp.solver import solve

ROW = [(x, 0) for x in range(8)]


def snake(w, h):
    return [(x if y % 2 == 0 else w - 1 - x, y) for y in range(h) for x in range(w)]


def metrics(latency, makespan):
    return Metrics((), latency, makespan, 1.0)


class TestCoverageTimes:
    def test_start_cell_zone(self):
        inst = instance(open_map(8, 2), [zone(0, {(0, 0)})], [(0, 0)])
        assert zone_coverage_times(inst, [snake(8, 2)]) == [1]

    def test_last_cell_position(self):
        path = snake(8, 2)
        inst = instance(open_map(8, 2), [zone(0, {path[3], path[8]})], [(0, 0)])
        assert zone_coverage_times(inst, [path]) == [9]

    def test_joint_coverage(self):
        a = [(0, 0), (1, 0), (2, 0), (3, 0)]
        b = [(7, 1), (6, 1), (5, 1), (4, 1), (4, 0), (5, 0)]
        inst = instance(open_map(8, 2), [zone(0, {(3, 0), (5, 0)})], [(0, 0), (7, 1)])
        assert zone_coverage_times(inst, [a, b]) == [6]

    def test_missing_zone(self):
        inst = instance(open_map(8, 2), [zone(4, {(7, 1)})], [(0, 0)])
        with pytest.raises(PlanError, match="zone 4 never covered"):
            zone_coverage_times(inst, [ROW])

    def test_matches_replay(self):
        for seed in range(6):
            inst = generate_instance(200 + seed, 16, 16, 5, 3)
            paths = solve(inst).plan.paths
            assert zone_coverage_times(inst, paths) == replay_coverage_times(inst.zones, paths)


class TestEvaluate:
    def test_single_robot(self):
        path = snake(4, 4) + snake(4, 4)[::-1][1:5]
        inst = instance(open_map(4, 4), [zone(0, {path[4]})], [(0, 0)])
        m = evaluate(inst, [path])
        assert (m.weighted_latency, m.makespan, m.mmr) == (5.0, 20, 1.0)

    def test_mmr_arithmetic(self):
        inst = instance(open_map(16, 2), [], [(0, 0), (0, 1), (15, 0)])
        paths = [[(x, 0) for x in range(10)], [(x, 1) for x in range(10)], [(15 - x, 0) for x in range(16)]]
        m = evaluate(inst, paths)
        assert m.makespan == 16
        assert m.mmr == pytest.approx(16 / 12)

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 1000), factor=st.floats(0.1, 50))
    def test_weight_scaling(self, seed, factor):
        inst = generate_instance(seed, 12, 12, 3, 2)
        paths = solve(inst).plan.paths
        scaled = replace(inst, zones=tuple(replace(z, weight=z.weight * factor) for z in inst.zones))
        a, b = evaluate(inst, paths), evaluate(scaled, paths)
        assert b.weighted_latency == pytest.approx(factor * a.weighted_latency)
        assert (b.makespan, b.mmr, b.zone_times) == (a.makespan, a.mmr, a.zone_times)


class TestLexCompare:
    def test_examples(self):
        assert lex_compare(metrics(5, 100), metrics(6, 10)) == -1
        assert lex_compare(metrics(5, 10), metrics(5, 12)) == -1
        assert lex_compare(metrics(5, 10), metrics(5, 10)) == 0
        assert lex_compare(metrics(5 + 1e-12, 12), metrics(5, 10)) == 1

    @settings(max_examples=200)
    @given(
        a=st.tuples(st.integers(0, 5), st.integers(0, 5)),
        b=st.tuples(st.integers(0, 5), st.integers(0, 5)),
        c=st.tuples(st.integers(0, 5), st.integers(0, 5)),
    )
    def test_total_order(self, a, b, c):
        ma, mb, mc = metrics(float(a[0]), a[1]), metrics(float(b[0]), b[1]), metrics(float(c[0]), c[1])
        assert lex_compare(ma, mb) == -lex_compare(mb, ma)
        assert lex_compare(ma, mb) == (a > b) - (a < b)
        if lex_compare(ma, mb) <= 0 and lex_compare(mb, mc) <= 0:
            assert lex_compare(ma, mc) <= 0


class TestValidate:
    def setup_method(self):
        self.inst = instance(open_map(4, 2), [], [(0, 0)])
        self.good = [(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (2, 1), (1, 1), (0, 1)]

    def test_accepts(self):
        validate_plan(self.inst, [self.good])

    def test_teleport(self):
        bad = self.good[:3] + [(3, 1)] + self.good[5:]
        with pytest.raises(PlanError, match="non-adjacent step at robot 0 index 3"):
            validate_plan(self.inst, [bad])

    def test_incomplete(self):
        with pytest.raises(PlanError, match="coverage incomplete"):
            validate_plan(self.inst, [self.good[:-1]])

    def test_wrong_start(self):
        with pytest.raises(PlanError, match="start"):
            validate_plan(self.inst, [self.good[1:]])

    def test_closed_tour(self):
        with pytest.raises(PlanError, match="return"):
            validate_plan(self.inst, [self.good], closed_tour=True)
        validate_plan(self.inst, [self.good + [(0, 0)]], closed_tour=True)


class TestBaseline:
    def test_matches_no_zone_plan(self):
        inst = instance(open_map(4, 4), [], [(0, 0)])
        assert baseline_plan(inst).paths == solve(inst).plan.paths

    def test_balanced_pair(self):
        inst = instance(open_map(8, 8), [], [(0, 0), (7, 7)])
        lengths = [len(p) for p in baseline_plan(inst).paths]
        assert abs(lengths[0] - lengths[1]) <= 4

    def test_ignores_zones(self):
        inst = generate_instance(300, 16, 16, 4, 2)
        blind = instance(inst.map, [], inst.robots)
        assert baseline_plan(inst).paths == baseline_plan(blind).paths
        validate_plan(inst, baseline_plan(inst).paths)

    def test_zone_heavy_instance_beats_baseline(self):
        inst = instance(open_map(16, 16), [zone(0, rect(12, 12, 4, 4), 5.0)], [(0, 0), (1, 0)])
        assert evaluate(inst, solve(inst).plan).weighted_latency <= evaluate(inst, baseline_plan(inst)).weighted_latency
