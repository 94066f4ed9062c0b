"""End-to-end two-phase pipeline with per-stage timing."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .assignment import Assignment, CostTables, TraceRecord, compute_cost_tables, greedy_assign, local_search
from .instance import HyperGraph, Instance, SolverConfig, build_hypergraph, zone_hypervertices
from .planner import Phase1Plan, plan_phase1
from .residual import FullPlan, ResidualPlan, plan_phase2

STAGES = ("cost_calculation", "zone_assignment", "sequential_tree_traversal", "residual_path_planning")


@dataclass
class Solution:
    instance: Instance
    hypergraph: HyperGraph
    tables: CostTables
    greedy: Assignment
    assignment: Assignment
    phase1: list[Phase1Plan]
    residual: ResidualPlan
    plan: FullPlan
    timings: dict[str, float] = field(default_factory=dict)
    ls_trace: list[TraceRecord] = field(default_factory=list)


@contextmanager
def _stage(timings: dict[str, float], name: str):
    t0 = time.perf_counter()
    yield
    timings[name] = time.perf_counter() - t0


def solve(instance: Instance, config: SolverConfig | None = None, record_trace: bool = False) -> Solution:
    cfg = config or instance.config
    timings: dict[str, float] = {}
    trace: list[TraceRecord] | None = [] if record_trace else None

    with _stage(timings, "cost_calculation"):
        h = build_hypergraph(instance.map)
        zone_hvs = [zone_hypervertices(h, z) for z in instance.zones]
        tables = compute_cost_tables(h, instance, zone_hvs)
    with _stage(timings, "zone_assignment"):
        weights = instance.weights
        initial = greedy_assign(tables, weights, instance.n_robots)
        refined = local_search(initial, tables, weights, cfg, trace)
    with _stage(timings, "sequential_tree_traversal"):
        phase1 = plan_phase1(h, instance, refined, zone_hvs, cfg.weighted_time)
    with _stage(timings, "residual_path_planning"):
        plan, residual = plan_phase2(h, instance, phase1, refined, cfg.weighted_time, cfg.closed_tour)

    return Solution(instance, h, tables, initial, refined, phase1, residual, plan, timings, trace or [])
