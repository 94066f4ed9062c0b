"""Replay plans into coverage metrics, compare them, and build the
priority-agnostic baseline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .assignment import Assignment
from .instance import Cell, HyperGraph, Instance, build_hypergraph
from .planner import Phase1Plan
from .residual import FullPlan, plan_phase2

LATENCY_TOL = 1e-9


class PlanError(ValueError):
    """A plan breaks walk validity or full coverage."""


@dataclass(frozen=True)
class Metrics:
    zone_times: tuple[int, ...]
    weighted_latency: float
    makespan: int
    mmr: float

    @property
    def lex_key(self) -> tuple[float, int]:
        return (self.weighted_latency, self.makespan)

    def to_dict(self) -> dict:
        return {
            "zone_times": list(self.zone_times),
            "weighted_latency": self.weighted_latency,
            "makespan": self.makespan,
            "mmr": self.mmr,
        }


def zone_coverage_times(instance: Instance, paths: Sequence[Sequence[Cell]]) -> list[int]:
    """Earliest 1-based timestep at which each zone is fully visited by the team."""
    first: dict[Cell, int] = {}
    for path in paths:
        for t, c in enumerate(path, start=1):
            if t < first.get(c, t + 1):
                first[c] = t
    times = []
    for z in instance.zones:
        try:
            times.append(max(first[c] for c in z.cells))
        except KeyError:
            raise PlanError(f"zone {z.id} never covered") from None
    return times


def evaluate(instance: Instance, plan: FullPlan | Sequence[Sequence[Cell]]) -> Metrics:
    paths = plan.paths if isinstance(plan, FullPlan) else plan
    times = zone_coverage_times(instance, paths)
    lengths = [len(p) for p in paths]
    makespan = max(lengths)
    mean = sum(lengths) / len(lengths)
    return Metrics(
        zone_times=tuple(times),
        weighted_latency=float(sum(z.weight * t for z, t in zip(instance.zones, times))),
        makespan=makespan,
        mmr=makespan / mean,
    )


def lex_compare(a: Metrics, b: Metrics) -> int:
    """-1 if ``a`` is better, 1 if ``b`` is better, 0 if tied."""
    if abs(a.weighted_latency - b.weighted_latency) > LATENCY_TOL:
        return -1 if a.weighted_latency < b.weighted_latency else 1
    if a.makespan != b.makespan:
        return -1 if a.makespan < b.makespan else 1
    return 0


def validate_plan(instance: Instance, paths: Sequence[Sequence[Cell]], closed_tour: bool = False) -> None:
    grid = instance.map
    if len(paths) != instance.n_robots:
        raise PlanError(f"plan has {len(paths)} robots, instance has {instance.n_robots}")
    for i, path in enumerate(paths):
        if not path:
            raise PlanError(f"robot {i} has an empty path")
        if tuple(path[0]) != instance.robots[i]:
            raise PlanError(f"robot {i} does not start at its start cell")
        if closed_tour and tuple(path[-1]) != instance.robots[i]:
            raise PlanError(f"robot {i} does not return to its start cell")
        for t, c in enumerate(path):
            if not grid.is_free(c):
                raise PlanError(f"robot {i} index {t} is not a free cell")
            if t and abs(c[0] - path[t - 1][0]) + abs(c[1] - path[t - 1][1]) != 1:
                raise PlanError(f"non-adjacent step at robot {i} index {t}")
    seen = set()
    for path in paths:
        seen.update(map(tuple, path))
    if len(seen) != len(grid.free_cells()):
        raise PlanError("coverage incomplete")


def baseline_plan(instance: Instance, h: HyperGraph | None = None) -> FullPlan:
    """Zone-blind plan: every robot idles in phase 1, phase 2 covers the map."""
    h = h or build_hypergraph(instance.map)
    idle = [Phase1Plan(i, (), (r,), frozenset(), ()) for i, r in enumerate(instance.robots)]
    empty = Assignment(tuple(() for _ in instance.robots), 0.0)
    cfg = instance.config
    plan, _ = plan_phase2(h, instance, idle, empty, cfg.weighted_time, cfg.closed_tour)
    return plan
