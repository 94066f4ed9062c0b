"""Zone-to-robot assignment: cost tables, greedy construction, local search,
and an exhaustive oracle for small cases.

All of it optimizes the surrogate latency: arrival times along each robot's
zone sequence built from depot-to-zone, zone-to-zone and in-zone MST costs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import dijkstra, kruskal_mst
from .instance import HyperGraph, Instance, SolverConfig

TIE_EPS = 1e-9

Sequences = tuple[tuple[int, ...], ...]


class AssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class CostTables:
    zone_internal: tuple[float, ...]
    depot_to_zone: tuple[tuple[float, ...], ...]  # [robot][zone]
    zone_to_zone: tuple[tuple[float, ...], ...]

    @property
    def n_zones(self) -> int:
        return len(self.zone_internal)

    @property
    def n_robots(self) -> int:
        return len(self.depot_to_zone)


@dataclass(frozen=True)
class Assignment:
    sequences: Sequences
    surrogate_cost: float

    def robot_of(self) -> dict[int, int]:
        return {z: i for i, seq in enumerate(self.sequences) for z in seq}


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    operator: str
    accepted: bool
    surrogate: float


def compute_cost_tables(h: HyperGraph, instance: Instance, zone_hvs: Sequence[frozenset[int]]) -> CostTables:
    internal = tuple(kruskal_mst(h, hvs).total_cost for hvs in zone_hvs)
    depot = []
    for r in instance.robots:
        dist, _ = dijkstra(h, h.cell_to_hv[r])
        depot.append(tuple(min(dist[u] for u in hvs) for hvs in zone_hvs))
    n = len(zone_hvs)
    between = [[0.0] * n for _ in range(n)]
    for j in range(n):
        dist, _ = dijkstra(h, zone_hvs[j])
        for jj in range(j + 1, n):
            between[j][jj] = between[jj][j] = min(dist[u] for u in zone_hvs[jj])
    return CostTables(internal, tuple(depot), tuple(tuple(row) for row in between))


def _robot_latency(tables: CostTables, weights: Sequence[float], robot: int, seq: Sequence[int]) -> float:
    total = 0.0
    arrival = 0.0
    prev = None
    for z in seq:
        travel = tables.depot_to_zone[robot][z] if prev is None else tables.zone_to_zone[prev][z]
        arrival += travel + tables.zone_internal[z]
        total += weights[z] * arrival
        prev = z
    return total


def surrogate_latency(tables: CostTables, weights: Sequence[float], sequences: Sequence[Sequence[int]]) -> float:
    return sum(_robot_latency(tables, weights, i, seq) for i, seq in enumerate(sequences))


def make_assignment(tables: CostTables, weights: Sequence[float], sequences) -> Assignment:
    seqs = tuple(tuple(s) for s in sequences)
    return Assignment(seqs, surrogate_latency(tables, weights, seqs))


def greedy_assign(tables: CostTables, weights: Sequence[float], n_robots: int) -> Assignment:
    unassigned = set(range(tables.n_zones))
    seqs: list[list[int]] = [[] for _ in range(n_robots)]
    elapsed = [0.0] * n_robots
    while unassigned:
        best = math.inf
        pick = None
        # robots outer, zones inner: the first strict minimum has the smallest (robot, zone)
        for i in range(n_robots):
            for j in sorted(unassigned):
                travel = tables.depot_to_zone[i][j] if not seqs[i] else tables.zone_to_zone[seqs[i][-1]][j]
                delta = weights[j] * (elapsed[i] + travel + tables.zone_internal[j])
                if delta < best - TIE_EPS:
                    best = delta
                    pick = (i, j)
        i, j = pick
        travel = tables.depot_to_zone[i][j] if not seqs[i] else tables.zone_to_zone[seqs[i][-1]][j]
        elapsed[i] += travel + tables.zone_internal[j]
        seqs[i].append(j)
        unassigned.discard(j)
    return make_assignment(tables, weights, seqs)


def random_assignment(n_zones: int, n_robots: int, rng: np.random.Generator) -> list[list[int]]:
    seqs: list[list[int]] = [[] for _ in range(n_robots)]
    for z in rng.permutation(n_zones):
        seqs[int(rng.integers(n_robots))].append(int(z))
    return seqs


def move_probability(t: int, config: SolverConfig) -> float:
    """Probability of choosing the move operator at iteration ``t`` (0-based)."""
    if config.ls_schedule == "static":
        return 0.5
    period = max(1, math.ceil(config.ls_period_fraction * config.ls_iterations))
    return 0.5 * (1.0 + math.cos(2.0 * math.pi * t / period))


def local_search(
    initial: Assignment,
    tables: CostTables,
    weights: Sequence[float],
    config: SolverConfig,
    trace: list[TraceRecord] | None = None,
) -> Assignment:
    """Accept-if-strictly-better search over move and swap perturbations."""
    n_zones = sum(len(s) for s in initial.sequences)
    if config.ls_iterations == 0 or n_zones < 2:
        return initial
    rng = np.random.Generator(np.random.PCG64(config.seed))
    k = len(initial.sequences)
    seqs = [list(s) for s in initial.sequences]
    per_robot = [_robot_latency(tables, weights, i, s) for i, s in enumerate(seqs)]
    current = sum(per_robot)

    for t in range(config.ls_iterations):
        where = [(i, p) for i, s in enumerate(seqs) for p in range(len(s))]
        if rng.random() < move_probability(t, config):
            op = "move"
            i, p = where[int(rng.integers(n_zones))]
            target = int(rng.integers(k))
            cand = {i: seqs[i][:]} if target == i else {i: seqs[i][:], target: seqs[target][:]}
            zone = cand[i].pop(p)
            pos = int(rng.integers(len(cand[target]) + 1))
            cand[target].insert(pos, zone)
        else:
            op = "swap"
            a, b = rng.choice(n_zones, size=2, replace=False)
            (i1, p1), (i2, p2) = where[int(a)], where[int(b)]
            cand = {i1: seqs[i1][:]}
            cand.setdefault(i2, seqs[i2][:])
            z1, z2 = seqs[i1][p1], seqs[i2][p2]
            cand[i1][p1] = z2
            cand[i2][p2] = z1
        new_parts = {i: _robot_latency(tables, weights, i, s) for i, s in cand.items()}
        new_total = current + sum(new_parts[i] - per_robot[i] for i in cand)
        accepted = new_total < current - 1e-12
        if accepted:
            for i, s in cand.items():
                seqs[i] = s
                per_robot[i] = new_parts[i]
            current = sum(per_robot)
        if trace is not None:
            trace.append(TraceRecord(t, op, accepted, current))
    return make_assignment(tables, weights, seqs)


def count_ordered_partitions(n_zones: int, n_robots: int) -> int:
    return math.factorial(n_zones) * math.comb(n_zones + n_robots - 1, n_robots - 1)


def brute_force_assign(tables: CostTables, weights: Sequence[float], n_robots: int) -> Assignment:
    n = tables.n_zones
    if n > 7 or n_robots > 3:
        raise AssignmentError("instance too large for oracle")
    best_cost = math.inf
    best: Sequences | None = None
    for perm in itertools.permutations(range(n)):
        for cuts in itertools.combinations_with_replacement(range(n + 1), n_robots - 1):
            bounds = (0, *cuts, n)
            seqs = tuple(perm[bounds[r] : bounds[r + 1]] for r in range(n_robots))
            cost = surrogate_latency(tables, weights, seqs)
            if cost < best_cost - TIE_EPS or (cost <= best_cost + TIE_EPS and seqs < best):
                best_cost, best = min(cost, best_cost), seqs
    assert best is not None
    return make_assignment(tables, weights, best)
