"""Phase 2: cover whatever phase 1 left, balancing total per-robot effort."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence

from .assignment import Assignment
from .graph import HyperTree, circuit, grid_distances, grid_shortest_path, steiner_tree
from .instance import Cell, GridMap, HyperGraph, Instance
from .planner import Phase1Plan

Arc = tuple[int, int]  # [start, stop) into the residual cycle


@dataclass(frozen=True)
class Split:
    arcs: tuple[Arc | None, ...]
    transfers: tuple[tuple[Cell, ...], ...]
    phase2_costs: tuple[float, ...]
    max_total: float


@dataclass(frozen=True)
class ResidualPlan:
    steiner: HyperTree | None
    cycle: tuple[Cell, ...]  # closed: cycle[0] == cycle[-1]
    split: Split | None


@dataclass(frozen=True)
class FullPlan:
    paths: tuple[tuple[Cell, ...], ...]
    phase_boundary: tuple[int, ...]
    assignment: Assignment
    instance_digest: str


def residual_set(h: HyperGraph, phase1: Sequence[Phase1Plan]) -> frozenset[int]:
    covered = set()
    for p in phase1:
        covered |= p.covered_hvs
    return frozenset(range(h.hv_count)) - covered


def walk_cost(grid: GridMap, walk: Sequence[Cell], time_weighted: bool) -> float:
    """Moves along ``walk``, or the summed cost of every cell entered."""
    if not time_weighted:
        return float(len(walk) - 1)
    return sum(grid.cost(c) for c in walk[1:])


def _allocate(order, c1, dist, prefix, budget):
    """Greedy feasibility check: each robot in turn takes the longest arc it can."""
    n = len(prefix)
    arcs: dict[int, Arc] = {}
    pos = 0
    for i in order:
        if pos >= n:
            break
        room = budget - c1[i] - dist[i][pos]
        if room < -1e-9:
            continue
        # last index t with prefix[t] - prefix[pos] <= room
        t = bisect.bisect_right(prefix, prefix[pos] + room + 1e-9) - 1
        arcs[i] = (pos, t + 1)
        pos = t + 1
    return arcs if pos >= n else None


SUBSET_LIMIT = 10  # exact subset search up to this many robots


def _reach(i, c1, dist, prefix, budget):
    """best[P]: farthest exclusive end robot ``i`` reaches from any start at or before P."""
    n = len(prefix)
    best = [0] * n
    top = 0
    for s in range(n):
        room = budget - c1[i] - dist[i][s]
        if room >= -1e-9:
            top = max(top, bisect.bisect_right(prefix, prefix[s] + room + 1e-9))
        best[s] = top
    return best


def _allocate_subsets(order, c1, dist, prefix, budget):
    """Exact feasibility over robot subsets, with arcs allowed to start anywhere already covered.

    Clipping such an arc to the uncovered part never costs more, because the
    transfer to the clip point is at most the transfer to the arc start plus
    the walk along the cycle.
    """
    n = len(prefix)
    k = len(order)
    reach = [_reach(i, c1, dist, prefix, budget) for i in order]
    done = [0] * (1 << k)
    pick: list[tuple[int, int] | None] = [None] * (1 << k)
    for mask in range(1, 1 << k):
        for r in range(k):
            bit = 1 << r
            if not mask & bit:
                continue
            before = done[mask ^ bit]
            got = before if before >= n else max(before, reach[r][before])
            if got > done[mask]:
                done[mask] = got
                pick[mask] = (r, before)
    full = (1 << k) - 1
    if done[full] < n:
        return None
    arcs: dict[int, Arc] = {}
    mask = full
    while pick[mask] is not None:
        r, before = pick[mask]
        end = done[mask]
        if end > before:
            arcs[order[r]] = (before, end)
        mask ^= 1 << r
    return arcs


def _allocate_farthest(order, c1, dist, prefix, budget):
    """Feasibility check that lets whichever unused robot reaches farthest take the next arc."""
    n = len(prefix)
    arcs: dict[int, Arc] = {}
    free = list(order)
    pos = 0
    while pos < n and free:
        best = None
        for i in free:
            room = budget - c1[i] - dist[i][pos]
            if room < -1e-9:
                continue
            t = bisect.bisect_right(prefix, prefix[pos] + room + 1e-9) - 1
            if best is None or t > best[0]:
                best = (t, i)
        if best is None:
            return None
        t, i = best
        arcs[i] = (pos, t + 1)
        free.remove(i)
        pos = t + 1
    return arcs if pos >= n else None


def _evaluate(arcs, c1, dist, prefix):
    costs = [0.0] * len(c1)
    for i, (s, e) in arcs.items():
        costs[i] = dist[i][s] + prefix[e - 1] - prefix[s]
    return costs, max(a + b for a, b in zip(c1, costs))


def min_max_split(
    cycle: Sequence[Cell],
    phase1_costs: Sequence[float],
    phase1_ends: Sequence[Cell],
    grid: GridMap,
    time_weighted: bool = False,
) -> Split:
    """Cut an open cycle (no repeated closing cell) into contiguous arcs.

    Minimises max_i(C1_i + C2_i) where C2_i counts the transfer from the
    robot's phase-1 end plus the moves along its arc (cost-weighted when
    ``time_weighted``). Robots are served in order of their nearest cycle
    index; the bound is found by bisection and never exceeds the plain
    equal-length split in that same order. When the fixed order cannot meet
    a bound, an exact search over robot subsets (a farthest-reach greedy for
    large teams) decides feasibility instead.
    """
    if not cycle:
        raise ValueError("empty cycle")
    k = len(phase1_costs)
    n = len(cycle)
    c1 = [float(v) for v in phase1_costs]
    dist = []
    for end in phase1_ends:
        d = grid_distances(grid, [end], time_weighted)
        dist.append([float(d[c]) for c in cycle])
    step = [grid.cost(c) if time_weighted else 1.0 for c in cycle]
    prefix = [0.0] * n
    for t in range(1, n):
        prefix[t] = prefix[t - 1] + step[t]

    nearest = [min(range(n), key=lambda p: (dist[i][p], p)) for i in range(k)]
    order = sorted(range(k), key=lambda i: (nearest[i], i))

    # equal-length reference split in the same order
    equal: dict[int, Arc] = {}
    size, extra = divmod(n, k)
    pos = 0
    for rank, i in enumerate(order):
        length = size + (1 if rank < extra else 0)
        if length:
            equal[i] = (pos, pos + length)
        pos += length
    best_arcs = equal
    best_costs, best_max = _evaluate(equal, c1, dist, prefix)

    fallback = _allocate_subsets if k <= SUBSET_LIMIT else _allocate_farthest
    # move counts are integers, so the unweighted search can bisect on integers
    lo = max(c1) - 1 if not time_weighted else max(c1)
    hi = best_max
    for _ in range(64):
        if hi - lo <= (1 if not time_weighted else 1e-7):
            break
        mid = (lo + hi) // 2 if not time_weighted else 0.5 * (lo + hi)
        arcs = _allocate(order, c1, dist, prefix, mid) or fallback(order, c1, dist, prefix, mid)
        if arcs is None:
            lo = mid
            continue
        costs, value = _evaluate(arcs, c1, dist, prefix)
        if value < best_max - 1e-12:
            best_arcs, best_costs, best_max = arcs, costs, value
        hi = min(mid, value)

    transfers = []
    out_arcs: list[Arc | None] = []
    for i in range(k):
        arc = best_arcs.get(i)
        out_arcs.append(arc)
        if arc is None:
            transfers.append(())
        else:
            transfers.append(tuple(grid_shortest_path(grid, phase1_ends[i], cycle[arc[0]], time_weighted)))
    return Split(tuple(out_arcs), tuple(transfers), tuple(best_costs), best_max)


def _cycle_origin(grid: GridMap, h: HyperGraph, tree: HyperTree, ends: Sequence[Cell]) -> Cell:
    dist = grid_distances(grid, ends)
    cells = h.cells_of(tree.vertices)
    return min(cells, key=lambda c: (dist[c], c))


def plan_phase2(
    h: HyperGraph,
    instance: Instance,
    phase1: Sequence[Phase1Plan],
    assignment: Assignment,
    time_weighted: bool = False,
    closed_tour: bool = False,
) -> tuple[FullPlan, ResidualPlan]:
    grid = instance.map
    walks = [list(p.walk) for p in phase1]
    ends = [w[-1] for w in walks]
    terminals = residual_set(h, phase1)

    residual = ResidualPlan(None, (), None)
    paths = [list(w) for w in walks]
    if terminals:
        tree = steiner_tree(h, terminals)
        loop = circuit(h, tree, _cycle_origin(grid, h, tree, ends))
        c1 = [walk_cost(grid, w, time_weighted) for w in walks]
        split = min_max_split(loop, c1, ends, grid, time_weighted)
        for i, arc in enumerate(split.arcs):
            if arc is None:
                continue
            paths[i].extend(split.transfers[i][1:])
            paths[i].extend(loop[arc[0] + 1 : arc[1]])
        residual = ResidualPlan(tree, tuple(loop) + (loop[0],), split)

    if closed_tour:
        for i, path in enumerate(paths):
            back = grid_shortest_path(grid, path[-1], instance.robots[i], time_weighted)
            path.extend(back[1:])

    plan = FullPlan(
        paths=tuple(tuple(p) for p in paths),
        phase_boundary=tuple(len(w) for w in walks),
        assignment=assignment,
        instance_digest=instance.digest(),
    )
    return plan, residual
