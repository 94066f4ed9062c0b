"""Brute-force reference implementations used only by the tests.

None of these share code with the library paths they check.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from pamcpp.assignment import CostTables
from pamcpp.instance import HyperGraph


def custom_hypergraph(n: int, edges: dict[tuple[int, int], float]) -> HyperGraph:
    """HyperGraph with arbitrary edge costs, for graph-only tests (no cells)."""
    adj = [[] for _ in range(n)]
    norm = {}
    for (u, v), w in edges.items():
        u, v = min(u, v), max(u, v)
        norm[(u, v)] = w
        adj[u].append((v, w))
        adj[v].append((u, w))
    return HyperGraph(
        hv_count=n,
        hv_block=tuple((i, 0) for i in range(n)),
        hv_cells=tuple(() for _ in range(n)),
        hv_cost=tuple(1.0 for _ in range(n)),
        edges=norm,
        adj=tuple(tuple(sorted(a)) for a in adj),
        cell_to_hv={},
        block_to_hv={},
    )


def _connected(vertices, edges) -> bool:
    vertices = set(vertices)
    if not vertices:
        return False
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == vertices


def min_spanning_cost_by_enumeration(edges: dict[tuple[int, int], float], subset) -> float:
    """Cheapest spanning tree of the induced subgraph, by trying every edge subset of size |V|-1."""
    subset = set(subset)
    if len(subset) == 1:
        return 0.0
    induced = [(e, w) for e, w in edges.items() if e[0] in subset and e[1] in subset]
    best = math.inf
    for combo in itertools.combinations(induced, len(subset) - 1):
        if _connected(subset, [e for e, _ in combo]):
            best = min(best, sum(w for _, w in combo))
    return best


def steiner_optimum_by_enumeration(n: int, edges: dict[tuple[int, int], float], terminals) -> float:
    """Optimal Steiner cost: min over vertex supersets of the terminals of their induced MST."""
    terminals = set(terminals)
    others = [v for v in range(n) if v not in terminals]
    best = math.inf
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            vs = terminals | set(extra)
            induced = {e: w for e, w in edges.items() if e[0] in vs and e[1] in vs}
            if not _connected(vs, induced):
                continue
            best = min(best, _prim_cost(vs, induced))
    return best


def _prim_cost(vertices, edges) -> float:
    vertices = set(vertices)
    start = min(vertices)
    inside = {start}
    total = 0.0
    while inside != vertices:
        w, v = min((w, (b if a in inside else a)) for (a, b), w in edges.items() if (a in inside) != (b in inside))
        inside.add(v)
        total += w
    return total


def bfs_distance(grid, a, b) -> int:
    from collections import deque

    dist = {a: 0}
    q = deque([a])
    while q:
        c = q.popleft()
        if c == b:
            return dist[c]
        x, y = c
        for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if grid.is_free(n) and n not in dist:
                dist[n] = dist[c] + 1
                q.append(n)
    raise ValueError("unreachable")


def best_split_by_enumeration(cycle, c1, ends, grid) -> float:
    """Optimal max(C1 + transfer + arc moves) over every robot order and cut placement."""
    n = len(cycle)
    k = len(c1)
    dist = [[bfs_distance(grid, e, c) for c in cycle] for e in ends]
    best = math.inf
    for order in itertools.permutations(range(k)):
        for cuts in itertools.combinations_with_replacement(range(n + 1), k - 1):
            bounds = (0, *cuts, n)
            loads = list(c1)
            for rank, i in enumerate(order):
                s, e = bounds[rank], bounds[rank + 1]
                if e > s:
                    loads[i] += dist[i][s] + (e - s - 1)
            best = min(best, max(loads))
    return best


def replay_coverage_times(zones, paths) -> list[int]:
    """Step the team forward one timestep at a time, rescanning every zone."""
    horizon = max(len(p) for p in paths)
    times = [None] * len(zones)
    for t in range(1, horizon + 1):
        seen = set()
        for p in paths:
            seen.update(p[:t])
        for j, z in enumerate(zones):
            if times[j] is None and set(z.cells) <= seen:
                times[j] = t
    return times


def random_tables(rng: np.random.Generator, n_zones: int, n_robots: int) -> tuple[CostTables, list[float]]:
    """Metric cost tables from random points in the plane, with random positive weights."""
    zone_pts = rng.uniform(0, 10, size=(n_zones, 2))
    robot_pts = rng.uniform(0, 10, size=(n_robots, 2))
    internal = tuple(float(v) for v in rng.uniform(0.0, 4.0, size=n_zones))

    def d(a, b):
        return float(np.hypot(*(a - b)))

    depot = tuple(tuple(d(r, z) for z in zone_pts) for r in robot_pts)
    between = tuple(tuple(0.0 if i == j else d(zone_pts[i], zone_pts[j]) for j in range(n_zones)) for i in range(n_zones))
    weights = [float(w) for w in rng.uniform(0.5, 3.0, size=n_zones)]
    return CostTables(internal, depot, between), weights
