"""Graph primitives on the block graph and on the raw grid.

Every routine is deterministic: ties are broken by vertex id on the block
graph and by coordinate order on the grid.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .instance import Cell, GridMap, HyperGraph

EPS = 1e-9

# For each corner (TL, TR, BR, BL): the block side it looks across, and the
# corner it lands on in the neighbouring block when a tree edge crosses there.
_SIDE = ((0, -1), (1, 0), (0, 1), (-1, 0))
_LANDING = (3, 0, 1, 2)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class HyperTree:
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    anchor: int | None
    total_cost: float

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def with_anchor(self, anchor: int) -> HyperTree:
        return HyperTree(self.vertices, self.edges, anchor, self.total_cost)


def make_tree(h: HyperGraph, vertices: Iterable[int], edges: Iterable[tuple[int, int]], anchor=None) -> HyperTree:
    edges = frozenset((u, v) if u < v else (v, u) for u, v in edges)
    return HyperTree(frozenset(vertices), edges, anchor, sum(h.edges[e] for e in sorted(edges)))


def dijkstra(h: HyperGraph, source: int | Iterable[int]) -> tuple[list[float], list[int]]:
    """Shortest hyperedge-cost distances from ``source`` (a vertex or a set of them).

    Among equal-length paths the predecessor with the smaller id wins.
    """
    sources = [source] if isinstance(source, int) else sorted(set(source))
    dist = [math.inf] * h.hv_count
    parent = [-1] * h.hv_count
    heap = []
    for s in sources:
        dist[s] = 0.0
        heap.append((0.0, s))
    heapq.heapify(heap)
    done = [False] * h.hv_count
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in h.adj[u]:
            if done[v]:
                continue
            nd = d + w
            if nd < dist[v] - EPS:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
            elif nd <= dist[v] + EPS and u < parent[v]:
                parent[v] = u
    return dist, parent


def path_to(parent: list[int], target: int) -> list[int]:
    """Vertices from the search source to ``target`` following ``parent``."""
    path = [target]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    path.reverse()
    return path


class _DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def kruskal_mst(h: HyperGraph, subset: Iterable[int]) -> HyperTree:
    subset = frozenset(subset)
    if not subset:
        raise GraphError("disconnected subset")
    candidates = sorted((w, u, v) for (u, v), w in h.edges.items() if u in subset and v in subset)
    ds = _DisjointSet(subset)
    chosen = []
    for w, u, v in candidates:
        if ds.union(u, v):
            chosen.append((u, v))
            if len(chosen) == len(subset) - 1:
                break
    if len(chosen) != len(subset) - 1:
        raise GraphError("disconnected subset")
    return make_tree(h, subset, chosen)


def steiner_tree(h: HyperGraph, terminals: Iterable[int]) -> HyperTree:
    """Shortest-path-heuristic Steiner tree (2-approximation).

    Grows from the smallest terminal, attaching the nearest unconnected
    terminal through its shortest path; the union is then replaced by the MST
    of its induced subgraph and non-terminal leaves are pruned.
    """
    terms = sorted(set(terminals))
    if not terms:
        raise GraphError("empty terminal set")
    in_tree = {terms[0]}
    remaining = set(terms[1:])
    dist = [math.inf] * h.hv_count
    parent = [-1] * h.hv_count

    def absorb(new_vertices):
        # adding sources only lowers distances, so a partial re-run suffices
        heap = []
        for s in new_vertices:
            dist[s] = 0.0
            parent[s] = -1
            heap.append((0.0, s))
        heapq.heapify(heap)
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in h.adj[u]:
                nd = d + w
                if nd < dist[v] - EPS:
                    dist[v] = nd
                    parent[v] = u
                    heapq.heappush(heap, (nd, v))

    absorb([terms[0]])
    while remaining:
        t = min(remaining, key=lambda v: (dist[v], v))
        path = path_to(parent, t)
        new = [v for v in path if v not in in_tree]
        in_tree.update(new)
        remaining.difference_update(new)
        absorb(new)

    tree = kruskal_mst(h, in_tree)
    term_set = set(terms)
    adj = tree.adjacency()
    leaves = deque(sorted(v for v in adj if len(adj[v]) <= 1 and v not in term_set))
    while leaves:
        v = leaves.popleft()
        if v not in adj or len(adj[v]) > 1 or len(adj) == 1:
            continue
        for u in adj.pop(v):
            adj[u].discard(v)
            if len(adj[u]) <= 1 and u not in term_set:
                leaves.append(u)
    edges = {(u, v) for u in adj for v in adj[u] if u < v}
    return make_tree(h, adj.keys(), edges, anchor=terms[0])


def circuit(h: HyperGraph, tree: HyperTree, start_cell: Cell) -> list[Cell]:
    """Clockwise circumnavigation of ``tree`` starting at ``start_cell``.

    Returns the 4*|V| cells of the loop without repeating the start.
    """
    u0 = h.cell_to_hv.get(start_cell)
    if u0 is None or u0 not in tree.vertices:
        raise GraphError("start cell outside tree")
    adj = tree.adjacency()
    q0 = h.hv_cells[u0].index(start_cell)
    out = []
    u, q = u0, q0
    while True:
        out.append(h.hv_cells[u][q])
        bx, by = h.hv_block[u]
        dx, dy = _SIDE[q]
        nb = h.block_to_hv.get((bx + dx, by + dy))
        if nb is not None and nb in adj[u]:
            u, q = nb, _LANDING[q]
        else:
            q = (q + 1) % 4
        if (u, q) == (u0, q0):
            break
    return out


def circumnavigate(h: HyperGraph, tree: HyperTree, start_cell: Cell) -> list[Cell]:
    """Closed walk around ``tree``: first cell = last cell = ``start_cell``."""
    loop = circuit(h, tree, start_cell)
    return loop + [loop[0]]


def grid_distances(grid: GridMap, sources: Iterable[Cell], time_weighted: bool = False) -> dict[Cell, float]:
    """Distance from the nearest source to every free cell.

    Unweighted distances count moves; weighted ones sum the costs of the
    cells entered after leaving the source.
    """
    sources = list(sources)
    if not time_weighted:
        dist: dict[Cell, float] = {s: 0 for s in sources}
        queue = deque(sources)
        while queue:
            c = queue.popleft()
            d = dist[c] + 1
            for n in grid.free_neighbors(c):
                if n not in dist:
                    dist[n] = d
                    queue.append(n)
        return dist
    dist = {s: 0.0 for s in sources}
    heap = [(0.0, s) for s in sorted(sources)]
    heapq.heapify(heap)
    while heap:
        d, c = heapq.heappop(heap)
        if d > dist[c]:
            continue
        for n in grid.free_neighbors(c):
            nd = d + grid.cost(n)
            if nd < dist.get(n, math.inf) - EPS:
                dist[n] = nd
                heapq.heappush(heap, (nd, n))
    return dist


def grid_shortest_path(grid: GridMap, start: Cell, goal: Cell, time_weighted: bool = False) -> list[Cell]:
    """Shortest 4-connected walk from ``start`` to ``goal``, both included.

    Ties prefer fewer moves, then the lexicographically smallest next cell.
    """
    if start == goal:
        return [start]
    # backward search: key(v) = (cost to reach goal from v, moves)
    key: dict[Cell, tuple[float, int]] = {goal: (0.0, 0)}
    heap = [(0.0, 0, goal)]
    done = set()
    while heap:
        d, k, c = heapq.heappop(heap)
        if c in done:
            continue
        done.add(c)
        if start in done and d > key[start][0] + EPS:
            break
        step = grid.cost(c) if time_weighted else 1.0
        for n in grid.free_neighbors(c):
            if n in done:
                continue
            cand = (d + step, k + 1)
            old = key.get(n)
            if old is None or cand[0] < old[0] - EPS or (cand[0] <= old[0] + EPS and cand[1] < old[1]):
                key[n] = cand
                heapq.heappush(heap, (cand[0], cand[1], n))
    if start not in key:
        raise GraphError("cells are not connected")
    path = [start]
    cur = start
    while cur != goal:
        d, k = key[cur]
        best = None
        for n in sorted(grid.free_neighbors(cur)):
            if n not in key:
                continue
            step = grid.cost(n) if time_weighted else 1.0
            nd, nk = key[n]
            if abs(nd + step - d) <= 1e-7 and nk == k - 1:
                best = n
                break
        if best is None:
            raise GraphError("shortest path reconstruction failed")
        path.append(best)
        cur = best
    return path
