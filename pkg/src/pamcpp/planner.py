"""Phase 1: per-robot zone trees and sequential tree traversal."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .assignment import Assignment
from .graph import GraphError, HyperTree, circuit, dijkstra, grid_distances, grid_shortest_path, kruskal_mst, make_tree, path_to
from .instance import Cell, GridMap, HyperGraph, Instance


@dataclass(frozen=True)
class Phase1Plan:
    robot: int
    trees: tuple[HyperTree, ...]
    walk: tuple[Cell, ...]
    covered_hvs: frozenset[int]  # blocks whose four cells all appear in walk
    zone_completion: tuple[int, ...]  # walk index finishing each assigned zone, in sequence order
    bridge_steps: int = 0

    @property
    def tree_hvs(self) -> frozenset[int]:
        return frozenset().union(*(t.vertices for t in self.trees)) if self.trees else frozenset()


def build_zone_trees(h: HyperGraph, start_hv: int, zones: Sequence[frozenset[int]]) -> list[HyperTree]:
    """One tree per zone: shortest connector from the anchor plus the zone MST.

    The returned tree's ``anchor`` is where its traversal starts; the next
    anchor is the entry vertex of the zone just processed.
    """
    trees = []
    anchor = start_hv
    for hvs in zones:
        dist, parent = dijkstra(h, anchor)
        entry = min(hvs, key=lambda u: (dist[u], u))
        connector = path_to(parent, entry)
        # keep the union acyclic: stop the connector where it first meets the zone
        cut = next(k for k, u in enumerate(connector) if u in hvs)
        connector = connector[: cut + 1]
        inner = kruskal_mst(h, hvs)
        edges = set(inner.edges) | set(zip(connector, connector[1:]))
        trees.append(make_tree(h, set(hvs) | set(connector), edges, anchor=anchor))
        anchor = connector[-1]
    return trees


def _pick_landing(grid: GridMap, here: Cell, loop: list[Cell], wanted: set[Cell]) -> int:
    """Index into ``loop`` minimising bridge length plus steps until every wanted cell is passed."""
    dist = grid_distances(grid, [here])
    n = len(loop)
    marks = [p for p in range(n) if loop[p] in wanted]
    if not marks:
        return min(range(n), key=lambda p: (dist[loop[p]], p))
    # the farthest wanted cell going forward from p is the last one strictly before p
    span = [0] * n
    prev = marks[-1]
    for p in range(n):
        span[p] = (prev - p) % n
        if loop[p] in wanted:
            prev = p
    return min(range(n), key=lambda p: (dist[loop[p]] + span[p], dist[loop[p]], p))


def sequential_tree_traversal(
    h: HyperGraph,
    grid: GridMap,
    zone_cells: Sequence[frozenset[Cell]],
    trees: Sequence[HyperTree],
    start_cell: Cell,
    time_weighted: bool = False,
) -> tuple[list[Cell], int]:
    """Walk the trees in order, leaving each as soon as its zone is covered.

    Returns the walk and the number of bridging moves inserted between trees.
    The last tree is left once every cell of its zone blocks is visited; if
    that consumes the whole loop, the loop is closed back to its first cell.
    """
    if not trees or len(trees) != len(zone_cells):
        raise ValueError("need one tree per zone")
    walk = [start_cell]
    visited = {start_cell}
    bridges = 0
    m = len(trees)
    for k, (cells, tree) in enumerate(zip(zone_cells, trees)):
        last = k == m - 1
        if last:
            zone_hvs = {h.cell_to_hv[c] for c in cells}
            target = h.cells_of(zone_hvs)
        else:
            target = set(cells)
        missing = target - visited
        if not missing:
            continue
        if k == 0:
            loop = circuit(h, tree, start_cell)
        else:
            base = circuit(h, tree, h.hv_cells[tree.anchor][0])
            p = _pick_landing(grid, walk[-1], base, missing)
            loop = base[p:] + base[:p]
            bridge = grid_shortest_path(grid, walk[-1], loop[0], time_weighted)
            bridges += len(bridge) - 1
            walk.extend(bridge[1:])
            visited.update(bridge)
            missing -= visited
        idx = 0
        while missing:
            idx += 1
            if idx >= len(loop):
                raise GraphError("zone unreachable within tree")
            c = loop[idx]
            walk.append(c)
            visited.add(c)
            missing.discard(c)
        if last and idx == len(loop) - 1:
            walk.append(loop[0])
    return walk, bridges


def completion_indices(walk: Sequence[Cell], zones: Sequence[frozenset[Cell]]) -> tuple[int, ...]:
    first: dict[Cell, int] = {}
    for t, c in enumerate(walk):
        first.setdefault(c, t)
    return tuple(max(first[c] for c in cells) for cells in zones)


def fully_visited(h: HyperGraph, walk: Sequence[Cell]) -> frozenset[int]:
    seen = set(walk)
    hvs = {h.cell_to_hv[c] for c in seen}
    return frozenset(u for u in hvs if all(c in seen for c in h.hv_cells[u]))


def plan_robot(
    h: HyperGraph,
    instance: Instance,
    robot: int,
    sequence: Sequence[int],
    zone_hvs: Sequence[frozenset[int]],
    time_weighted: bool = False,
) -> Phase1Plan:
    start = instance.robots[robot]
    if not sequence:
        return Phase1Plan(robot, (), (start,), frozenset(), ())
    trees = build_zone_trees(h, h.cell_to_hv[start], [zone_hvs[z] for z in sequence])
    cells = [instance.zones[z].cells for z in sequence]
    walk, bridges = sequential_tree_traversal(h, instance.map, cells, trees, start, time_weighted)
    return Phase1Plan(
        robot=robot,
        trees=tuple(trees),
        walk=tuple(walk),
        covered_hvs=fully_visited(h, walk),
        zone_completion=completion_indices(walk, cells),
        bridge_steps=bridges,
    )


def plan_phase1(
    h: HyperGraph,
    instance: Instance,
    assignment: Assignment,
    zone_hvs: Sequence[frozenset[int]],
    time_weighted: bool = False,
) -> list[Phase1Plan]:
    return [
        plan_robot(h, instance, i, seq, zone_hvs, time_weighted)
        for i, seq in enumerate(assignment.sequences)
    ]
