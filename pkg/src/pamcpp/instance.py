"""Problem instances: grid map, prioritized zones, robot starts, and the
2x2-block contraction used for all tree-based planning.

Coordinates are ``(x, y)`` = (column, row) with the origin at the top-left.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

Cell = tuple[int, int]

FREE = "."
OBSTACLE = "#"

# corner order inside a block, clockwise on screen (y grows downward)
CORNERS = ((0, 0), (1, 0), (1, 1), (0, 1))


class InstanceError(ValueError):
    """Raised when an instance document is malformed or violates an invariant."""


def neighbors4(cell: Cell) -> tuple[Cell, ...]:
    x, y = cell
    return ((x, y - 1), (x + 1, y), (x, y + 1), (x - 1, y))


def is_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for n in neighbors4(c):
            if n in cells and n not in seen:
                seen.add(n)
                queue.append(n)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    rows: tuple[str, ...]
    costs: tuple[tuple[float, ...], ...]  # obstacle cells hold 0.0

    def in_bounds(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def is_free(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height and self.rows[y][x] == FREE

    def cost(self, cell: Cell) -> float:
        return self.costs[cell[1]][cell[0]]

    def free_cells(self) -> list[Cell]:
        """Free cells in row-major scan order."""
        return [(x, y) for y in range(self.height) for x in range(self.width) if self.rows[y][x] == FREE]

    @cached_property
    def _adjacency(self) -> dict[Cell, tuple[Cell, ...]]:
        return {c: tuple(n for n in neighbors4(c) if self.is_free(n)) for c in self.free_cells()}

    def free_neighbors(self, cell: Cell) -> tuple[Cell, ...]:
        return self._adjacency.get(cell) or tuple(n for n in neighbors4(cell) if self.is_free(n))

    @property
    def unit_costs(self) -> bool:
        return all(self.cost(c) == 1.0 for c in self.free_cells())


@dataclass(frozen=True)
class Zone:
    id: int
    cells: frozenset[Cell]
    weight: float = 1.0


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    ls_iterations: int = 1000
    ls_schedule: str = "cosine"
    ls_period_fraction: float = 0.1
    closed_tour: bool = False
    weighted_time: bool = False

    def __post_init__(self):
        if self.seed < 0:
            raise InstanceError("config seed must be non-negative")
        if self.ls_iterations < 0:
            raise InstanceError("ls_iterations must be >= 0")
        if self.ls_schedule not in ("cosine", "static"):
            raise InstanceError(f"unknown ls_schedule {self.ls_schedule!r}")
        if not 0.0 < self.ls_period_fraction <= 1.0:
            raise InstanceError("ls_period_fraction must lie in (0, 1]")


@dataclass(frozen=True)
class Instance:
    map: GridMap
    zones: tuple[Zone, ...]
    robots: tuple[Cell, ...]
    config: SolverConfig = field(default_factory=SolverConfig)

    @property
    def n_robots(self) -> int:
        return len(self.robots)

    @property
    def weights(self) -> list[float]:
        return [z.weight for z in self.zones]

    def digest(self) -> str:
        return hashlib.sha256(serialize_instance(self).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class HyperGraph:
    """Graph of fully free 2x2 blocks.

    ``hv_cells[u]`` lists the block's cells in clockwise corner order
    (top-left, top-right, bottom-right, bottom-left).
    """

    hv_count: int
    hv_block: tuple[Cell, ...]
    hv_cells: tuple[tuple[Cell, Cell, Cell, Cell], ...]
    hv_cost: tuple[float, ...]
    edges: dict[tuple[int, int], float]
    adj: tuple[tuple[tuple[int, float], ...], ...]
    cell_to_hv: dict[Cell, int]
    block_to_hv: dict[Cell, int]

    def edge_cost(self, u: int, v: int) -> float:
        return self.edges[(u, v) if u < v else (v, u)]

    def cells_of(self, hvs: Iterable[int]) -> set[Cell]:
        out: set[Cell] = set()
        for u in hvs:
            out.update(self.hv_cells[u])
        return out


def validate_map(grid: GridMap) -> None:
    if grid.width <= 0 or grid.height <= 0:
        raise InstanceError("map dimensions must be positive")
    if grid.width % 2 or grid.height % 2:
        raise InstanceError("dimensions must be even")
    for by in range(0, grid.height, 2):
        for bx in range(0, grid.width, 2):
            kinds = {grid.rows[by + dy][bx + dx] for dx, dy in CORNERS}
            if len(kinds) > 1:
                raise InstanceError(f"block ({bx},{by}) partially blocked")
    free = grid.free_cells()
    if not free:
        raise InstanceError("map has no free cells")
    for c in free:
        if not grid.cost(c) > 0.0:
            raise InstanceError(f"cell ({c[0]},{c[1]}) has non-positive cost")
    if not is_connected(free):
        raise InstanceError("free cells are not 4-connected")


def validate_instance(inst: Instance) -> None:
    validate_map(inst.map)
    seen_ids: set[int] = set()
    owner: dict[Cell, int] = {}
    for z in inst.zones:
        if z.id in seen_ids:
            raise InstanceError(f"duplicate zone id {z.id}")
        seen_ids.add(z.id)
        if not z.cells:
            raise InstanceError(f"zone {z.id} is empty")
        if not z.weight > 0.0:
            raise InstanceError(f"zone {z.id} weight must be positive")
        for c in sorted(z.cells):
            if not inst.map.is_free(c):
                raise InstanceError(f"zone {z.id} cell ({c[0]},{c[1]}) is not a free cell")
            if c in owner:
                raise InstanceError(f"zones {owner[c]} and {z.id} overlap at ({c[0]},{c[1]})")
            owner[c] = z.id
        if not is_connected(z.cells):
            raise InstanceError(f"zone {z.id} disconnected")
    if not inst.robots:
        raise InstanceError("at least one robot is required")
    starts: set[Cell] = set()
    for i, r in enumerate(inst.robots):
        if not inst.map.is_free(r):
            raise InstanceError(f"robot {i} start ({r[0]},{r[1]}) is not a free cell")
        if r in starts:
            raise InstanceError(f"duplicate robot start ({r[0]},{r[1]})")
        starts.add(r)


def make_map(rows: list[str], costs: dict[Cell, float] | None = None) -> GridMap:
    """Build a GridMap from row strings; ``costs`` overrides the default 1.0."""
    height = len(rows)
    width = len(rows[0]) if rows else 0
    grid_costs = []
    for y, row in enumerate(rows):
        line = []
        for x, ch in enumerate(row):
            if ch == FREE:
                line.append(float(costs.get((x, y), 1.0)) if costs else 1.0)
            else:
                line.append(0.0)
        grid_costs.append(tuple(line))
    return GridMap(width, height, tuple(rows), tuple(grid_costs))


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"syntax error: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceError("syntax error: top level must be an object")
    for key in ("width", "height", "rows", "zones", "robots"):
        if key not in doc:
            raise InstanceError(f"missing field {key!r}")
    width, height, rows = doc["width"], doc["height"], doc["rows"]
    if not isinstance(width, int) or not isinstance(height, int):
        raise InstanceError("width and height must be integers")
    if not isinstance(rows, list) or len(rows) != height:
        raise InstanceError(f"expected {height} rows")
    for y, row in enumerate(rows):
        if not isinstance(row, str) or len(row) != width:
            raise InstanceError(f"row {y} must be a string of length {width}")
        bad = set(row) - {FREE, OBSTACLE}
        if bad:
            raise InstanceError(f"row {y} has unknown cell symbol {sorted(bad)[0]!r}")

    costs = None
    if doc.get("cell_costs") is not None:
        raw = doc["cell_costs"]
        free = [(x, y) for y in range(height) for x in range(width) if rows[y][x] == FREE]
        if not isinstance(raw, list) or len(raw) != len(free):
            raise InstanceError(f"cell_costs must list {len(free)} values, one per free cell")
        costs = {}
        for c, v in zip(free, raw):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InstanceError("cell_costs entries must be numbers")
            costs[c] = float(v)
    grid = make_map(rows, costs)

    zones = []
    try:
        for z in doc["zones"]:
            cells = frozenset((int(x), int(y)) for x, y in z["cells"])
            zones.append(Zone(int(z["id"]), cells, float(z["weight"])))
        robots = tuple((int(x), int(y)) for x, y in doc["robots"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"syntax error in zones/robots: {exc}") from None

    cfg = doc.get("config") or {}
    known = set(SolverConfig.__dataclass_fields__)
    unknown = set(cfg) - known
    if unknown:
        raise InstanceError(f"unknown config field {sorted(unknown)[0]!r}")
    config = SolverConfig(**cfg)

    inst = Instance(grid, tuple(zones), robots, config)
    validate_instance(inst)
    return inst


def instance_to_dict(inst: Instance) -> dict:
    grid = inst.map
    doc: dict = {"width": grid.width, "height": grid.height, "rows": list(grid.rows)}
    free = grid.free_cells()
    costs = [grid.cost(c) for c in free]
    if any(v != 1.0 for v in costs):
        doc["cell_costs"] = costs
    doc["zones"] = [
        {"id": z.id, "weight": z.weight, "cells": [[x, y] for x, y in sorted(z.cells, key=lambda c: (c[1], c[0]))]}
        for z in inst.zones
    ]
    doc["robots"] = [[x, y] for x, y in inst.robots]
    c = inst.config
    doc["config"] = {
        "seed": c.seed,
        "ls_iterations": c.ls_iterations,
        "ls_schedule": c.ls_schedule,
        "ls_period_fraction": c.ls_period_fraction,
        "closed_tour": c.closed_tour,
        "weighted_time": c.weighted_time,
    }
    return doc


def serialize_instance(inst: Instance) -> str:
    """One top-level field per line; rows one per line so maps stay readable in diffs."""
    doc = instance_to_dict(inst)
    parts = []
    for key, value in doc.items():
        if key == "rows":
            body = ",\n".join(f"    {json.dumps(r)}" for r in value)
            parts.append(f'  "rows": [\n{body}\n  ]')
        elif key == "zones":
            body = ",\n".join(f"    {json.dumps(z)}" for z in value)
            parts.append(f'  "zones": [\n{body}\n  ]' if value else '  "zones": []')
        else:
            parts.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def build_hypergraph(grid: GridMap) -> HyperGraph:
    blocks = []
    for by in range(grid.height // 2):
        for bx in range(grid.width // 2):
            if grid.rows[2 * by][2 * bx] == FREE:
                blocks.append((bx, by))
    block_to_hv = {b: i for i, b in enumerate(blocks)}
    hv_cells = []
    hv_cost = []
    cell_to_hv = {}
    for i, (bx, by) in enumerate(blocks):
        cells = tuple((2 * bx + dx, 2 * by + dy) for dx, dy in CORNERS)
        hv_cells.append(cells)
        hv_cost.append(sum(grid.cost(c) for c in cells) / 4.0)
        for c in cells:
            cell_to_hv[c] = i
    edges: dict[tuple[int, int], float] = {}
    adj: list[list[tuple[int, float]]] = [[] for _ in blocks]
    for i, (bx, by) in enumerate(blocks):
        for nb in ((bx + 1, by), (bx, by + 1)):
            j = block_to_hv.get(nb)
            if j is None:
                continue
            w = (hv_cost[i] + hv_cost[j]) / 2.0
            edges[(i, j)] = w
            adj[i].append((j, w))
            adj[j].append((i, w))
    return HyperGraph(
        hv_count=len(blocks),
        hv_block=tuple(blocks),
        hv_cells=tuple(hv_cells),
        hv_cost=tuple(hv_cost),
        edges=edges,
        adj=tuple(tuple(sorted(a)) for a in adj),
        cell_to_hv=cell_to_hv,
        block_to_hv=block_to_hv,
    )


def zone_hypervertices(h: HyperGraph, zone: Zone) -> frozenset[int]:
    hvs = frozenset(h.cell_to_hv[c] for c in zone.cells)
    if not _hv_connected(h, hvs):
        raise InstanceError(f"zone {zone.id} fragmented after contraction")
    return hvs


def _hv_connected(h: HyperGraph, hvs: frozenset[int]) -> bool:
    if not hvs:
        return False
    start = min(hvs)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v, _ in h.adj[u]:
            if v in hvs and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(hvs)
