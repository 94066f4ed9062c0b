"""Seeded random instance generator.

All randomness comes from ``numpy.random.Generator(PCG64(seed))`` so an
instance is a pure function of the arguments.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .instance import (
    CORNERS,
    FREE,
    OBSTACLE,
    Cell,
    Instance,
    InstanceError,
    SolverConfig,
    Zone,
    make_map,
    validate_instance,
)

COST_MODES = ("unit", "uniform_0.8_1.2")


class PlacementError(InstanceError):
    """Random placement could not satisfy the requested constraints."""


def _blocks_connected(free_blocks: set[Cell]) -> bool:
    if not free_blocks:
        return False
    start = min(free_blocks)
    seen = {start}
    queue = deque([start])
    while queue:
        bx, by = queue.popleft()
        for nb in ((bx + 1, by), (bx - 1, by), (bx, by + 1), (bx, by - 1)):
            if nb in free_blocks and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == len(free_blocks)


def _place_obstacles(rng: np.random.Generator, bw: int, bh: int, fraction: float) -> set[Cell]:
    free_blocks = {(bx, by) for by in range(bh) for bx in range(bw)}
    target = int(round(fraction * len(free_blocks)))
    order = sorted(free_blocks)
    rng.shuffle(order)
    placed = 0
    for b in order:
        if placed >= target:
            break
        free_blocks.discard(b)
        if _blocks_connected(free_blocks):
            placed += 1
        else:
            free_blocks.add(b)
    return free_blocks


def _place_zones(rng, rows, width, height, n_zones, max_tries):
    taken: set[Cell] = set()
    zones = []
    side_max = max(2, min(width, height) // 5)
    for j in range(n_zones):
        for _ in range(max_tries):
            zw = int(rng.integers(2, side_max + 1))
            zh = int(rng.integers(2, side_max + 1))
            if zw > width or zh > height:
                continue
            x0 = int(rng.integers(0, width - zw + 1))
            y0 = int(rng.integers(0, height - zh + 1))
            cells = {(x, y) for x in range(x0, x0 + zw) for y in range(y0, y0 + zh)}
            if all(rows[y][x] == FREE for x, y in cells) and not (cells & taken):
                taken |= cells
                zones.append(Zone(j, frozenset(cells), 1.0))
                break
        else:
            raise PlacementError(f"placement failed: could not place zone {j}")
    return zones, taken


def sample_starts(rng: np.random.Generator, candidates: list[Cell], n_robots: int) -> tuple[Cell, ...]:
    if n_robots > len(candidates):
        raise PlacementError("placement failed: not enough free cells for robot starts")
    idx = rng.choice(len(candidates), size=n_robots, replace=False)
    return tuple(candidates[int(i)] for i in idx)


def generate_instance(
    seed: int,
    width: int,
    height: int,
    n_zones: int,
    n_robots: int,
    cost_mode: str = "unit",
    obstacle_fraction: float = 0.1,
    max_tries: int = 200,
) -> Instance:
    if width % 2 or height % 2 or width <= 0 or height <= 0:
        raise InstanceError("dimensions must be even")
    if cost_mode not in COST_MODES:
        raise InstanceError(f"unknown cost mode {cost_mode!r}")
    if n_robots < 1 or n_zones < 0:
        raise InstanceError("need at least one robot and a non-negative zone count")
    rng = np.random.Generator(np.random.PCG64(seed))

    free_blocks = _place_obstacles(rng, width // 2, height // 2, obstacle_fraction)
    grid_rows = [[OBSTACLE] * width for _ in range(height)]
    for bx, by in free_blocks:
        for dx, dy in CORNERS:
            grid_rows[2 * by + dy][2 * bx + dx] = FREE
    rows = ["".join(r) for r in grid_rows]

    zones, taken = _place_zones(rng, rows, width, height, n_zones, max_tries)

    free = [(x, y) for y in range(height) for x in range(width) if rows[y][x] == FREE]
    costs = None
    if cost_mode == "uniform_0.8_1.2":
        draws = rng.uniform(0.8, 1.2, size=len(free))
        costs = {c: float(v) for c, v in zip(free, draws)}

    robots = sample_starts(rng, [c for c in free if c not in taken], n_robots)
    inst = Instance(make_map(rows, costs), tuple(zones), robots, SolverConfig(seed=seed))
    validate_instance(inst)
    return inst


def with_random_robots(inst: Instance, n_robots: int, seed: int) -> Instance:
    """Same map and zones, fresh robot starts on free non-zone cells."""
    rng = np.random.Generator(np.random.PCG64(seed))
    taken = set().union(*(z.cells for z in inst.zones)) if inst.zones else set()
    candidates = [c for c in inst.map.free_cells() if c not in taken]
    robots = sample_starts(rng, candidates, n_robots)
    return Instance(inst.map, inst.zones, robots, inst.config)
