from pamcpp.instance import Instance, SolverConfig, Zone, make_map


def open_map(width, height):
    return make_map(["." * width] * height)


def zone(zid, cells, weight=1.0):
    return Zone(zid, frozenset(cells), weight)


def rect(x0, y0, w, h):
    return {(x, y) for x in range(x0, x0 + w) for y in range(y0, y0 + h)}


def instance(rows_or_map, zones=(), robots=((0, 0),), **config):
    grid = make_map(rows_or_map) if isinstance(rows_or_map, list) else rows_or_map
    return Instance(grid, tuple(zones), tuple(robots), SolverConfig(**config))
