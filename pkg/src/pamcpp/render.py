"""Static SVG depiction of a map, its zones and (optionally) robot paths."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from .instance import Cell, Instance

CELL = 12
ZONE_COLORS = ("#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854", "#ffd92f", "#e5c494", "#b3b3b3")
ROBOT_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")


def _center(c: Cell) -> str:
    return f"{c[0] * CELL + CELL / 2:g},{c[1] * CELL + CELL / 2:g}"


def render_svg(
    instance: Instance,
    paths: Sequence[Sequence[Cell]] | None = None,
    phase_boundary: Sequence[int] | None = None,
) -> str:
    grid = instance.map
    w, h = grid.width * CELL, grid.height * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white" stroke="none"/>',
        '<g class="obstacles" fill="black">',
    ]
    for y in range(grid.height):
        for x in range(grid.width):
            if not grid.is_free((x, y)):
                out.append(f'<rect x="{x * CELL}" y="{y * CELL}" width="{CELL}" height="{CELL}"/>')
    out.append("</g>")

    for j, zone in enumerate(instance.zones):
        color = ZONE_COLORS[j % len(ZONE_COLORS)]
        out.append(f'<g class="zone" data-zone-id="{zone.id}" data-weight="{zone.weight:g}" fill="{color}" fill-opacity="0.6">')
        for x, y in sorted(zone.cells, key=lambda c: (c[1], c[0])):
            out.append(f'<rect x="{x * CELL}" y="{y * CELL}" width="{CELL}" height="{CELL}"/>')
        lx, ly = min(zone.cells, key=lambda c: (c[1], c[0]))
        label = escape(f"Z{zone.id} w={zone.weight:g}")
        out.append(f'<text x="{lx * CELL + 1}" y="{ly * CELL + CELL - 2}" font-size="{CELL - 3}" fill="black">{label}</text>')
        out.append("</g>")

    if paths is not None:
        bounds = phase_boundary or [len(p) for p in paths]
        for i, path in enumerate(paths):
            color = ROBOT_COLORS[i % len(ROBOT_COLORS)]
            b = max(1, min(bounds[i], len(path)))
            first = " ".join(_center(c) for c in path[:b])
            out.append(
                f'<polyline class="robot-path" data-robot="{i}" points="{first}" fill="none" '
                f'stroke="{color}" stroke-width="2" stroke-linejoin="round"/>'
            )
            if len(path) > b:
                d = "M" + " L".join(_center(c) for c in path[b - 1 :])
                out.append(
                    f'<path class="phase2" data-robot="{i}" d="{d}" fill="none" stroke="{color}" '
                    f'stroke-width="1.5" stroke-dasharray="4 3"/>'
                )
            cx, cy = _center(path[0]).split(",")
            out.append(f'<circle class="start" cx="{cx}" cy="{cy}" r="{CELL / 3:g}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
