"""Plan and report documents written by the command line tool."""

from __future__ import annotations

import json
from importlib import resources
from typing import Sequence

from .evaluate import Metrics
from .instance import Cell, Instance, InstanceError
from .solver import STAGES, Solution


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def plan_to_dict(instance: Instance, paths, phase_boundary, sequences) -> dict:
    ids = [z.id for z in instance.zones]
    return {
        "robots": [
            {"path": [[x, y] for x, y in p], "phase_boundary": int(b)}
            for p, b in zip(paths, phase_boundary)
        ],
        "assignment": [[ids[z] for z in seq] for seq in sequences],
    }


def plan_from_dict(doc: dict) -> tuple[list[list[Cell]], list[int], list[list[int]]]:
    try:
        robots = doc["robots"]
        paths = [[(int(x), int(y)) for x, y in r["path"]] for r in robots]
        bounds = [int(r.get("phase_boundary", len(p))) for r, p in zip(robots, paths)]
        assignment = [list(map(int, seq)) for seq in doc.get("assignment", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed plan document: {exc}") from None
    return paths, bounds, assignment


def build_report(
    sol: Solution,
    metrics: Metrics,
    baseline: Metrics | None = None,
    with_trace: bool = False,
    with_timings: bool = False,
) -> dict:
    """Assemble the solve report.

    Wall-clock timings are only filled in on request so that default
    reports stay byte-identical between runs.
    """
    ids = [z.id for z in sol.instance.zones]
    doc = {
        "instance_digest": sol.plan.instance_digest,
        "assignment": [[ids[z] for z in seq] for seq in sol.assignment.sequences],
        "surrogate": {"greedy": sol.greedy.surrogate_cost, "final": sol.assignment.surrogate_cost},
        "metrics": metrics.to_dict(),
        "metrics_baseline": baseline.to_dict() if baseline else None,
        "ls_trace": [
            {"iteration": r.iteration, "operator": r.operator, "accepted": r.accepted, "surrogate": r.surrogate}
            for r in sol.ls_trace
        ] if with_trace else None,
        "runtime_breakdown": {s: (sol.timings[s] if with_timings else None) for s in STAGES},
    }
    return doc


def load_schema() -> dict:
    text = resources.files("pamcpp").joinpath("schemas/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def metrics_from_dict(doc: dict) -> Metrics:
    return Metrics(tuple(doc["zone_times"]), float(doc["weighted_latency"]), int(doc["makespan"]), float(doc["mmr"]))


def summarize(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1) if n > 1 else 0.0
    return mean, var ** 0.5
