"""Seeded solver-vs-baseline trials and their aggregation."""

from __future__ import annotations

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from .evaluate import baseline_plan, evaluate
from .generate import generate_instance, with_random_robots
from .instance import Instance
from .report import summarize
from .solver import solve

METRICS = ("latency", "makespan", "mmr")


@dataclass(frozen=True)
class TrialSpec:
    seed: int
    robots: int
    base: Instance | None = None  # fixed map: only robot starts vary with the seed
    size: tuple[int, int] = (20, 20)
    zones: int = 4
    cost_mode: str = "unit"
    ls_iterations: int | None = None


def trial_instance(spec: TrialSpec) -> Instance:
    if spec.base is not None:
        inst = with_random_robots(spec.base, spec.robots, spec.seed)
    else:
        inst = generate_instance(spec.seed, spec.size[0], spec.size[1], spec.zones, spec.robots, spec.cost_mode)
    cfg = replace(inst.config, seed=spec.seed)
    if spec.ls_iterations is not None:
        cfg = replace(cfg, ls_iterations=spec.ls_iterations)
    return replace(inst, config=cfg)


def run_trial(spec: TrialSpec) -> dict:
    inst = trial_instance(spec)
    sol = solve(inst)
    ours = evaluate(inst, sol.plan)
    base = evaluate(inst, baseline_plan(inst, sol.hypergraph))
    return {
        "seed": spec.seed,
        "robots": spec.robots,
        "zones": len(inst.zones),
        "latency_solver": ours.weighted_latency,
        "latency_baseline": base.weighted_latency,
        "makespan_solver": ours.makespan,
        "makespan_baseline": base.makespan,
        "mmr_solver": ours.mmr,
        "mmr_baseline": base.mmr,
    }


def run_trials(specs: Sequence[TrialSpec], jobs: int = 1) -> list[dict]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_trial, specs))
    return [run_trial(s) for s in specs]


def aggregate(trials: Sequence[dict]) -> dict:
    """Mean and std per metric, plus per-trial improvement of solver over baseline in percent."""
    row = {"robots": trials[0]["robots"], "zones": trials[0]["zones"], "trials": len(trials)}
    for m in METRICS:
        for who in ("solver", "baseline"):
            row[f"{m}_{who}_mean"], row[f"{m}_{who}_std"] = summarize([t[f"{m}_{who}"] for t in trials])
        row[f"{m}_solver_median"] = statistics.median(t[f"{m}_solver"] for t in trials)
        gains = [
            100.0 * (t[f"{m}_baseline"] - t[f"{m}_solver"]) / t[f"{m}_baseline"]
            for t in trials
            if t[f"{m}_baseline"] != 0
        ]
        row[f"{m}_improvement_pct_mean"], row[f"{m}_improvement_pct_std"] = summarize(gains) if gains else (0.0, 0.0)
    return row
