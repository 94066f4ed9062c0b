"""``pamcpp`` command line: generate, solve, evaluate, bench, render.

Exit codes: 0 ok, 2 bad flags, 3 placement failure, 4 invalid instance or
plan, 5 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from .bench import TrialSpec, aggregate, run_trials
from .evaluate import PlanError, baseline_plan, evaluate, validate_plan
from .generate import PlacementError, generate_instance
from .instance import InstanceError, parse_instance, serialize_instance
from .render import render_svg
from .report import build_report, dumps, plan_from_dict, plan_to_dict
from .solver import solve

EXIT_FLAGS, EXIT_PLACEMENT, EXIT_INVALID, EXIT_INTERNAL = 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 20x20, got {text!r}") from None
    if w <= 0 or h <= 0:
        raise argparse.ArgumentTypeError("dimensions must be positive")
    return w, h


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_instance(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INVALID) from None
    try:
        return parse_instance(text)
    except InstanceError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None


def cmd_generate(args) -> int:
    w, h = args.size
    if w % 2 or h % 2:
        raise CliError("dimensions must be even", EXIT_FLAGS)
    mode = "unit" if args.costs == "unit" else "uniform_0.8_1.2"
    try:
        inst = generate_instance(args.seed, w, h, args.zones, args.robots, mode, obstacle_fraction=args.obstacles)
    except PlacementError as exc:
        raise CliError(str(exc), EXIT_PLACEMENT) from None
    except InstanceError as exc:
        raise CliError(str(exc), EXIT_FLAGS) from None
    _write(args.output, serialize_instance(inst))
    return 0


def _config_from_flags(inst, args):
    cfg = inst.config
    overrides = {}
    for flag, field in (("seed", "seed"), ("ls_iterations", "ls_iterations"), ("schedule", "ls_schedule")):
        value = getattr(args, flag)
        if value is not None:
            overrides[field] = value
    if args.closed_tour:
        overrides["closed_tour"] = True
    if args.weighted_time:
        overrides["weighted_time"] = True
    try:
        return replace(cfg, **overrides)
    except InstanceError as exc:
        raise CliError(str(exc), EXIT_FLAGS) from None


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    inst = replace(inst, config=_config_from_flags(inst, args))
    sol = solve(inst, record_trace=args.trace)
    try:
        validate_plan(inst, sol.plan.paths, inst.config.closed_tour)
    except PlanError as exc:
        raise CliError(f"internal invariant breach: {exc}", EXIT_INTERNAL) from None
    metrics = evaluate(inst, sol.plan)
    base = evaluate(inst, baseline_plan(inst, sol.hypergraph)) if args.baseline else None
    plan_doc = plan_to_dict(inst, sol.plan.paths, sol.plan.phase_boundary, sol.assignment.sequences)
    _write(args.plan, dumps(plan_doc))
    report = build_report(sol, metrics, base, with_trace=args.trace, with_timings=args.timings)
    if args.report:
        _write(args.report, dumps(report))
    if args.plan not in (None, "-") and not args.quiet:
        line = f"weighted_latency={metrics.weighted_latency:g} makespan={metrics.makespan} mmr={metrics.mmr:.3f}"
        if base:
            line += f" | baseline weighted_latency={base.weighted_latency:g} makespan={base.makespan}"
        print(line)
    return 0


def cmd_evaluate(args) -> int:
    inst = _load_instance(args.instance)
    try:
        doc = json.loads(Path(args.plan).read_text(encoding="utf-8"))
        paths, _, _ = plan_from_dict(doc)
        validate_plan(inst, paths, inst.config.closed_tour)
    except (OSError, json.JSONDecodeError, InstanceError, PlanError) as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    _write(args.output, dumps(evaluate(inst, paths).to_dict()))
    return 0


def _parse_sweep(text: str | None) -> tuple[str, list[int]] | None:
    if not text:
        return None
    key, _, values = text.partition("=")
    if key not in ("robots", "zones") or not values:
        raise CliError("sweep must look like robots=2,4,6 or zones=4,8", EXIT_FLAGS)
    try:
        return key, [int(v) for v in values.split(",")]
    except ValueError:
        raise CliError(f"bad sweep values {values!r}", EXIT_FLAGS) from None


def cmd_bench(args) -> int:
    sweep = _parse_sweep(args.sweep)
    base = _load_instance(args.instance) if args.instance else None
    if base is None and (args.size[0] % 2 or args.size[1] % 2):
        raise CliError("dimensions must be even", EXIT_FLAGS)
    default_k = args.robots if args.robots is not None else (base.n_robots if base is not None else 3)
    points = sweep[1] if sweep else [None]
    rows = []
    for value in points:
        k = value if sweep and sweep[0] == "robots" else default_k
        zones = value if sweep and sweep[0] == "zones" else args.zones
        if base is not None and sweep and sweep[0] == "zones":
            raise CliError("a zone sweep needs generated instances, not --instance", EXIT_FLAGS)
        specs = [
            TrialSpec(
                seed=args.seed + t, robots=k, base=base, size=args.size, zones=zones,
                cost_mode="unit" if args.costs == "unit" else "uniform_0.8_1.2",
                ls_iterations=args.ls_iterations,
            )
            for t in range(args.trials)
        ]
        try:
            trials = run_trials(specs, jobs=args.jobs)
        except PlacementError as exc:
            raise CliError(str(exc), EXIT_PLACEMENT) from None
        rows.append(aggregate(trials))

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), delimiter="\t" if args.tsv else ",", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.4f}" if isinstance(v, float) else v) for k, v in row.items()})
    _write(args.output, buf.getvalue())
    if args.plot:
        from .plots import plot_summary, plot_sweep

        if sweep:
            plot_sweep(rows, sweep[0], args.plot)
        else:
            plot_summary(rows[0], args.plot)
    return 0


def cmd_render(args) -> int:
    inst = _load_instance(args.instance)
    paths = bounds = None
    if args.plan:
        try:
            paths, bounds, _ = plan_from_dict(json.loads(Path(args.plan).read_text(encoding="utf-8")))
            validate_plan(inst, paths)
        except (OSError, json.JSONDecodeError, InstanceError, PlanError) as exc:
            raise CliError(str(exc), EXIT_INVALID) from None
    _write(args.output, render_svg(inst, paths, bounds))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pamcpp", description="Priority-aware multi-robot coverage path planning.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=_size, default=(20, 20), help="WIDTHxHEIGHT, both even")
    p.add_argument("--zones", type=int, default=4)
    p.add_argument("--robots", type=int, default=3)
    p.add_argument("--costs", choices=("unit", "uniform"), default="unit")
    p.add_argument("--obstacles", type=float, default=0.1, help="fraction of 2x2 blocks made obstacles")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="plan paths for an instance")
    p.add_argument("instance")
    p.add_argument("--plan", "-o", help="plan output (default stdout)")
    p.add_argument("--report", help="report output")
    p.add_argument("--seed", type=int)
    p.add_argument("--ls-iterations", type=int)
    p.add_argument("--schedule", choices=("cosine", "static"))
    p.add_argument("--closed-tour", action="store_true")
    p.add_argument("--weighted-time", action="store_true")
    p.add_argument("--baseline", action="store_true", help="also run the zone-blind baseline")
    p.add_argument("--trace", action="store_true", help="include the local-search trace in the report")
    p.add_argument("--timings", action="store_true", help="record per-stage wall time in the report")
    p.add_argument("--quiet", "-q", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("evaluate", help="check a plan and compute its metrics")
    p.add_argument("instance")
    p.add_argument("plan")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="seeded trials against the baseline")
    p.add_argument("--instance", help="fixed map; robot starts are resampled per trial")
    p.add_argument("--size", type=_size, default=(20, 20))
    p.add_argument("--zones", type=int, default=4)
    p.add_argument("--robots", type=int, help="robots per trial (default: the instance's count, else 3)")
    p.add_argument("--costs", choices=("unit", "uniform"), default="unit")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="first trial seed; trial t uses seed + t")
    p.add_argument("--ls-iterations", type=int)
    p.add_argument("--sweep", help="robots=2,4,6,8 or zones=2,4,8")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--tsv", action="store_true", help="tab-delimited output")
    p.add_argument("-o", "--output")
    p.add_argument("--plot", help="figure file (format from extension)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw an instance and optional plan as SVG")
    p.add_argument("instance")
    p.add_argument("--plan")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"pamcpp {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
