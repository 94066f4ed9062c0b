"""Matplotlib figures for benchmark reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams.update({
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "svg.hashsalt": "pamcpp",
})


def plot_sweep(rows: Sequence[dict], key: str, path: str | Path) -> None:
    """Latency and makespan against the swept parameter.

    For a robot sweep an ideal-scaling reference (first point scaled by
    k0 / k) is drawn alongside the solver curve.
    """
    xs = [r[key] for r in rows]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(4.2, 5.0), sharex=True)
    for who, style in (("solver", "o-"), ("baseline", "s--")):
        ax1.errorbar(xs, [r[f"latency_{who}_mean"] for r in rows], yerr=[r[f"latency_{who}_std"] for r in rows],
                     fmt=style, capsize=3, label=who)
        ax2.errorbar(xs, [r[f"makespan_{who}_mean"] for r in rows], yerr=[r[f"makespan_{who}_std"] for r in rows],
                     fmt=style, capsize=3, label=who)
    if key == "robots" and rows:
        k0, y0 = xs[0], rows[0]["latency_solver_mean"]
        ax1.plot(xs, [y0 * k0 / k for k in xs], ":", color="gray", label="ideal scaling")
    ax1.set_ylabel("weighted latency")
    ax2.set_ylabel("makespan")
    ax2.set_xlabel(key)
    ax1.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_summary(row: dict, path: str | Path) -> None:
    metrics = ("latency", "makespan", "mmr")
    fig, axes = plt.subplots(1, 3, figsize=(7.0, 2.6))
    for ax, m in zip(axes, metrics):
        means = [row[f"{m}_solver_mean"], row[f"{m}_baseline_mean"]]
        stds = [row[f"{m}_solver_std"], row[f"{m}_baseline_std"]]
        ax.bar(["solver", "baseline"], means, yerr=stds, capsize=3, color=["#1f77b4", "#bbbbbb"])
        ax.set_title(m)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_ls_trace(traces: dict[str, Sequence[float]], path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(4.2, 2.8))
    for label, values in traces.items():
        ax.plot(range(len(values)), values, label=label)
    ax.set_xlabel("iteration")
    ax.set_ylabel("surrogate latency")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
