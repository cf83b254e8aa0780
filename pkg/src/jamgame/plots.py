"""Figure rendering for traces and sweep summaries.

Figures land next to the delimited output as PNG files.  The Agg backend is
forced so rendering works headless, and identical traces render identical
files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .engine import TraceRecord

_DPI = 150


def _finish(fig, path: Path) -> Path:
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def save_trace_figures(
    trace: Sequence[TraceRecord], n: int, out_dir: str | Path, stem: str
) -> list[Path]:
    """Render state, disagreement, belief, and action-count figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ks = [r.k for r in trace]
    paths = []

    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    for i in range(n):
        ax.plot(ks, [r.x[i] for r in trace], label=f"agent {i + 1}")
    ax.set_xlabel("step k")
    ax.set_ylabel("agent state")
    ax.grid(True, alpha=0.3)
    if n <= 8:
        ax.legend(fontsize=8)
    paths.append(_finish(fig, out / f"{stem}_states.png"))

    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    ax.plot(ks, [r.z for r in trace], color="tab:red")
    ax.set_xlabel("step k")
    ax.set_ylabel("disagreement")
    ax.grid(True, alpha=0.3)
    paths.append(_finish(fig, out / f"{stem}_disagreement.png"))

    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    ax.plot(ks, [r.mu_att_low for r in trace], label="attacker: P(defender low cost)")
    ax.plot(ks, [r.mu_def_low for r in trace], label="defender: P(attacker low cost)")
    posterior = [(r.k, r.posterior_def_low) for r in trace if r.posterior_def_low is not None]
    if posterior:
        ax.plot(
            [k for k, _ in posterior],
            [p for _, p in posterior],
            linestyle="--",
            label="defender posterior",
        )
    ax.set_xlabel("step k")
    ax.set_ylabel("belief")
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    paths.append(_finish(fig, out / f"{stem}_beliefs.png"))

    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    ax.step(ks, [len(r.attack) for r in trace], where="mid", label="attacked edges")
    ax.step(ks, [len(r.defend) for r in trace], where="mid", label="defended edges")
    ax.set_xlabel("step k")
    ax.set_ylabel("edge count")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    paths.append(_finish(fig, out / f"{stem}_actions.png"))
    return paths


def save_sweep_figure(
    rows: Sequence[tuple[float, int | None, float]],
    param: str,
    out_path: str | Path,
) -> Path:
    """Final disagreement and consensus step against the swept value."""
    values = [v for v, _, _ in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4), constrained_layout=True)
    ax1.plot(values, [z for _, _, z in rows], marker="o")
    ax1.set_xlabel(param)
    ax1.set_ylabel("final disagreement")
    ax1.grid(True, alpha=0.3)
    reached = [(v, k) for v, k, _ in rows if k is not None]
    if reached:
        ax2.plot([v for v, _ in reached], [k for _, k in reached], marker="o")
    ax2.set_xlabel(param)
    ax2.set_ylabel("consensus step (reached runs)")
    ax2.grid(True, alpha=0.3)
    path = Path(out_path)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path
