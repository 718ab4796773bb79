"""Figures for simulation sweeps."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_simulation(reports, path, title: str | None = None) -> None:
    """Empirical decode-failure rate per t against the probability bound.

    Sweeps with no failures are drawn at the 3/trials level (a 95% upper
    confidence limit) with hollow markers, so they stay visible on a log axis.
    """
    fig, ax = plt.subplots(figsize=(6, 4))
    by_strategy = {}
    for r in reports:
        by_strategy.setdefault(r.strategy, []).append(r)
    for strategy, rs in by_strategy.items():
        rs = sorted(rs, key=lambda r: r.t)
        hit = [(r.t, (r.failures_decode + r.miscorrections) / r.trials) for r in rs
               if r.failures_decode + r.miscorrections]
        zero = [(r.t, 3 / r.trials) for r in rs if not r.failures_decode + r.miscorrections]
        line = None
        if hit:
            line, = ax.plot(*zip(*hit), "o-", label=f"{strategy} (observed)")
        if zero:
            ax.plot(*zip(*zero), "v", mfc="none", color=line.get_color() if line else None,
                    label=f"{strategy} (no failures, 3/N)")
    bounds = sorted({(r.t, r.bound_float) for r in reports if r.bound_float is not None})
    if bounds:
        ax.plot(*zip(*bounds), "k--", label="bound")
    ax.set_yscale("log")
    ax.set_xlabel("number of column errors t")
    ax.set_ylabel("failure rate")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
