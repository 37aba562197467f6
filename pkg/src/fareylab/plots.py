"""Figure rendering for the report paths.

The CSV stays the canonical interface; these figures are written next to
it when plotting is requested.  Rendering is headless (Agg).
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .scaling import GrowthFit, ScalingRow  # noqa: E402


def save_scaling_figure(
    rows: list[ScalingRow], fit: GrowthFit, path: str | Path, *, ylabel: str = "count"
) -> Path:
    """Log-log scatter of the grid with the fitted power law."""
    path = Path(path)
    hs = [r.h for r in rows]
    ys = [r.count for r in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.loglog(hs, ys, "o", color="tab:blue", label="measured")
    fitted = [math.exp(fit.intercept) * h**fit.slope for h in hs]
    ax.loglog(hs, fitted, "-", color="tab:orange",
              label=f"slope {fit.slope:.3f}")
    ax.set_xlabel("H")
    ax.set_ylabel(ylabel)
    ax.legend(frameon=False)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_moment_figure(stats, path: str | Path) -> Path:
    """Per-prime ratio-sum magnitudes with the moment summary."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    if stats.per_prime:
        ps = [p for p, _ in stats.per_prime]
        mags = [m for _, m in stats.per_prime]
        ax.plot(ps, mags, ".", markersize=3, color="tab:blue")
    ax.set_xlabel("prime p")
    ax.set_ylabel("|ratio sum|")
    ax.set_title(
        f"q={stats.q} a={stats.a} moment n={stats.n}: "
        f"total={stats.total:.4g}, ratio={stats.ratio:.4g}",
        fontsize=9,
    )
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
