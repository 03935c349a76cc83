"""Render benchmark results to an image file.

The x axis is document length in hundreds of words and the y axis is
wall-clock seconds, one curve per variant.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .benchmark import BenchReport, plot_series

__all__ = ["render_runtime_figure"]


def render_runtime_figure(report: BenchReport, path: str | Path) -> Path:
    """Draw the per-variant runtime curves and save them to ``path``.

    The image format follows the file suffix; parent directories are
    created as needed.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    try:
        for variant, points in sorted(plot_series(report).items()):
            xs = [p[0] for p in points]
            ys = [p[1] for p in points]
            ax.plot(xs, ys, marker="o", markersize=3, label=variant)
        ax.set_xlabel("document length (100 words)")
        ax.set_ylabel("runtime (seconds)")
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        fig.savefig(target, dpi=150)
    finally:
        plt.close(fig)
    return target
