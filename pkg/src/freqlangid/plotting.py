"""Figures for evaluation output, written next to the CSV files."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .evaluation import ComparisonReport  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "legend.fontsize": 9,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "freqlangid",
}
METHOD_COLORS = ("#4c72b0", "#dd8452")


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def plot_method_comparison(comparison: ComparisonReport, path: str | Path) -> Path:
    """Grouped bars of Method 1 vs Method 2 accuracy per dataset and bucket."""
    rows = comparison.rows
    labels = [r.dataset if r.bucket == "all" else f"{r.dataset}\n{r.bucket}" for r in rows]
    x = range(len(rows))
    width = 0.38
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4.0, 1.3 * len(rows)), 3.6))
        for j, (name, values) in enumerate(
            (("Method 1", [r.method1 for r in rows]), ("Method 2", [r.method2 for r in rows]))
        ):
            offsets = [i + (j - 0.5) * width for i in x]
            bars = ax.bar(offsets, [100 * v for v in values], width, label=name, color=METHOD_COLORS[j])
            ax.bar_label(bars, fmt="%.0f", padding=2, fontsize=8)
        ax.set_xticks(list(x), labels)
        ax.set_ylim(0, 110)
        ax.set_ylabel("Accuracy (%)")
        ax.set_xlabel("Data set")
        ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.22), ncol=2, frameon=False)
        return _save(fig, path)


def plot_m_sweep(rows: Sequence[tuple[int, float]], path: str | Path) -> Path:
    """Accuracy against the number of top letters compared."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ax.plot([m for m, _ in rows], [100 * a for _, a in rows], marker="o", color=METHOD_COLORS[0])
        ax.set_xlabel("m (top letters compared)")
        ax.set_ylabel("Accuracy (%)")
        ax.set_xticks([m for m, _ in rows])
        ax.grid(axis="y", alpha=0.3)
        return _save(fig, path)


def plot_noise_curve(points: Sequence[tuple[float, float]], op_name: str, path: str | Path) -> Path:
    """Mean change of the top-10 norm against noise rate."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ax.axhline(0, color="0.6", lw=0.8)
        ax.plot([r for r, _ in points], [d for _, d in points], marker="o", color=METHOD_COLORS[1])
        ax.set_xlabel("noise rate")
        ax.set_ylabel("mean change of top-10 norm")
        ax.set_title(op_name)
        return _save(fig, path)
