"""Render a benchmark CSV into a simple figure next to it.

The CSV is the primary artifact; these plots are a convenience view of the
same rows.  Everything goes through the Agg backend so rendering works on
headless machines.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import FileFormatError
from .fileio import read_results

# What to put on the y-axis for each suite.
_SUITE_AXES = {
    "waste": ("waste", "mean waste (approx - exact) / exact"),
    "subset": ("mean_subset_ratio", "mean |S'| / m"),
    "runtime": ("wall_time_s", "mean planning time (s)"),
}


def plot_results(csv_path, out_path=None) -> Path:
    """Plot y-vs-m for the suite found in the CSV; returns the image path."""
    csv_path = Path(csv_path)
    rows = read_results(csv_path)
    if not rows:
        raise FileFormatError(f"{csv_path}: no data rows to plot")
    suites = {row["suite"] for row in rows}
    if len(suites) != 1:
        raise FileFormatError(f"{csv_path}: mixed suites {sorted(suites)} in one file")
    suite = suites.pop()
    if suite not in _SUITE_AXES:
        raise FileFormatError(f"{csv_path}: unknown suite {suite!r}")
    column, y_label = _SUITE_AXES[suite]

    points = [
        (int(row["m"]), float(row[column])) for row in rows if row[column] != ""
    ]
    if not points:
        raise FileFormatError(f"{csv_path}: column {column!r} is empty")
    points.sort()
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, ys, marker="o")
    ax.set_xlabel("hold size m")
    ax.set_ylabel(y_label)
    first = rows[0]
    ax.set_title(
        f"{suite} suite: {first['kind']}, N={first['n_spaces']}, "
        f"{first['seeds']} seed(s)"
    )
    ax.grid(True, alpha=0.4)
    fig.tight_layout()

    if out_path is None:
        out_path = csv_path.with_suffix(".png")
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
