"""Figure rendering for evaluation reports.

Renders the delimited report data as PNG files using the Agg backend, so
the harness works headless. Figures are a convenience view; the CSV/JSON
reports remain the canonical outputs and carry every plotted number.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_per_class(path, class_labels, per_class_by_pipeline):
    """Grouped bars: per-class accuracy (%) for each pipeline."""
    names = list(per_class_by_pipeline)
    k = len(class_labels)
    x = np.arange(k, dtype=np.float64)
    width = 0.8 / max(len(names), 1)
    fig, ax = plt.subplots(figsize=(max(6.0, 1.2 * k), 4.5))
    for i, name in enumerate(names):
        vals = 100.0 * np.asarray(per_class_by_pipeline[name], dtype=np.float64)
        ax.bar(x + (i - (len(names) - 1) / 2) * width, vals, width, label=name)
    ax.set_xticks(x)
    ax.set_xticklabels(class_labels, rotation=30, ha="right")
    ax.set_ylabel("accuracy (%)")
    ax.set_ylim(0, 105)
    ax.set_title("Per-class accuracy by pipeline")
    ax.legend(fontsize="small", ncol=min(len(names), 3))
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def plot_averages(path, names, means, stds=None):
    """Average accuracy (%) per pipeline, with error bars when given."""
    means = 100.0 * np.asarray(means, dtype=np.float64)
    yerr = None if stds is None else 100.0 * np.asarray(stds, dtype=np.float64)
    fig, ax = plt.subplots(figsize=(max(5.0, 1.0 * len(names)), 4.0))
    bars = ax.bar(range(len(names)), means, yerr=yerr, capsize=4 if yerr is not None else 0)
    ax.bar_label(bars, fmt="%.1f", padding=2, fontsize="small")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names)
    ax.set_ylabel("average accuracy (%)")
    ax.set_ylim(0, 110)
    ax.set_title("Average accuracy by pipeline")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def plot_confusion(path, pipeline_name, class_labels, confusion):
    """Heatmap of one pipeline's confusion counts."""
    c = np.asarray(confusion)
    k = len(class_labels)
    fig, ax = plt.subplots(figsize=(max(4.5, 0.75 * k), max(4.0, 0.7 * k)))
    im = ax.imshow(c, cmap="Blues")
    ax.set_xticks(range(k))
    ax.set_yticks(range(k))
    ax.set_xticklabels(class_labels, rotation=45, ha="right")
    ax.set_yticklabels(class_labels)
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    ax.set_title(f"Confusion counts ({pipeline_name})")
    threshold = c.max() / 2 if c.max() > 0 else 0
    for i in range(k):
        for j in range(k):
            color = "white" if c[i, j] > threshold else "black"
            ax.text(j, i, str(int(c[i, j])), ha="center", va="center",
                    color=color, fontsize="small")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_report_figures(out_dir, class_labels, per_class_by_pipeline,
                          averages, stds, confusions):
    """Render the standard figure set into out_dir; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = list(per_class_by_pipeline)
    written = []
    path = out / "accuracy_per_class.png"
    plot_per_class(path, class_labels, per_class_by_pipeline)
    written.append(path)
    path = out / "accuracy_average.png"
    plot_averages(path, names, [averages[n] for n in names],
                  None if stds is None else [stds[n] for n in names])
    written.append(path)
    for name in names:
        path = out / f"confusion_{name}.png"
        plot_confusion(path, name, class_labels, confusions[name])
        written.append(path)
    return written
