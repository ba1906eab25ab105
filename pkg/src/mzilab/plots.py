"""Figure rendering for scan results.

Each CLI report path can drop a PNG next to its delimited output; these
helpers do the drawing.  The Agg backend is forced so rendering works in
headless environments, and figures carry no timestamps so reruns are
reproducible.
"""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

_SAVE_KWARGS = {"dpi": 150, "metadata": {"Software": "mzilab"}}


def _axis_layout(result):
    """Split a two-parameter scan into its axis vectors and value surface."""
    first = np.unique(result.rows[:, 0])
    second = np.unique(result.rows[:, 1])
    values = result.rows[:, result.columns.index(_value_column(result))]
    return first, second, values.reshape(len(first), len(second))


def _value_column(result):
    for name in ("h", "value", "gap"):
        if name in result.columns:
            return name
    return result.columns[-1]


def render_scan(result, path):
    """Render a ScanResult to ``path``: line plot, heatmap, or single bar.

    Scans with one varying parameter become bound-vs-value line plots;
    two varying parameters become a heatmap with the classical bound drawn
    as a contour; a single-point result becomes a two-bar comparison.
    """
    value_name = _value_column(result)
    bound = result.summary.get("bound")
    n_axes = sum(
        1 for k in range(min(2, len(result.columns) - 2)) if np.unique(result.rows[:, k]).size > 1
    )
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    if result.rows.shape[0] == 1:
        value = result.rows[0, result.columns.index(value_name)]
        bars = [value] if bound is None else [value, bound]
        labels = [value_name] if bound is None else [value_name, "bound"]
        ax.bar(labels, bars, color=["#1f77b4", "#999999"][: len(bars)])
        ax.set_ylabel(value_name)
    elif n_axes <= 1:
        varying = 0 if np.unique(result.rows[:, 0]).size > 1 else 1
        x = result.rows[:, varying]
        y = result.rows[:, result.columns.index(value_name)]
        ax.plot(x, y, lw=1.2)
        if bound is not None:
            ax.axhline(bound, color="k", ls="--", lw=0.8, label=f"bound {bound:g}")
            ax.legend(loc="best", fontsize=8)
        ax.set_xlabel(result.columns[varying])
        ax.set_ylabel(value_name)
    else:
        first, second, surface = _axis_layout(result)
        mesh = ax.pcolormesh(second, first, surface, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=value_name)
        if bound is not None and surface.min() < bound < surface.max():
            ax.contour(second, first, surface, levels=[bound], colors="w", linewidths=0.8)
        ax.set_xlabel(result.columns[1])
        ax.set_ylabel(result.columns[0])
    title = result.summary.get("preset")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def render_advantage(table, path):
    """Efficiency and noncontextual cap vs overlap, with the gap shaded."""
    r, eta, eta_nc = table[:, 0], table[:, 1], table[:, 2]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.plot(r, eta, label="eta (quantum)", lw=1.4)
    ax.plot(r, eta_nc, label="eta_NC (cap)", lw=1.4, ls="--")
    ax.fill_between(r, eta_nc, eta, where=eta > eta_nc, alpha=0.25, label="advantage")
    ax.set_xlabel("r")
    ax.set_ylabel("efficiency")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
