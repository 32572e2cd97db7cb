"""Proof-by-picture rendering of certificates.

One horizontal row per variable over the [0, 1) axis; rectangle blocks are
colored by the support point their cell belongs to (a fixed palette keyed
by support-point index) and labeled with their height when it is not 1.
Polyhedral certificates get a second panel for the conic part over ℝ₊.
Output is SVG and byte-deterministic: fixed hash salt, no date metadata.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .rational import fmt_rat
from .rectangles import profile

PALETTE = [
    "#e6550d",
    "#3182bd",
    "#31a354",
    "#756bb1",
    "#de9ed6",
    "#fdae6b",
    "#9ecae1",
    "#a1d99b",
    "#bcbddc",
    "#c7e9c0",
    "#e7ba52",
    "#ad494a",
    "#8c6d31",
    "#6baed6",
    "#74c476",
    "#9c9ede",
    "#d6616b",
    "#ce6dbd",
    "#b5cf6b",
    "#e7969c",
]

matplotlib.rcParams["svg.hashsalt"] = "hullcert"


def _support_colors(prof):
    """Map each cell to the palette index of its support point (grouped by
    identical height vector, in order of first appearance)."""
    order = {}
    colors = []
    for (_a, b), vec in prof:
        if b is None:
            colors.append(None)
            continue
        if vec not in order:
            order[vec] = len(order)
        colors.append(order[vec] % len(PALETTE))
    return colors


def _draw_panel(ax, names, sets, base_label, xmax):
    prof = profile(sets)
    colors = _support_colors(prof)
    rows = len(names)
    for ci, ((a, b), vec) in enumerate(prof):
        if b is None:
            continue
        for vi in range(rows):
            height = vec[vi]
            if height == 0:
                continue
            y = rows - 1 - vi
            ax.add_patch(
                Rectangle(
                    (float(a), y + 0.15),
                    float(b - a),
                    0.7,
                    facecolor=PALETTE[colors[ci]],
                    edgecolor="black",
                    linewidth=0.8,
                )
            )
            if height != 1:
                ax.text(
                    float(a + (b - a) / 2),
                    y + 0.5,
                    fmt_rat(height),
                    ha="center",
                    va="center",
                    fontsize=8,
                )
    ax.set_xlim(-0.02 * xmax, xmax * 1.02)
    ax.set_ylim(-0.6, rows)
    ax.set_yticks([rows - 1 - i + 0.5 for i in range(rows)])
    ax.set_yticklabels(names, fontsize=9)
    step = xmax / 5
    ax.set_xticks([step * k for k in range(6)])
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.spines["left"].set_visible(False)
    ax.tick_params(left=False)
    ax.set_xlabel(base_label, fontsize=9)


def render_certificate(cert, path, title=None):
    """Write the certificate's proof-by-picture as a deterministic SVG."""
    names = list(cert.system.variables)
    convex = [cert.convex[v] for v in names]
    panels = 1
    conic_xmax = None
    if cert.conic is not None:
        panels = 2
        ends = [r.b for v in names for r in cert.conic[v].rects]
        conic_xmax = float(max(ends)) if ends else 1.0
    height = 0.42 * len(names) + 0.9
    fig, axes = plt.subplots(
        panels,
        1,
        figsize=(6.4, height * panels),
        squeeze=False,
    )
    _draw_panel(axes[0][0], names, convex, "convex part over [0, 1)", 1.0)
    if cert.conic is not None:
        conic = [cert.conic[v] for v in names]
        _draw_panel(
            axes[1][0], names, conic, "conic part over [0, ∞)", conic_xmax
        )
    if title:
        axes[0][0].set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
