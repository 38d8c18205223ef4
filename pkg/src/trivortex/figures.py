"""Matplotlib figure rendering for rasters, overlays and diagrams."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .lattice import bounding_rectangle


def _extent(grid):
    half = grid.step / 2.0
    return (
        grid.origin_x - half,
        grid.origin_x + grid.step * (grid.shape[1] - 1) + half,
        grid.origin_y - half,
        grid.origin_y + grid.step * (grid.shape[0] - 1) + half,
    )


def save_field_figure(grid, path, kind="amplitude", predictions=None, detections=None, arr=None):
    """Grayscale raster with optional prediction/detection overlays.

    Predictions are drawn as open circles, detections as crosses, so a
    correct match shows each cross centred in a circle.
    """
    if kind == "amplitude":
        img = grid.amplitude()
        label = "amplitude"
    elif kind == "phase":
        img = grid.phase()
        label = "phase (rad)"
    elif kind == "phase_bg_subtracted":
        from .wavefield import subtract_background

        if arr is None:
            raise ValueError("background subtraction needs the arrangement")
        img = subtract_background(grid, arr).phase()
        label = "phase, carrier removed (rad)"
    else:
        raise ValueError("unknown figure kind %r" % (kind,))
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    im = ax.imshow(img, origin="lower", extent=_extent(grid), cmap="gray")
    fig.colorbar(im, ax=ax, label=label)
    if predictions:
        ax.plot(
            [p.x for p in predictions],
            [p.y for p in predictions],
            linestyle="none",
            marker="o",
            markerfacecolor="none",
            markeredgecolor="#7fff00",
            markersize=9,
            label="predicted",
        )
    if detections:
        ax.plot(
            [d.position[0] for d in detections],
            [d.position[1] for d in detections],
            linestyle="none",
            marker="+",
            color="#ff5050",
            markersize=7,
            label="detected",
        )
    if predictions or detections:
        ax.legend(loc="upper right", fontsize=8)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_ellipse_figure(arr, points, path):
    """Admissibility ellipse, its envelope rectangle and the integer lattice."""
    from .lattice import admissibility_margin

    rect = bounding_rectangle(arr)
    wm = rect.width_m / 2.0
    wn = rect.width_n / 2.0
    ms = np.linspace(rect.center_m - wm - 1, rect.center_m + wm + 1, 400)
    ns = np.linspace(rect.center_n - wn - 1, rect.center_n + wn + 1, 400)
    gm, gn = np.meshgrid(ms, ns)
    depth = admissibility_margin(arr, gm, gn)
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.contour(gm, gn, depth, levels=[0.0], colors="k")
    ax.add_patch(
        plt.Rectangle(
            (rect.center_m - wm, rect.center_n - wn),
            rect.width_m,
            rect.width_n,
            fill=False,
            linestyle="--",
            edgecolor="0.5",
        )
    )
    if points:
        ax.plot(
            [p[0] for p in points],
            [p[1] for p in points],
            linestyle="none",
            marker="o",
            color="#2060c0",
            markersize=4,
        )
    ax.set_xlabel("m")
    ax.set_ylabel("n")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_trajectories_figure(curves, intersections, path, half_width):
    """Phase-variation curves in the plane with their crossings marked.

    curves is a list of (label, xs, ys); intersections a list of
    (x, y, physical) triples.
    """
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    for label, xs, ys in curves:
        style = "-" if label.startswith("m") else "--"
        ax.plot(xs, ys, style, linewidth=0.9, label=label)
    phys = [(x, y) for x, y, ok in intersections if ok]
    ghost = [(x, y) for x, y, ok in intersections if not ok]
    if phys:
        ax.plot(
            [p[0] for p in phys],
            [p[1] for p in phys],
            linestyle="none",
            marker="o",
            markerfacecolor="none",
            markeredgecolor="k",
            markersize=8,
        )
    if ghost:
        ax.plot(
            [p[0] for p in ghost],
            [p[1] for p in ghost],
            linestyle="none",
            marker="x",
            color="0.6",
            markersize=6,
        )
    ax.set_xlim(-half_width, half_width)
    ax.set_ylim(-half_width, half_width)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    if len(curves) <= 12:
        ax.legend(fontsize=7, loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sweep_figure(values, counts, estimates, path, xlabel):
    """Enumerated pair count against a swept parameter, with the area estimate."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(values, counts, "o-", markersize=3, label="enumerated pairs")
    ax.plot(values, [e / 2.0 for e in estimates], "--", label="area estimate / 2")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("admissible index pairs")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
