"""Contour and surface figures from exported trace/grid CSVs."""
from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .io import DECISIONS, load_grid, load_trace  # noqa: E402

# marker styling per decision class
_STYLE = {
    "accept_improve": dict(color="tab:blue", marker="o", label="accepted"),
    "accept_random": dict(color="gold", marker="^",
                          label="accepted (random)"),
    "reject": dict(color="tab:red", marker="x", label="rejected"),
}


class DimensionError(ValueError):
    """Trace positions are not two-dimensional."""


@dataclass
class ContourResult:
    out_path: str
    marker_counts: dict
    levels: int


@dataclass
class SurfaceResult:
    out_path: str
    annotated_min: tuple | None


def plot_contour(trace_path, grid_path, out_path, levels: int = 30) -> ContourResult:
    """Contour of the tabulated objective with trajectory markers.

    Each trace row becomes one marker, colored by its decision class; the
    grid's known global minimum is starred. Returns the per-class marker
    counts actually drawn.
    """
    trace = load_trace(trace_path)
    if trace.dims != 2:
        raise DimensionError(
            f"contour plots need 2-D traces, got {trace.dims}-D")
    grid = load_grid(grid_path)

    fig, ax = plt.subplots(figsize=(7, 6))
    X0, X1, Z = grid.meshes()
    cs = ax.contour(X0, X1, Z, levels=levels, linewidths=0.7, cmap="viridis")
    ax.clabel(cs, inline=True, fontsize=6)

    pos = trace.positions()
    counts = {}
    for decision in DECISIONS:
        mask = (trace.frame["decision"] == decision).to_numpy()
        counts[decision] = int(mask.sum())
        if counts[decision]:
            ax.scatter(pos[mask, 0], pos[mask, 1], s=40, zorder=3,
                       **_STYLE[decision])

    if grid.global_min is not None:
        gx0, gx1, _ = grid.global_min
        ax.scatter([gx0], [gx1], marker="*", s=160, color="black",
                   zorder=4, label="global minimum")
    ax.set_xlabel("$x_0$")
    ax.set_ylabel("$x_1$")
    ax.legend(loc="upper right", fontsize=8)
    fig.savefig(out_path, bbox_inches="tight")
    plt.close(fig)
    return ContourResult(str(out_path), counts, levels)


def plot_surface(grid_path, out_path) -> SurfaceResult:
    """3-D surface of the tabulated objective with the minimum annotated."""
    grid = load_grid(grid_path)
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d")
    X0, X1, Z = grid.meshes()
    ax.plot_surface(X0, X1, Z, cmap="viridis", alpha=0.85,
                    rstride=1, cstride=1, linewidth=0.2, edgecolor="gray")

    annotated = None
    if grid.global_min is not None:
        gx0, gx1, gval = grid.global_min
        ax.scatter([gx0], [gx1], [gval], color="red", s=60, zorder=5)
        ax.text(gx0, gx1, gval,
                f"  min ({gx0:g}, {gx1:g})", color="red", fontsize=8)
        annotated = (gx0, gx1)
    ax.set_xlabel("$x_0$")
    ax.set_ylabel("$x_1$")
    ax.set_zlabel("f")
    fig.savefig(out_path, bbox_inches="tight")
    plt.close(fig)
    return SurfaceResult(str(out_path), annotated)
