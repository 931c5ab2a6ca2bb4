"""Offline figure generation from anneal-kit CSV exports."""
from .io import (
    DECISIONS,
    GridData,
    GridFormatError,
    TraceFormatError,
    TraceFrame,
    load_grid,
    load_trace,
)
from .plots import (
    ContourResult,
    DimensionError,
    SurfaceResult,
    plot_contour,
    plot_surface,
)

__version__ = "0.1.0"

__all__ = [
    "DECISIONS",
    "GridData",
    "GridFormatError",
    "TraceFormatError",
    "TraceFrame",
    "load_grid",
    "load_trace",
    "ContourResult",
    "DimensionError",
    "SurfaceResult",
    "plot_contour",
    "plot_surface",
]
