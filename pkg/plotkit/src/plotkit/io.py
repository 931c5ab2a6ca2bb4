"""Readers for the two CSV formats exported by the anneal-kit CLI.

Trace CSVs carry per-step optimizer history; grid CSVs tabulate a 2-D
objective on a regular mesh plus a `# global_min:` metadata line. This
module only parses — objective values are never recomputed here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd

DECISIONS = ("accept_improve", "accept_random", "reject")

_FIXED_COLUMNS = ["run_id", "epoch", "step", "temperature"]
_TAIL_COLUMNS = ["cand_val", "decision", "cur_val", "best_val"]


class TraceFormatError(ValueError):
    """The file does not match the trace CSV schema."""


class GridFormatError(ValueError):
    """The file does not match the grid CSV schema."""


@dataclass
class TraceFrame:
    """A validated trace table with its spatial dimensionality."""

    frame: pd.DataFrame
    dims: int

    def positions(self) -> np.ndarray:
        cols = [f"cand_pos_{i}" for i in range(self.dims)]
        return self.frame[cols].to_numpy(dtype=float)

    def decision_counts(self) -> dict:
        counts = self.frame["decision"].value_counts()
        return {d: int(counts.get(d, 0)) for d in DECISIONS}


def load_trace(path) -> TraceFrame:
    df = pd.read_csv(path)
    cols = list(df.columns)
    pos_cols = [c for c in cols if c.startswith("cand_pos_")]
    dims = len(pos_cols)
    expected = (_FIXED_COLUMNS
                + [f"cand_pos_{i}" for i in range(dims)]
                + _TAIL_COLUMNS)
    if cols != expected or dims == 0:
        raise TraceFormatError(f"{path}: unexpected columns {cols}")
    bad = set(df["decision"]) - set(DECISIONS)
    if bad:
        raise TraceFormatError(f"{path}: unknown decisions {sorted(bad)}")
    return TraceFrame(df, dims)


@dataclass
class GridData:
    """A regular 2-D function tabulation.

    x0/x1 are the sorted axis values; vals[i, j] is the objective at
    (x0[i], x1[j]). global_min is (x0, x1, val) from the metadata line,
    or None when the exporter had no known minimum.
    """

    x0: np.ndarray
    x1: np.ndarray
    vals: np.ndarray
    global_min: tuple | None

    def meshes(self):
        """Matplotlib-style meshgrid (X0, X1, Z) with indexing='ij'."""
        X0, X1 = np.meshgrid(self.x0, self.x1, indexing="ij")
        return X0, X1, self.vals


def load_grid(path) -> GridData:
    global_min = None
    with open(path) as fh:
        first = fh.readline()
        if first.startswith("# global_min:"):
            parts = first.split(":", 1)[1].split(",")
            if len(parts) != 3:
                raise GridFormatError(f"{path}: malformed global_min line")
            global_min = tuple(float(p) for p in parts)
            skip = 1
        else:
            skip = 0
    df = pd.read_csv(path, skiprows=skip)
    if list(df.columns) != ["x0", "x1", "val"]:
        raise GridFormatError(f"{path}: unexpected columns {list(df.columns)}")
    x0 = np.unique(df["x0"].to_numpy())
    x1 = np.unique(df["x1"].to_numpy())
    if len(df) != len(x0) * len(x1):
        raise GridFormatError(f"{path}: not a complete regular grid")
    pivot = df.pivot(index="x0", columns="x1", values="val")
    vals = pivot.reindex(index=x0, columns=x1).to_numpy(dtype=float)
    if np.isnan(vals).any():
        raise GridFormatError(f"{path}: grid has holes")
    return GridData(x0, x1, vals, global_min)
