"""Shared value types: box bounds, evaluated points, run limits, step records,
and seeded random-stream helpers."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt


class OutOfBounds(ValueError):
    """A position lies outside the slack-extended box."""

    def __init__(self, pos, low, high, slack):
        self.pos = np.asarray(pos)
        self.low = np.asarray(low)
        self.high = np.asarray(high)
        self.slack = slack
        super().__init__(f"{pos} is not within {slack} of {low} and {high}")


class NeighborhoodExhausted(RuntimeError):
    """Candidate construction failed to produce an in-bounds point."""


class DegenerateChains(ValueError):
    """Within-chain variance is zero; the scale-reduction statistic is undefined."""


@dataclass(frozen=True)
class Bounds:
    """Box constraints with a slack tolerance on membership checks."""

    low: npt.NDArray
    high: npt.NDArray
    slack: float = 1e-6

    def __post_init__(self):
        low = np.atleast_1d(np.asarray(self.low, dtype=float))
        high = np.atleast_1d(np.asarray(self.high, dtype=float))
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "high", high)
        if low.shape != high.shape or low.ndim != 1:
            raise ValueError("low and high must be 1-D arrays of equal length")
        if not np.all(low < high):
            raise ValueError("need low[i] < high[i] for every dimension")
        if self.slack < 0:
            raise ValueError("slack must be non-negative")

    @property
    def dims(self) -> int:
        return self.low.shape[0]

    @classmethod
    def cube(cls, dims: int, low: float, high: float, slack: float = 1e-6) -> "Bounds":
        return cls(np.full(dims, float(low)), np.full(dims, float(high)), slack)

    def check(self, pos: npt.NDArray) -> None:
        """Raise OutOfBounds unless pos is inside the slack-extended box."""
        pos = np.asarray(pos, dtype=float)
        if pos.shape[0] != self.dims:
            raise ValueError(f"expected {self.dims} coordinates, got {pos.shape[0]}")
        if not (
            np.all(pos > self.low - self.slack)
            and np.all(pos < self.high + self.slack)
        ):
            raise OutOfBounds(pos, self.low, self.high, self.slack)

    def contains(self, pos: npt.NDArray) -> bool:
        try:
            self.check(pos)
        except OutOfBounds:
            return False
        return True

    def sample(self, rng: np.random.Generator) -> npt.NDArray:
        """A point uniform over [low, high)."""
        return rng.uniform(self.low, self.high)

    def clip(self, pos: npt.NDArray) -> npt.NDArray:
        return np.clip(np.asarray(pos, dtype=float), self.low, self.high)


@dataclass(frozen=True)
class EvalPoint:
    """A configuration paired with its objective value."""

    pos: npt.NDArray
    val: float

    def __post_init__(self):
        object.__setattr__(self, "pos", np.asarray(self.pos, dtype=float))
        object.__setattr__(self, "val", float(self.val))


@dataclass(frozen=True)
class RunLimits:
    max_epochs: int = int(1e6)
    steps_per_epoch: int = int(1e3)

    def __post_init__(self):
        if self.max_epochs < 1 or self.steps_per_epoch < 1:
            raise ValueError("run limits must be strictly positive")


class Decision(str, Enum):
    ACCEPT_IMPROVE = "accept_improve"
    ACCEPT_RANDOM = "accept_random"
    REJECT = "reject"


@dataclass(frozen=True)
class StepRecord:
    epoch: int
    step: int
    temperature: float
    candidate: EvalPoint
    decision: Decision
    current_val: float
    best_val: float


def make_rng(seed: int) -> np.random.Generator:
    """A seedable generator; equal seeds give identical draw sequences."""
    return np.random.default_rng(seed)


def split_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """Independent streams derived from (seed, index), for parallel runs."""
    children = np.random.SeedSequence(seed).spawn(n)
    return [np.random.default_rng(c) for c in children]
