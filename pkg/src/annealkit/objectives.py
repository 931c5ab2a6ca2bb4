"""Objective-function contract with single/multi-point dispatch, call counting,
and the bundled benchmark functions."""
from __future__ import annotations

import abc

import numpy as np
import numpy.typing as npt

from .core import Bounds, EvalPoint


class ObjectiveFunction(abc.ABC):
    """Evaluatable function over a bounded box, with an optional known optimum.

    Calling an instance dispatches on shape: a flat vector of length ``dims``
    goes through :meth:`singlepoint`; anything else is reshaped to
    ``(k, dims)`` and evaluated row-wise. The call counter increments once per
    invocation, not per point.
    """

    def __init__(self, bounds: Bounds, global_min: EvalPoint | None = None,
                 name: str = ""):
        self.bounds = bounds
        self.global_min = global_min
        self.name = name or type(self).__name__
        self.calls = 0
        if global_min is not None:
            bounds.check(global_min.pos)

    @property
    def dims(self) -> int:
        return self.bounds.dims

    def __call__(self, pos: npt.NDArray):
        pos = np.asarray(pos, dtype=float)
        self.calls += 1
        if pos.ravel().shape[0] != self.dims:
            return self.multipoint(pos)
        return self.singlepoint(pos.ravel())

    @abc.abstractmethod
    def singlepoint(self, pos: npt.NDArray) -> float:
        """Evaluate at one configuration."""

    def multipoint(self, pos: npt.NDArray) -> npt.NDArray:
        """Row-wise evaluation; same arithmetic path as singlepoint."""
        rows = pos.reshape(-1, self.dims)
        return np.array([self.singlepoint(r) for r in rows])

    def numba_impl(self):
        """An njit-compiled ``pos -> float`` twin, or None if unavailable.

        Used by the fast quencher path; the generic engines never need it.
        """
        return None

    def __repr__(self):
        return f"{type(self).__name__}(dims={self.dims})"


def styblinski_tang(pos: npt.NDArray) -> float:
    """sum(x^4 - 16 x^2 + 5 x) / 2, any dimension."""
    pos = np.asarray(pos, dtype=float)
    x2 = pos * pos
    return float(np.sum(x2 * x2 - 16 * x2 + 5 * pos) / 2)


def rosenbrock_2d(pos: npt.NDArray, a: float = 1.0, b: float = 5.0) -> float:
    """(a - x1)^2 + b (x2 - x1^2)^2; minimum 0 at (a, a^2)."""
    x1, x2 = float(pos[0]), float(pos[1])
    return (a - x1) ** 2 + b * (x2 - x1**2) ** 2


class StyblinskiTang(ObjectiveFunction):
    """Styblinski-Tang in d dimensions on the default box [-5, 5]^d.

    Minimum -39.16599 d at every coordinate equal to -2.903534.
    """

    def __init__(self, dims: int = 2, bounds: Bounds | None = None):
        bounds = bounds or Bounds.cube(dims, -5.0, 5.0)
        super().__init__(
            bounds,
            EvalPoint(np.full(dims, -2.903534), -39.16599 * dims),
            name=f"styblinski_tang_{dims}d",
        )

    def singlepoint(self, pos):
        self.bounds.check(pos)
        return styblinski_tang(pos)

    def numba_impl(self):
        from . import fastpath

        return fastpath.styblinski_tang_jit


class Rosenbrock2d(ObjectiveFunction):
    """Two-dimensional Rosenbrock with configurable (a, b); b defaults to 5."""

    def __init__(self, a: float = 1.0, b: float = 5.0,
                 bounds: Bounds | None = None):
        bounds = bounds or Bounds.cube(2, -5.0, 5.0)
        self.a = a
        self.b = b
        super().__init__(
            bounds,
            EvalPoint(np.array([a, a**2]), 0.0),
            name="rosenbrock_2d",
        )

    def singlepoint(self, pos):
        self.bounds.check(pos)
        return rosenbrock_2d(pos, self.a, self.b)


OBJECTIVES = {
    "styblinski_tang_2d": lambda **kw: StyblinskiTang(2, **kw),
    "styblinski_tang_nd": lambda dims=2, **kw: StyblinskiTang(dims, **kw),
    "rosenbrock_2d": lambda **kw: Rosenbrock2d(**kw),
}


def make_objective(name: str, **params) -> ObjectiveFunction:
    try:
        factory = OBJECTIVES[name]
    except KeyError:
        raise KeyError(
            f"unknown objective {name!r}; known: {sorted(OBJECTIVES)}"
        ) from None
    return factory(**params)
