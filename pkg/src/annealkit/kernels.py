"""Interchangeable strategy kernels: move draws, neighborhood constructors,
visiting distributions, and acceptance criteria."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .core import Bounds, NeighborhoodExhausted

MAX_NEIGHBOR_RETRIES = 1000

# Shape parameter within this distance of 1 selects the exponential branch.
_QA_ONE_EPS = 1e-9


@dataclass(frozen=True)
class AcceptDecision:
    accepted: bool
    probability: float


@dataclass(frozen=True)
class GsaParams:
    """Shape parameters of the generalized visiting/acceptance pair."""

    q_v: float
    q_a: float
    dims: int = 1

    def __post_init__(self):
        _check_qv(self.q_v)
        if self.dims < 1:
            raise ValueError("dims must be >= 1")


def _check_qv(q_v: float, strict: bool = False):
    lo_ok = q_v > 1.0 if strict else q_v >= 1.0
    if not (lo_ok and q_v < 3.0):
        span = "(1, 3)" if strict else "[1, 3)"
        raise ValueError(f"q_v must lie in {span}, got {q_v}")


# ---------------------------------------------------------------------------
# Move draws and visiting distributions
# ---------------------------------------------------------------------------

def boltzmann_move(rng: np.random.Generator) -> float:
    """One standard-normal step length."""
    return rng.standard_normal()


def cauchy_visit(t_gen: float, dims: int, rng: np.random.Generator) -> npt.NDArray:
    """Independent Cauchy draws with location 0 and scale t_gen per coordinate."""
    if t_gen <= 0:
        raise ValueError("t_gen must be positive")
    return t_gen * rng.standard_cauchy(dims)


def gsa_visit_scales(t_qv: float, q_v: float, dims: int) -> tuple[float, float]:
    """(degrees of freedom, per-coordinate scale) of the Student-t form of the
    distorted Cauchy-Lorentz visiting density.

    The density ~ [1 + (qv-1) |dx|^2 / T^(2/(3-qv))]^-(1/(qv-1) + (D-1)/2) is a
    multivariate Student-t with nu = (3-qv)/(qv-1) degrees of freedom and scale
    sigma = T^(1/(3-qv)) / sqrt((qv-1) nu); at qv=2, D=1 this is exactly the
    Cauchy with scale T.
    """
    nu = (3.0 - q_v) / (q_v - 1.0)
    sigma = t_qv ** (1.0 / (3.0 - q_v)) / math.sqrt((q_v - 1.0) * nu)
    return nu, sigma


def gsa_visit(t_qv: float, q_v: float, dims: int,
              rng: np.random.Generator) -> npt.NDArray:
    """A displacement from the distorted Cauchy-Lorentz visiting distribution,
    sampled exactly via its multivariate Student-t representation."""
    _check_qv(q_v, strict=True)
    if t_qv <= 0:
        raise ValueError("t_qv must be positive")
    nu, sigma = gsa_visit_scales(t_qv, q_v, dims)
    z = rng.standard_normal(dims)
    w = rng.chisquare(nu)
    return sigma * z * math.sqrt(nu / w)


# ---------------------------------------------------------------------------
# Acceptance criteria
# ---------------------------------------------------------------------------

def metropolis_probability(diff: float, temperature: float, k: float = 1.0) -> float:
    """min(exp(-k diff / T), 1)."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    x = -k * diff / temperature
    if x >= 0:
        return 1.0
    return math.exp(x)


def fermi_probability(diff: float, temperature: float) -> float:
    """1 / (1 + exp(diff / T)), computed via tanh so that the probabilities at
    +diff and -diff sum to exactly 1."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    return 0.5 * (1.0 - math.tanh(diff / (2.0 * temperature)))


def gsa_probability(diff: float, temperature: float, q_a: float) -> float:
    """min(1, [1 - (1-Qa) diff/T]^(1/(1-Qa))); exponential branch at Qa == 1.

    For Qa < 1 a non-positive base has probability 0. For Qa > 1 the exponent
    is negative, so the capped expression tends to 1 as the base tends to 0;
    probability 1 is used there by continuity.
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    if abs(q_a - 1.0) < _QA_ONE_EPS:
        return metropolis_probability(diff, temperature)
    u = 1.0 - (1.0 - q_a) * diff / temperature
    if u <= 0.0:
        return 0.0 if q_a < 1.0 else 1.0
    return min(1.0, u ** (1.0 / (1.0 - q_a)))


def _decide(probability: float, rng: np.random.Generator) -> AcceptDecision:
    return AcceptDecision(rng.random() < probability, probability)


def metropolis_accept(diff: float, temperature: float, rng: np.random.Generator,
                      k: float = 1.0) -> AcceptDecision:
    return _decide(metropolis_probability(diff, temperature, k), rng)


def fermi_accept(diff: float, temperature: float,
                 rng: np.random.Generator) -> AcceptDecision:
    return _decide(fermi_probability(diff, temperature), rng)


def gsa_accept(diff: float, temperature: float, q_a: float,
               rng: np.random.Generator) -> AcceptDecision:
    return _decide(gsa_probability(diff, temperature, q_a), rng)


@dataclass(frozen=True)
class MetropolisAccepter:
    k: float = 1.0

    def __call__(self, diff, temperature, rng):
        return metropolis_accept(diff, temperature, rng, self.k)


@dataclass(frozen=True)
class FermiAccepter:
    def __call__(self, diff, temperature, rng):
        return fermi_accept(diff, temperature, rng)


@dataclass(frozen=True)
class GsaAccepter:
    q_a: float = 1.0

    def __call__(self, diff, temperature, rng):
        return gsa_accept(diff, temperature, self.q_a, rng)


# ---------------------------------------------------------------------------
# Neighborhood constructors
# ---------------------------------------------------------------------------
# All constructors resample with fresh draws on a bounds violation rather than
# clipping, which would inflate acceptance rates at the box edges.

def boltzmann_neighbor(bounds: Bounds, cur: npt.NDArray, mover,
                       rng: np.random.Generator) -> npt.NDArray:
    """Candidate from a uniform box draw: project cur onto it, normalize the
    projection, and scale the unit direction by a normal step length."""
    for _ in range(MAX_NEIGHBOR_RETRIES):
        anchor = bounds.sample(rng)
        step = mover(rng)
        proj = anchor * np.dot(cur, anchor) / np.dot(anchor, anchor)
        norm = np.linalg.norm(proj)
        if norm == 0.0:
            continue
        candidate = (proj / norm) * step
        if bounds.contains(candidate):
            return candidate
    raise NeighborhoodExhausted(
        f"no in-bounds candidate after {MAX_NEIGHBOR_RETRIES} resamples"
    )


@dataclass(frozen=True)
class ProjectedNormalNeighbor:
    """Temperature-independent neighbor used by the Boltzmann quencher."""

    bounds: Bounds

    def __call__(self, cur, temperature, rng):
        return boltzmann_neighbor(self.bounds, cur, boltzmann_move, rng)


def _displacement_neighbor(bounds, cur, rng, draw):
    for _ in range(MAX_NEIGHBOR_RETRIES):
        candidate = cur + draw(rng)
        if bounds.contains(candidate):
            return candidate
    raise NeighborhoodExhausted(
        f"no in-bounds candidate after {MAX_NEIGHBOR_RETRIES} resamples"
    )


@dataclass(frozen=True)
class CauchyNeighbor:
    """Current position plus a Cauchy jump scaled by the epoch temperature."""

    bounds: Bounds

    def __call__(self, cur, temperature, rng):
        return _displacement_neighbor(
            self.bounds, cur, rng,
            lambda r: cauchy_visit(temperature, self.bounds.dims, r),
        )


@dataclass(frozen=True)
class GsaNeighbor:
    """Current position plus a distorted Cauchy-Lorentz jump."""

    bounds: Bounds
    q_v: float

    def __post_init__(self):
        _check_qv(self.q_v, strict=True)

    def __call__(self, cur, temperature, rng):
        return _displacement_neighbor(
            self.bounds, cur, rng,
            lambda r: gsa_visit(temperature, self.q_v, self.bounds.dims, r),
        )


ACCEPTERS = {
    "metropolis": MetropolisAccepter,
    "fermi": FermiAccepter,
    "gsa": GsaAccepter,
}

VISITORS = {
    "normal_projected": ProjectedNormalNeighbor,
    "cauchy": CauchyNeighbor,
    "gsa": GsaNeighbor,
}
