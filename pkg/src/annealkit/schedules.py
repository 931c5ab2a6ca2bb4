"""Cooling schedules: pure maps from step index to temperature."""
from __future__ import annotations

import math
from dataclasses import dataclass

# Below this distance from 1, the Tsallis shape uses its analytic limit.
_QV_ONE_EPS = 1e-9


def boltzmann_cooling(t_init: float, epoch: int, c_param: float = 1.0) -> float:
    """c * T_init / (1 + ln(epoch)), epoch >= 1."""
    if epoch < 1:
        raise ValueError("epoch must be >= 1")
    return c_param * t_init / (1.0 + math.log(epoch))


def logarithmic_cooling(t_init: float, k: int, k0: int = 2) -> float:
    """T_init * ln(k0) / ln(k); the ergodic-sufficiency schedule, k >= 2."""
    if k < 2:
        raise ValueError("k must be >= 2 (ln k must be positive)")
    if k0 < 2:
        raise ValueError("k0 must be >= 2")
    return t_init * math.log(k0) / math.log(k)


def tsallis_cooling(t_init: float, t: int, q_v: float) -> float:
    """T(t) = T(0) (2^(qv-1) - 1) / ((1+t)^(qv-1) - 1), t >= 1.

    At q_v == 1 both numerator and denominator vanish; the analytic limit
    T(0) ln(2) / ln(1+t) is used instead.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if q_v < 1:
        raise ValueError("q_v must be >= 1")
    if abs(q_v - 1.0) < _QV_ONE_EPS:
        return t_init * math.log(2.0) / math.log(1.0 + t)
    e = q_v - 1.0
    return t_init * (2.0**e - 1.0) / ((1.0 + t) ** e - 1.0)


@dataclass(frozen=True)
class BoltzmannCooling:
    t_init: float
    c_param: float = 1.0

    def __call__(self, epoch: int) -> float:
        return boltzmann_cooling(self.t_init, epoch, self.c_param)


@dataclass(frozen=True)
class LogarithmicCooling:
    t_init: float
    k0: int = 2

    def __call__(self, k: int) -> float:
        return logarithmic_cooling(self.t_init, k, self.k0)


@dataclass(frozen=True)
class TsallisCooling:
    t_init: float
    q_v: float

    def __call__(self, t: int) -> float:
        return tsallis_cooling(self.t_init, t, self.q_v)


COOLERS = {
    "boltzmann": BoltzmannCooling,
    "logarithmic": LogarithmicCooling,
    "tsallis": TsallisCooling,
}
