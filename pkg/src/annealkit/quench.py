"""The epoch/step quencher engine and the Boltzmann/Fast/Generalized presets."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import numpy.typing as npt

from .core import (
    Decision,
    EvalPoint,
    RunLimits,
    StepRecord,
    make_rng,
)
from .kernels import (
    CauchyNeighbor,
    FermiAccepter,
    GsaAccepter,
    GsaNeighbor,
    MetropolisAccepter,
    ProjectedNormalNeighbor,
    _check_qv,
)
from .objectives import ObjectiveFunction
from .schedules import BoltzmannCooling, TsallisCooling


@dataclass
class QuencherConfig:
    """Everything one quench run needs; identical configs and seeds give
    bit-identical results."""

    objective: ObjectiveFunction
    neighbor: object  # callable (cur, temperature, rng) -> position
    accepter: object  # callable (diff, temperature, rng) -> AcceptDecision
    cooler: object  # callable (epoch) -> temperature
    t_init: float
    temp_floor: float = 0.1
    limits: RunLimits = field(default_factory=RunLimits)
    init_pos: npt.NDArray | None = None
    seed: int = 0
    convergence_rtol: float = 1e-3
    trace_every: int = 1  # 0 disables the trace

    def __post_init__(self):
        if self.temp_floor <= 0:
            raise ValueError("temp_floor must be positive")
        if self.trace_every < 0:
            raise ValueError("trace_every must be >= 0")
        if self.init_pos is not None:
            self.init_pos = np.asarray(self.init_pos, dtype=float)
            self.objective.bounds.check(self.init_pos)


@dataclass
class RunResult:
    best: EvalPoint
    trace: list[StepRecord]
    acceptances: int
    rejections: int
    samestate_time: int
    fcalls: int
    converged: bool
    epochs_run: int
    diagnostics: list = field(default_factory=list)


def has_converged(best: EvalPoint, globmin: EvalPoint, rtol: float) -> bool:
    """Relative match of the best value against a known global minimum."""
    return abs(best.val - globmin.val) <= rtol * abs(globmin.val)


def run_quench(cfg: QuencherConfig) -> RunResult:
    """Propose/accept loop: one epoch per temperature, a fixed number of inner
    steps, stopping on convergence, the temperature floor, or the epoch cap."""
    rng = make_rng(cfg.seed)
    obj = cfg.objective
    obj.calls = 0

    init = cfg.init_pos if cfg.init_pos is not None else obj.bounds.sample(rng)
    cur = EvalPoint(init, obj(init))
    best = cur

    trace: list[StepRecord] = []
    acceptances = rejections = samestate = 0
    converged = False
    epoch = 1
    epochs_run = 0

    while True:
        temperature = cfg.cooler(epoch)
        if temperature <= cfg.temp_floor or epoch > cfg.limits.max_epochs:
            break
        for step in range(1, cfg.limits.steps_per_epoch + 1):
            cand_pos = cfg.neighbor(cur.pos, temperature, rng)
            candidate = EvalPoint(cand_pos, obj(cand_pos))
            diff = candidate.val - cur.val
            if diff <= 0:
                decision = Decision.ACCEPT_IMPROVE
            elif cfg.accepter(diff, temperature, rng).accepted:
                decision = Decision.ACCEPT_RANDOM
            else:
                decision = Decision.REJECT

            if decision is Decision.REJECT:
                rejections += 1
                samestate += 1
            else:
                cur = candidate
                if cur.val < best.val:
                    best = cur
                else:
                    samestate += 1
                acceptances += 1

            if cfg.trace_every and (acceptances + rejections) % cfg.trace_every == 0:
                trace.append(StepRecord(
                    epoch, step, temperature, candidate, decision,
                    cur.val, best.val,
                ))
        epochs_run = epoch
        if obj.global_min is not None and has_converged(
            best, obj.global_min, cfg.convergence_rtol
        ):
            converged = True
            break
        epoch += 1

    return RunResult(
        best=best,
        trace=trace,
        acceptances=acceptances,
        rejections=rejections,
        samestate_time=samestate,
        fcalls=obj.calls,
        converged=converged,
        epochs_run=epochs_run,
    )


def preset_boltzmann(objective: ObjectiveFunction, t_init: float,
                     init_pos=None, limits: RunLimits | None = None,
                     seed: int = 0, **kwargs) -> QuencherConfig:
    """Classic Boltzmann quencher: projected-normal neighbor, Metropolis
    acceptance, 1/(1+ln epoch) cooling."""
    return QuencherConfig(
        objective=objective,
        neighbor=ProjectedNormalNeighbor(objective.bounds),
        accepter=MetropolisAccepter(),
        cooler=BoltzmannCooling(t_init),
        t_init=t_init,
        limits=limits or RunLimits(),
        init_pos=init_pos,
        seed=seed,
        **kwargs,
    )


def preset_fsa(objective: ObjectiveFunction, t_init: float,
               init_pos=None, limits: RunLimits | None = None,
               seed: int = 0, **kwargs) -> QuencherConfig:
    """Fast variant: Cauchy jumps scaled by the cooled temperature, Fermi
    acceptance."""
    return QuencherConfig(
        objective=objective,
        neighbor=CauchyNeighbor(objective.bounds),
        accepter=FermiAccepter(),
        cooler=BoltzmannCooling(t_init),
        t_init=t_init,
        limits=limits or RunLimits(),
        init_pos=init_pos,
        seed=seed,
        **kwargs,
    )


def preset_gsa(objective: ObjectiveFunction, t_init: float,
               q_v: float = 2.62, q_a: float = 1.0,
               init_pos=None, limits: RunLimits | None = None,
               seed: int = 0, **kwargs) -> QuencherConfig:
    """Generalized variant; at q_v = 1 and Q_a = 1 the configuration collapses
    onto the Boltzmann preset component-by-component, so the reduction is exact
    by construction (including the cooling schedule)."""
    _check_qv(q_v)
    if q_v == 1.0:
        neighbor = ProjectedNormalNeighbor(objective.bounds)
        cooler = BoltzmannCooling(t_init)
    else:
        neighbor = GsaNeighbor(objective.bounds, q_v)
        cooler = TsallisCooling(t_init, q_v)
    accepter = MetropolisAccepter() if q_a == 1.0 else GsaAccepter(q_a)
    return QuencherConfig(
        objective=objective,
        neighbor=neighbor,
        accepter=accepter,
        cooler=cooler,
        t_init=t_init,
        limits=limits or RunLimits(),
        init_pos=init_pos,
        seed=seed,
        **kwargs,
    )
