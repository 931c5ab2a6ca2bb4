"""MCMC-perspective engine: a Metropolis-Hastings chain per temperature
targeting exp(-F/T), with multi-chain execution and convergence diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .core import (
    Decision,
    DegenerateChains,
    EvalPoint,
    OutOfBounds,
    RunLimits,
    StepRecord,
    make_rng,
    split_rngs,
)
from .objectives import ObjectiveFunction
from .quench import RunResult, has_converged


@dataclass(frozen=True)
class NormalProposal:
    """Isotropic normal displacement; the default random-walk proposal."""

    scale: float = 1.0

    def __call__(self, cur, rng):
        return self.scale * rng.standard_normal(cur.shape[0])


@dataclass
class ChainConfig:
    objective: ObjectiveFunction
    cooler: object  # callable (epoch) -> temperature
    n_sim: int = 20000
    temp_floor: float = 0.01
    limits: RunLimits = field(default_factory=RunLimits)
    n_chains: int = 1
    rhat_threshold: float = 1.1
    proposal: object = field(default_factory=NormalProposal)
    seed: int = 0
    convergence_rtol: float = 1e-3
    trace_every: int = 0  # 0 disables the trace; chains can be long

    def __post_init__(self):
        if self.n_sim < 1 or self.n_chains < 1:
            raise ValueError("n_sim and n_chains must be >= 1")
        if self.rhat_threshold <= 1:
            raise ValueError("rhat_threshold must exceed 1")


@dataclass
class ChainState:
    current: npt.NDArray
    states: list = field(default_factory=list)

    @classmethod
    def start(cls, pos, target) -> "ChainState":
        pos = np.asarray(pos, dtype=float)
        if target(pos) == 0.0:
            raise ValueError("degenerate start: target density is zero there")
        return cls(current=pos)


def mk_target(objective: ObjectiveFunction, temperature: float):
    """The per-temperature density pos -> exp(-F(pos)/T), zero outside the
    bounds (hard wall; out-of-bounds proposals are never accepted)."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")

    def target(pos):
        try:
            val = objective(np.asarray(pos, dtype=float))
        except OutOfBounds:
            return 0.0
        return math.exp(min(-val / temperature, 700.0))

    return target


def mh_step(chain: ChainState, target, proposal,
            rng: np.random.Generator) -> ChainState:
    """One Metropolis-Hastings update; the (possibly unchanged) state is
    appended to the chain's history."""
    prop = chain.current + proposal(chain.current, rng)
    t_cur = target(chain.current)
    t_prop = target(prop)
    if math.isinf(t_prop) and math.isinf(t_cur):
        aproba = 1.0
    else:
        aproba = min(1.0, t_prop / t_cur)
    if rng.random() < aproba:
        chain.current = prop
    chain.states.append(chain.current)
    return chain


def best_of(states: list, objective: ObjectiveFunction) -> EvalPoint:
    """Visited position with the minimal objective value; earliest index wins
    ties."""
    if len(states) == 0:
        raise ValueError("states must be non-empty")
    energies = objective(np.asarray(states))
    energies = np.atleast_1d(energies)
    idx = int(np.argmin(energies))
    return EvalPoint(np.asarray(states[idx]), energies[idx])


def gelman_rubin(chains) -> float:
    """Potential scale reduction sqrt(((n-1)/n W + B/n) / W) with W the mean
    within-chain variance and B = n var(chain means). Vector chains are
    reduced coordinate-wise by max."""
    arrs = [np.asarray(c, dtype=float) for c in chains]
    if len(arrs) < 2:
        raise ValueError("need at least two chains")
    n = arrs[0].shape[0]
    if n < 2 or any(a.shape != arrs[0].shape for a in arrs):
        raise ValueError("chains must share a common length >= 2")
    stacked = np.stack(arrs)  # (m, n) or (m, n, dim)
    if stacked.ndim == 3:
        return max(
            gelman_rubin(stacked[:, :, j]) for j in range(stacked.shape[2])
        )
    w = np.mean(np.var(stacked, axis=1, ddof=1))
    if w == 0.0:
        raise DegenerateChains("all chains are constant; W = 0")
    b = n * np.var(np.mean(stacked, axis=1), ddof=1)
    return float(np.sqrt(((n - 1) / n * w + b / n) / w))


def effective_sample_size(states) -> float:
    """n / (1 + 2 sum rho_k), with the autocorrelation sum truncated by
    Geyer's initial positive sequence on adjacent-lag pairs."""
    x = np.asarray(states, dtype=float).ravel()
    n = x.shape[0]
    if n < 10:
        raise ValueError("sequence too short for an ESS estimate")
    x = x - x.mean()
    nfft = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(x, nfft)
    acov = np.fft.irfft(f * np.conj(f), nfft)[:n].real / n
    if acov[0] == 0.0:
        return float(n)
    rho = acov / acov[0]
    tau = -1.0
    for m in range(n // 2):
        gamma = rho[2 * m] + (rho[2 * m + 1] if 2 * m + 1 < n else 0.0)
        if gamma <= 0.0:
            break
        tau += 2.0 * gamma
    tau = max(tau, 1e-12)
    return float(min(n / tau, n))


def run_chain_sa(cfg: ChainConfig) -> RunResult:
    """One MH chain set per temperature: sample up to n_sim steps per chain,
    keep the best visited point, warm-start the next epoch from it. With two
    or more chains the epoch ends early once the scale-reduction statistic of
    the objective values falls below the threshold."""
    obj = cfg.objective
    obj.calls = 0
    master = make_rng(cfg.seed)

    best: EvalPoint | None = None
    trace: list[StepRecord] = []
    diagnostics: list[dict] = []
    acceptances = rejections = samestate = 0
    converged = False
    epoch = 1
    epochs_run = 0

    init_pos = None  # epoch 1: fresh uniform start per chain
    checkpoint = max(cfg.n_sim // 10, 1)
    running_best = math.inf

    while True:
        temperature = cfg.cooler(epoch)
        if temperature <= cfg.temp_floor or epoch > cfg.limits.max_epochs:
            break
        rngs = split_rngs(cfg.seed + epoch, cfg.n_chains) if cfg.n_chains > 1 \
            else [master]

        cur_pos = []
        cur_val = []
        for rng in rngs:
            pos = obj.bounds.sample(rng) if init_pos is None else init_pos.copy()
            cur_pos.append(pos)
            cur_val.append(obj(pos))
        vals: list[list[float]] = [[] for _ in range(cfg.n_chains)]
        positions: list[list] = [[] for _ in range(cfg.n_chains)]

        steps_done = 0
        for step in range(1, cfg.n_sim + 1):
            for ci, rng in enumerate(rngs):
                disp = cfg.proposal(cur_pos[ci], rng)
                prop = cur_pos[ci] + disp
                try:
                    f_prop = obj(prop)
                    # min(1, exp(-(Fp - Fc)/T)) equals the target ratio
                    aproba = min(1.0, math.exp(
                        min(-(f_prop - cur_val[ci]) / temperature, 0.0)
                    ))
                except OutOfBounds:
                    f_prop = math.inf
                    aproba = 0.0
                accepted = rng.random() < aproba
                if accepted:
                    decision = (Decision.ACCEPT_IMPROVE
                                if f_prop <= cur_val[ci]
                                else Decision.ACCEPT_RANDOM)
                    cur_pos[ci] = prop
                    cur_val[ci] = f_prop
                    acceptances += 1
                else:
                    decision = Decision.REJECT
                    rejections += 1
                    samestate += 1
                positions[ci].append(cur_pos[ci])
                vals[ci].append(cur_val[ci])
                running_best = min(running_best, cur_val[ci])
                if cfg.trace_every and (acceptances + rejections) % cfg.trace_every == 0:
                    cand = EvalPoint(prop, f_prop if math.isfinite(f_prop) else cur_val[ci])
                    trace.append(StepRecord(
                        epoch, step, temperature, cand, decision,
                        cur_val[ci], running_best,
                    ))
            steps_done = step
            if cfg.n_chains >= 2 and step % checkpoint == 0 and step >= 2:
                try:
                    rhat = gelman_rubin([np.asarray(v) for v in vals])
                except DegenerateChains:
                    continue
                if rhat < cfg.rhat_threshold:
                    break

        all_vals = np.concatenate([np.asarray(v) for v in vals])
        all_pos = [p for chain in positions for p in chain]
        idx = int(np.argmin(all_vals))
        epoch_best = EvalPoint(all_pos[idx], all_vals[idx])
        if best is None or epoch_best.val < best.val:
            best = epoch_best

        if cfg.n_chains >= 2:
            entry = {"epoch": epoch, "steps": steps_done,
                     "ess": effective_sample_size(all_vals)
                     if all_vals.shape[0] >= 10 else float("nan")}
            try:
                entry["rhat"] = (gelman_rubin([np.asarray(v) for v in vals])
                                 if len(vals[0]) >= 2 else float("nan"))
            except DegenerateChains:
                entry["rhat"] = float("nan")
            diagnostics.append(entry)

        epochs_run = epoch
        init_pos = best.pos  # warm start
        if obj.global_min is not None and has_converged(
            best, obj.global_min, cfg.convergence_rtol
        ):
            converged = True
            break
        epoch += 1

    if best is None:
        # cooler already at/below the floor: report the initial sample
        rng = make_rng(cfg.seed)
        pos = obj.bounds.sample(rng)
        best = EvalPoint(pos, obj(pos))

    return RunResult(
        best=best,
        trace=trace,
        acceptances=acceptances,
        rejections=rejections,
        samestate_time=samestate,
        fcalls=obj.calls,
        converged=converged,
        epochs_run=epochs_run,
        diagnostics=diagnostics,
    )
