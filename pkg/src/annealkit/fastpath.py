"""Compiled inner loop for the Boltzmann quencher.

Large seed sweeps need on the order of 1e9 sequential proposals; the generic
engine cannot do that interactively, so this module provides a numba-jitted
twin of `run_quench` for the Boltzmann preset. It consumes the exact same
random stream and arithmetic as the generic path (numba's Generator support is
bit-compatible with NumPy), which the test suite checks by trajectory
comparison. No trace is recorded.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .core import EvalPoint, NeighborhoodExhausted, RunLimits, make_rng
from .objectives import ObjectiveFunction
from .quench import RunResult


@njit(cache=True)
def styblinski_tang_jit(pos):
    s = 0.0
    for i in range(pos.shape[0]):
        x = pos[i]
        x2 = x * x
        s += x2 * x2 - 16.0 * x2 + 5.0 * x
    return s / 2.0


@njit(cache=True)
def _quench_loop(rng, func, low, high, slack, cur, cur_val,
                 t_init, c_param, temp_floor, max_epochs, steps_per_epoch,
                 glob_val, rtol, check_conv):
    d = low.shape[0]
    best = cur.copy()
    best_val = cur_val
    u = np.empty(d)
    cand = np.empty(d)
    acceptances = 0
    rejections = 0
    samestate = 0
    converged = False
    exhausted = False
    epoch = 1
    epochs_run = 0

    while True:
        temperature = c_param * t_init / (1.0 + np.log(epoch))
        if temperature <= temp_floor or epoch > max_epochs:
            break
        for _step in range(steps_per_epoch):
            # projected-normal neighbor, resampled until in bounds
            found = False
            for _attempt in range(1000):
                for i in range(d):
                    u[i] = rng.uniform(low[i], high[i])
                z = rng.standard_normal()
                dot_cu = 0.0
                dot_uu = 0.0
                for i in range(d):
                    dot_cu += cur[i] * u[i]
                    dot_uu += u[i] * u[i]
                nrm2 = 0.0
                for i in range(d):
                    p = (u[i] * dot_cu) / dot_uu
                    nrm2 += p * p
                nrm = np.sqrt(nrm2)
                if nrm == 0.0:
                    continue
                ok = True
                for i in range(d):
                    c = ((u[i] * dot_cu) / dot_uu / nrm) * z
                    cand[i] = c
                    if not (c > low[i] - slack and c < high[i] + slack):
                        ok = False
                if ok:
                    found = True
                    break
            if not found:
                exhausted = True
                return (best, best_val, acceptances, rejections, samestate,
                        epochs_run, converged, exhausted)

            cand_val = func(cand)
            diff = cand_val - cur_val
            if diff <= 0.0:
                accept = True
            else:
                accept = rng.random() < np.exp(-diff / temperature)
            if accept:
                for i in range(d):
                    cur[i] = cand[i]
                cur_val = cand_val
                if cur_val < best_val:
                    best_val = cur_val
                    for i in range(d):
                        best[i] = cur[i]
                else:
                    samestate += 1
                acceptances += 1
            else:
                rejections += 1
                samestate += 1
        epochs_run = epoch
        if check_conv and abs(best_val - glob_val) <= rtol * abs(glob_val):
            converged = True
            break
        epoch += 1

    return (best, best_val, acceptances, rejections, samestate,
            epochs_run, converged, exhausted)


def run_boltzmann_fast(objective: ObjectiveFunction, t_init: float,
                       init_pos=None, limits: RunLimits | None = None,
                       seed: int = 0, temp_floor: float = 0.1,
                       convergence_rtol: float = 1e-3,
                       c_param: float = 1.0) -> RunResult:
    """Boltzmann-preset quench with the compiled loop; trace-free but
    otherwise trajectory-identical to `run_quench(preset_boltzmann(...))`."""
    func = objective.numba_impl()
    if func is None:
        raise ValueError(
            f"{objective.name} has no compiled implementation; use run_quench"
        )
    limits = limits or RunLimits()
    rng = make_rng(seed)
    bounds = objective.bounds
    if init_pos is None:
        init_pos = bounds.sample(rng)
    else:
        init_pos = np.asarray(init_pos, dtype=float)
        bounds.check(init_pos)
    objective.calls = 0
    init_val = objective(init_pos)

    glob = objective.global_min
    (best, best_val, acceptances, rejections, samestate,
     epochs_run, converged, exhausted) = _quench_loop(
        rng, func, bounds.low, bounds.high, bounds.slack,
        init_pos.copy(), init_val,
        t_init, c_param, temp_floor,
        limits.max_epochs, limits.steps_per_epoch,
        glob.val if glob is not None else 0.0,
        convergence_rtol,
        glob is not None,
    )
    if exhausted:
        raise NeighborhoodExhausted("no in-bounds candidate after 1000 resamples")
    total = acceptances + rejections
    return RunResult(
        best=EvalPoint(best, best_val),
        trace=[],
        acceptances=acceptances,
        rejections=rejections,
        samestate_time=samestate,
        fcalls=total + 1,
        converged=converged,
        epochs_run=epochs_run,
    )
