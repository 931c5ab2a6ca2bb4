"""Command-line runner: execute configured experiments, export traces and
summaries, and verify the reduction identities between the annealing variants.

Exit codes: 0 ok, 2 config error, 3 engine error, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .chain import ChainConfig, NormalProposal, run_chain_sa
from .core import RunLimits
from .kernels import (
    ACCEPTERS,
    VISITORS,
    GsaAccepter,
    GsaNeighbor,
    cauchy_visit,
    gsa_probability,
    gsa_visit,
    metropolis_probability,
)
from .objectives import OBJECTIVES, make_objective
from .quench import (
    QuencherConfig,
    preset_boltzmann,
    preset_fsa,
    preset_gsa,
    run_quench,
)
from .schedules import COOLERS, BoltzmannCooling

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ENGINE = 3
EXIT_VERIFY = 4


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Config handling
# ---------------------------------------------------------------------------

_DEFAULTS = {
    "objective": "styblinski_tang_2d",
    "objective_params": {},
    "engine": "quench",
    "preset": "bsa",
    "t_init": 5.0,
    "qv": 2.62,
    "qa": 1.0,
    "init_pos": None,
    "seeds": None,
    "max_epochs": int(1e6),
    "steps": int(1e3),
    "nsim": 5000,
    "nchains": 1,
    "trace_every": 1,
    "out": "runs",
    # custom-preset registry names
    "cooler": "boltzmann",
    "accepter": "metropolis",
    "visitor": "normal_projected",
}


def load_config(path, overrides: dict) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    cfg = dict(_DEFAULTS)
    unknown = set(raw) - set(cfg)
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    cfg.update(raw)
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    if not cfg["seeds"]:
        env = os.environ.get("ANNEAL_SEED")
        cfg["seeds"] = [int(env)] if env is not None else [0]
    _validate(cfg)
    return cfg


def _validate(cfg):
    if cfg["objective"] not in OBJECTIVES:
        raise ConfigError(f"unknown objective {cfg['objective']!r}")
    if cfg["engine"] not in ("quench", "chain"):
        raise ConfigError(f"unknown engine {cfg['engine']!r}")
    if cfg["preset"] not in ("bsa", "fsa", "gsa", "custom"):
        raise ConfigError(f"unknown preset {cfg['preset']!r}")
    for key, registry in (("cooler", COOLERS), ("accepter", ACCEPTERS),
                          ("visitor", VISITORS)):
        if cfg[key] not in registry:
            raise ConfigError(f"unknown {key} {cfg[key]!r}")
    if cfg["t_init"] <= 0:
        raise ConfigError("t_init must be positive")


def build_quencher(cfg: dict, seed: int) -> QuencherConfig:
    obj = make_objective(cfg["objective"], **cfg["objective_params"])
    limits = RunLimits(cfg["max_epochs"], cfg["steps"])
    common = dict(init_pos=cfg["init_pos"], limits=limits, seed=seed,
                  trace_every=cfg["trace_every"])
    if cfg["preset"] == "bsa":
        return preset_boltzmann(obj, cfg["t_init"], **common)
    if cfg["preset"] == "fsa":
        return preset_fsa(obj, cfg["t_init"], **common)
    if cfg["preset"] == "gsa":
        return preset_gsa(obj, cfg["t_init"], q_v=cfg["qv"], q_a=cfg["qa"],
                          **common)
    # custom: resolve registries by name
    cooler_cls = COOLERS[cfg["cooler"]]
    cooler = (cooler_cls(cfg["t_init"], cfg["qv"])
              if cfg["cooler"] == "tsallis" else cooler_cls(cfg["t_init"]))
    visitor_cls = VISITORS[cfg["visitor"]]
    neighbor = (visitor_cls(obj.bounds, cfg["qv"])
                if cfg["visitor"] == "gsa" else visitor_cls(obj.bounds))
    accepter_cls = ACCEPTERS[cfg["accepter"]]
    accepter = (accepter_cls(cfg["qa"])
                if cfg["accepter"] == "gsa" else accepter_cls())
    return QuencherConfig(
        objective=obj, neighbor=neighbor, accepter=accepter, cooler=cooler,
        t_init=cfg["t_init"], **common,
    )


def build_chain(cfg: dict, seed: int) -> ChainConfig:
    obj = make_objective(cfg["objective"], **cfg["objective_params"])
    cooler_cls = COOLERS[cfg["cooler"]]
    cooler = (cooler_cls(cfg["t_init"], cfg["qv"])
              if cfg["cooler"] == "tsallis" else cooler_cls(cfg["t_init"]))
    return ChainConfig(
        objective=obj,
        cooler=cooler,
        n_sim=cfg["nsim"],
        limits=RunLimits(cfg["max_epochs"], cfg["steps"]),
        n_chains=cfg["nchains"],
        proposal=NormalProposal(),
        seed=seed,
        trace_every=cfg["trace_every"],
    )


# ---------------------------------------------------------------------------
# Output serialization
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return repr(float(x))


def write_trace_csv(path, result, run_id: str, dims: int):
    header = (["run_id", "epoch", "step", "temperature"]
              + [f"cand_pos_{i}" for i in range(dims)]
              + ["cand_val", "decision", "cur_val", "best_val"])
    lines = [",".join(header)]
    for rec in result.trace:
        row = [run_id, str(rec.epoch), str(rec.step), _fmt(rec.temperature)]
        row += [_fmt(c) for c in rec.candidate.pos]
        row += [_fmt(rec.candidate.val), rec.decision.value,
                _fmt(rec.current_val), _fmt(rec.best_val)]
        lines.append(",".join(row))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_summary_json(path, cfg, seed, result, wall_time):
    summary = {
        "objective": cfg["objective"],
        "engine": cfg["engine"],
        "preset": cfg["preset"],
        "seed": seed,
        "best_pos": [float(x) for x in result.best.pos],
        "best_val": float(result.best.val),
        "converged": result.converged,
        "epochs_run": result.epochs_run,
        "fcalls": result.fcalls,
        "acceptances": result.acceptances,
        "rejections": result.rejections,
        "samestate_time": result.samestate_time,
        "wall_time_s": wall_time,
    }
    _atomic_write(path, json.dumps(summary, indent=2) + "\n")


def _atomic_write(path, text: str):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def export_grid(objective_name: str, params: dict, path, resolution: int = 30):
    """Tabulate a 2-D objective on a regular grid for offline plotting.

    Format: a `# global_min:` comment line, then x0,x1,val rows.
    """
    obj = make_objective(objective_name, **params)
    if obj.dims != 2:
        raise ConfigError("grid export needs a 2-D objective")
    xs = np.linspace(obj.bounds.low[0], obj.bounds.high[0], resolution)
    ys = np.linspace(obj.bounds.low[1], obj.bounds.high[1], resolution)
    lines = []
    if obj.global_min is not None:
        g = obj.global_min
        lines.append("# global_min: "
                     + ",".join(_fmt(c) for c in g.pos) + "," + _fmt(g.val))
    lines.append("x0,x1,val")
    for x in xs:
        for y in ys:
            pos = np.array([x, y])
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(obj.singlepoint(pos))}")
    _atomic_write(path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _run_one(cfg: dict, seed: int, out_dir: str):
    run_id = f"{cfg['engine']}-{cfg['preset']}-{seed}"
    start = time.perf_counter()
    if cfg["engine"] == "quench":
        quench_cfg = build_quencher(cfg, seed)
        dims = quench_cfg.objective.dims
        result = run_quench(quench_cfg)
    else:
        chain_cfg = build_chain(cfg, seed)
        dims = chain_cfg.objective.dims
        result = run_chain_sa(chain_cfg)
    wall = time.perf_counter() - start
    trace_path = os.path.join(out_dir, f"{run_id}_trace.csv")
    summary_path = os.path.join(out_dir, f"{run_id}_summary.json")
    write_trace_csv(trace_path, result, run_id, dims)
    write_summary_json(summary_path, cfg, seed, result, wall)
    return run_id, result.best.val, result.converged


def cmd_run(args) -> int:
    overrides = {
        "engine": args.engine, "preset": args.preset, "qv": args.qv,
        "qa": args.qa, "t_init": args.tinit, "max_epochs": args.max_epochs,
        "steps": args.steps, "nsim": args.nsim, "nchains": args.nchains,
        "out": args.out, "seeds": args.seed or None,
    }
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = cfg["out"]
    os.makedirs(out_dir, exist_ok=True)
    try:
        if args.export_grid:
            export_grid(cfg["objective"], cfg["objective_params"],
                        args.export_grid, args.grid_res)
        seeds = cfg["seeds"]
        if args.workers > 1 and len(seeds) > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                rows = list(pool.map(
                    _run_one, [cfg] * len(seeds), seeds,
                    [out_dir] * len(seeds),
                ))
        else:
            rows = [_run_one(cfg, s, out_dir) for s in seeds]
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # engine failure
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    for run_id, best_val, converged in rows:
        print(f"{run_id}: best_val={best_val:.6g} converged={converged}")
    return EXIT_OK


def verify_reductions(dims: int = 2, n_seeds: int = 10, n_samples: int = 100_000,
                      epochs: int = 20, steps: int = 200) -> dict:
    """Trajectory and distributional checks that the generalized preset
    collapses onto the Boltzmann and Cauchy variants."""
    from scipy import stats

    from .objectives import StyblinskiTang

    report = {}

    max_dev = 0.0
    for seed in range(n_seeds):
        limits = RunLimits(epochs, steps)
        bsa = run_quench(preset_boltzmann(
            StyblinskiTang(dims), 5.0, seed=seed, limits=limits))
        gsa = run_quench(preset_gsa(
            StyblinskiTang(dims), 5.0, q_v=1.0, q_a=1.0, seed=seed,
            limits=limits))
        for ra, rb in zip(bsa.trace, gsa.trace):
            max_dev = max(
                max_dev,
                float(np.max(np.abs(ra.candidate.pos - rb.candidate.pos))),
                abs(ra.candidate.val - rb.candidate.val),
            )
        if len(bsa.trace) != len(gsa.trace):
            max_dev = float("inf")
    report["trajectory_max_dev"] = max_dev
    report["trajectory_ok"] = max_dev <= 1e-12

    rng_a = np.random.default_rng(1234)
    rng_b = np.random.default_rng(5678)
    gsa_draws = np.array([
        gsa_visit(1.0, 2.0, 1, rng_a)[0] for _ in range(n_samples)
    ])
    cauchy_draws = np.array([
        cauchy_visit(1.0, 1, rng_b)[0] for _ in range(n_samples)
    ])
    pval = float(stats.ks_2samp(gsa_draws, cauchy_draws).pvalue)
    report["visit_ks_pvalue"] = pval
    report["visit_ok"] = pval > 0.01

    grid_dev = 0.0
    for diff in np.linspace(-5, 5, 10):
        for temp in np.linspace(0.1, 10, 10):
            grid_dev = max(grid_dev, abs(
                gsa_probability(diff, temp, 1.0)
                - metropolis_probability(diff, temp)
            ))
    report["accept_max_dev"] = grid_dev
    report["accept_ok"] = grid_dev <= 1e-12

    report["ok"] = (report["trajectory_ok"] and report["visit_ok"]
                    and report["accept_ok"])
    return report


def cmd_verify_reductions(args) -> int:
    report = verify_reductions(dims=args.dims, n_seeds=args.seeds,
                               n_samples=args.n_samples,
                               epochs=args.epochs, steps=args.steps)
    print(f"trajectory GSA(qv=1,Qa=1) vs BSA: max dev "
          f"{report['trajectory_max_dev']:.3e} "
          f"[{'ok' if report['trajectory_ok'] else 'FAIL'}]")
    print(f"visiting GSA(qv=2) vs Cauchy: KS p {report['visit_ks_pvalue']:.4f} "
          f"[{'ok' if report['visit_ok'] else 'FAIL'}]")
    print(f"acceptance GSA(Qa=1) vs Metropolis: max dev "
          f"{report['accept_max_dev']:.3e} "
          f"[{'ok' if report['accept_ok'] else 'FAIL'}]")
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def cmd_list(args) -> int:
    registries = {
        "objectives": OBJECTIVES,
        "coolers": COOLERS,
        "accepters": ACCEPTERS,
        "visitors": VISITORS,
    }
    for name in sorted(registries[args.what]):
        print(name)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anneal-kit",
        description="Simulated-annealing experiment runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a configured experiment")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--seed", type=int, action="append")
    p_run.add_argument("--out")
    p_run.add_argument("--engine", choices=["quench", "chain"])
    p_run.add_argument("--preset", choices=["bsa", "fsa", "gsa"])
    p_run.add_argument("--qv", type=float)
    p_run.add_argument("--qa", type=float)
    p_run.add_argument("--tinit", type=float)
    p_run.add_argument("--max-epochs", type=int, dest="max_epochs")
    p_run.add_argument("--steps", type=int)
    p_run.add_argument("--nsim", type=int)
    p_run.add_argument("--nchains", type=int)
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument("--export-grid", dest="export_grid",
                       help="also tabulate the objective on a grid CSV")
    p_run.add_argument("--grid-res", type=int, default=30, dest="grid_res")
    p_run.set_defaults(func=cmd_run)

    p_ver = sub.add_parser("verify-reductions",
                           help="check the GSA-to-BSA/FSA identities")
    p_ver.add_argument("--dims", type=int, default=2)
    p_ver.add_argument("--seeds", type=int, default=10)
    p_ver.add_argument("--n-samples", type=int, default=100_000,
                       dest="n_samples")
    p_ver.add_argument("--epochs", type=int, default=20)
    p_ver.add_argument("--steps", type=int, default=200)
    p_ver.set_defaults(func=cmd_verify_reductions)

    p_list = sub.add_parser("list", help="print a component registry")
    p_list.add_argument("what",
                        choices=["objectives", "coolers", "accepters",
                                 "visitors"])
    p_list.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
