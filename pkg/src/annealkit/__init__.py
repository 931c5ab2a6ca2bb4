"""annealkit: a component-based simulated-annealing toolkit.

Two engines share a pool of interchangeable parts (objectives, bounds,
cooling schedules, move kernels, acceptance criteria): an epoch/step quencher
and a Metropolis-Hastings chain-per-temperature sampler with convergence
diagnostics. Presets realize the Boltzmann, Fast (Cauchy), and generalized
(Tsallis) annealing variants, with the reduction identities between them
enforced by the test suite.
"""
from .chain import (
    ChainConfig,
    ChainState,
    NormalProposal,
    best_of,
    effective_sample_size,
    gelman_rubin,
    mh_step,
    mk_target,
    run_chain_sa,
)
from .core import (
    Bounds,
    Decision,
    DegenerateChains,
    EvalPoint,
    NeighborhoodExhausted,
    OutOfBounds,
    RunLimits,
    StepRecord,
    make_rng,
    split_rngs,
)
from .kernels import (
    AcceptDecision,
    GsaParams,
    boltzmann_move,
    boltzmann_neighbor,
    cauchy_visit,
    fermi_accept,
    gsa_accept,
    gsa_visit,
    metropolis_accept,
)
from .objectives import (
    OBJECTIVES,
    ObjectiveFunction,
    Rosenbrock2d,
    StyblinskiTang,
    make_objective,
)
from .quench import (
    QuencherConfig,
    RunResult,
    has_converged,
    preset_boltzmann,
    preset_fsa,
    preset_gsa,
    run_quench,
)
from .schedules import (
    COOLERS,
    BoltzmannCooling,
    LogarithmicCooling,
    TsallisCooling,
    boltzmann_cooling,
    logarithmic_cooling,
    tsallis_cooling,
)

__version__ = "0.1.0"
