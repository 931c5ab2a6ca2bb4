import numpy as np
import pytest
from scipy import stats

from annealkit.core import Bounds, Decision, EvalPoint, RunLimits, make_rng
from annealkit.kernels import cauchy_visit, gsa_visit
from annealkit.objectives import ObjectiveFunction, StyblinskiTang
from annealkit.quench import (
    QuencherConfig,
    has_converged,
    preset_boltzmann,
    preset_fsa,
    preset_gsa,
    run_quench,
)

GLOBMIN = -78.33198


class Constant(ObjectiveFunction):
    def __init__(self):
        super().__init__(Bounds.cube(2, -5, 5), name="constant")

    def singlepoint(self, pos):
        self.bounds.check(pos)
        return 0.0


class TestHasConverged:
    def test_exact_match(self):
        g = EvalPoint([0, 0], GLOBMIN)
        assert has_converged(EvalPoint([0, 0], GLOBMIN), g, 1e-3)

    def test_outside_tolerance(self):
        g = EvalPoint([0, 0], GLOBMIN)
        assert not has_converged(EvalPoint([0, 0], -78.25), g, 1e-3)

    def test_inside_tolerance(self):
        g = EvalPoint([0, 0], GLOBMIN)
        assert has_converged(EvalPoint([0, 0], -78.30), g, 1e-3)


class TestRunQuench:
    def test_loop_bound(self):
        cfg = preset_boltzmann(StyblinskiTang(2), 5.0, init_pos=[-2, -2],
                               limits=RunLimits(1, 10), seed=0)
        result = run_quench(cfg)
        assert len(result.trace) == 10
        assert result.epochs_run == 1

    def test_constant_objective_all_improve(self):
        # start off the origin: the projection kernel has no candidates there
        cfg = preset_boltzmann(Constant(), 5.0, init_pos=[1, 1],
                               limits=RunLimits(2, 50), seed=0)
        result = run_quench(cfg)
        assert result.rejections == 0
        assert all(r.decision is Decision.ACCEPT_IMPROVE for r in result.trace)

    def test_determinism(self):
        mk = lambda: preset_boltzmann(StyblinskiTang(2), 5.0, init_pos=[-2, -2],
                                      limits=RunLimits(5, 100), seed=42)
        a, b = run_quench(mk()), run_quench(mk())
        assert a.best.val == b.best.val
        assert np.array_equal(a.best.pos, b.best.pos)
        assert a.acceptances == b.acceptances
        assert len(a.trace) == len(b.trace)
        for ra, rb in zip(a.trace, b.trace):
            assert np.array_equal(ra.candidate.pos, rb.candidate.pos)
            assert ra.decision is rb.decision

    def test_counter_identity(self):
        result = run_quench(preset_boltzmann(
            StyblinskiTang(2), 5.0, init_pos=[-2, -2],
            limits=RunLimits(3, 100), seed=7))
        assert result.acceptances + result.rejections == len(result.trace)
        assert result.fcalls == len(result.trace) + 1  # + initial evaluation

    def test_best_non_increasing_along_trace(self):
        result = run_quench(preset_boltzmann(
            StyblinskiTang(2), 5.0, init_pos=[-2, -2],
            limits=RunLimits(5, 200), seed=3))
        bests = [r.best_val for r in result.trace]
        assert all(b2 <= b1 for b1, b2 in zip(bests, bests[1:]))

    def test_accepted_candidates_in_bounds(self):
        cfg = preset_fsa(StyblinskiTang(2), 5.0, init_pos=[-2, -2],
                         limits=RunLimits(3, 200), seed=5)
        result = run_quench(cfg)
        for rec in result.trace:
            if rec.decision is not Decision.REJECT:
                cfg.objective.bounds.check(rec.candidate.pos)

    def test_trace_downsampling(self):
        cfg = preset_boltzmann(StyblinskiTang(2), 5.0, init_pos=[-2, -2],
                               limits=RunLimits(1, 100), seed=0,
                               trace_every=10)
        assert len(run_quench(cfg).trace) == 10

    def test_invalid_init_pos_fails_before_running(self):
        with pytest.raises(Exception):
            preset_boltzmann(StyblinskiTang(2), 5.0, init_pos=[9, 9])


class TestPresets:
    def test_boltzmann_default_init_in_bounds(self):
        cfg = preset_boltzmann(StyblinskiTang(2), 5.0, seed=0)
        result = run_quench(QuencherConfig(
            objective=cfg.objective, neighbor=cfg.neighbor,
            accepter=cfg.accepter, cooler=cfg.cooler, t_init=5.0,
            limits=RunLimits(1, 10), seed=0))
        cfg.objective.bounds.check(result.best.pos)

    def test_fsa_temperature_at_first_epoch(self):
        cfg = preset_fsa(StyblinskiTang(2), 7.5)
        assert cfg.cooler(1) == 7.5

    def test_gsa_rejects_qv_out_of_domain(self):
        with pytest.raises(ValueError):
            preset_gsa(StyblinskiTang(2), 5.0, q_v=3.0)

    def test_gsa_reduction_to_bsa_is_exact(self):
        limits = RunLimits(20, 100)
        for seed in (0, 1):
            a = run_quench(preset_boltzmann(
                StyblinskiTang(2), 5.0, limits=limits, seed=seed))
            b = run_quench(preset_gsa(
                StyblinskiTang(2), 5.0, q_v=1.0, q_a=1.0, limits=limits,
                seed=seed))
            assert len(a.trace) == len(b.trace)
            for ra, rb in zip(a.trace, b.trace):
                assert np.array_equal(ra.candidate.pos, rb.candidate.pos)
                assert ra.candidate.val == rb.candidate.val
                assert ra.decision is rb.decision

    def test_gsa_qv2_visits_match_fsa_distribution(self):
        # kernels sampled independently: distributional, not bitwise, equality
        rng_a, rng_b = make_rng(100), make_rng(200)
        gsa_draws = np.array([gsa_visit(0.7, 2.0, 1, rng_a)[0]
                              for _ in range(50_000)])
        fsa_draws = np.array([cauchy_visit(0.7, 1, rng_b)[0]
                              for _ in range(50_000)])
        assert stats.ks_2samp(gsa_draws, fsa_draws).pvalue > 0.01
