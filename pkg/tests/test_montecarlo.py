"""Tests for the seeded trial engine."""

import numpy as np
import pytest

from dmimo.analysis import DetectorKind, analyze_detector, threshold
from dmimo.detectors import CompensationSet, ncd_statistic
from dmimo.montecarlo import (
    BLOCK_TRIALS,
    DistributionCheck,
    EmpiricalResult,
    TrialConfig,
    _block_rng,
    _iter_measurement_blocks,
    draw_noise,
    draw_swerling1_alpha,
    h0_statistic_distribution_check,
    run_trials,
)
from dmimo.scene import NonFluctuating, Swerling1, noise_free_mf_output

ALL = list(DetectorKind)


@pytest.fixture
def ref_setup(ref_scenario, zero_err):
    comp = CompensationSet.from_scenario(ref_scenario, zero_err)
    return ref_scenario, zero_err, comp


class TestDraws:
    def test_noise_moments(self):
        rng = _block_rng(7, 0)
        w = draw_noise(rng, 16, sigma2=2.5, shape=(20000,))
        assert abs(np.mean(w)) < 5 * np.sqrt(2.5 / (16 * 20000))
        assert np.mean(np.abs(w) ** 2) == pytest.approx(2.5, rel=0.01)

    def test_noise_determinism(self):
        a = draw_noise(_block_rng(3, 1), 8, shape=(4,))
        b = draw_noise(_block_rng(3, 1), 8, shape=(4,))
        assert np.array_equal(a, b)

    def test_alpha_moment(self):
        rng = _block_rng(11, 0)
        a = draw_swerling1_alpha(rng, 1.7, (100000,))
        assert np.mean(np.abs(a) ** 2) == pytest.approx(1.7, rel=0.02)

    def test_alpha_exponential_cdf(self):
        # |alpha|^2 should follow 1 - exp(-r / rho_bar)
        rng = _block_rng(13, 0)
        r = np.sort(np.abs(draw_swerling1_alpha(rng, 1.0, (100000,))) ** 2)
        ecdf = np.arange(1, r.size + 1) / r.size
        ks = np.max(np.abs(ecdf - (1.0 - np.exp(-r))))
        assert ks < 0.01

    def test_alpha_scalar_form(self):
        a = draw_swerling1_alpha(_block_rng(5, 0), 2.0)
        assert isinstance(a, complex)

    def test_alpha_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            draw_swerling1_alpha(_block_rng(0, 0), 0.0)


class TestTrialConfig:
    def test_h1_needs_target(self):
        with pytest.raises(ValueError):
            TrialConfig(trials=10, seed=0, hypothesis="H1")

    def test_bad_hypothesis(self):
        with pytest.raises(ValueError):
            TrialConfig(trials=10, seed=0, hypothesis="H2")

    def test_bad_trials(self):
        with pytest.raises(ValueError):
            TrialConfig(trials=0, seed=0, hypothesis="H0")


class TestDeterminism:
    def test_identical_runs(self, ref_setup):
        sc, err, comp = ref_setup
        gammas = {d: threshold(d, 1e-2, 12, 2, 1, 1.0,
                               np.sum(np.abs(comp.templates) ** 2))
                  for d in ALL}
        cfg = TrialConfig(trials=3000, seed=42, hypothesis="H1",
                          target_draw=Swerling1(1.0))
        r1 = run_trials(sc, err, comp, ALL, gammas, cfg)
        r2 = run_trials(sc, err, comp, ALL, gammas, cfg)
        for d in ALL:
            assert r1[d] == r2[d]

    def test_prefix_consistency_across_trial_counts(self, ref_setup):
        # the first block of a long run equals the whole of a short run
        sc, err, comp = ref_setup
        short = TrialConfig(trials=BLOCK_TRIALS, seed=9, hypothesis="H1",
                            target_draw=Swerling1(1.0))
        long = TrialConfig(trials=2 * BLOCK_TRIALS + 100, seed=9,
                           hypothesis="H1", target_draw=Swerling1(1.0))
        y_short = next(_iter_measurement_blocks(sc, err, short))
        y_long = next(_iter_measurement_blocks(sc, err, long))
        assert np.array_equal(y_short, y_long)

    def test_block_order_independent_counts(self, ref_setup):
        # counting is associative: summing per-block exceedances in
        # reversed order reproduces run_trials
        sc, err, comp = ref_setup
        gamma = threshold(DetectorKind.NCD, 1e-2, 12, 2, 1, 1.0)
        cfg = TrialConfig(trials=3 * BLOCK_TRIALS, seed=21, hypothesis="H0")
        blocks = list(_iter_measurement_blocks(sc, err, cfg))
        total = sum(int(np.count_nonzero(ncd_statistic(y) > gamma))
                    for y in reversed(blocks))
        got = run_trials(sc, err, comp, [DetectorKind.NCD],
                         {DetectorKind.NCD: gamma}, cfg)
        assert got[DetectorKind.NCD].detections == total

    def test_seed_changes_results(self, ref_setup):
        sc, err, comp = ref_setup
        gammas = {DetectorKind.NCD: threshold(DetectorKind.NCD, 0.5,
                                              12, 2, 1, 1.0)}
        runs = [run_trials(sc, err, comp, [DetectorKind.NCD], gammas,
                           TrialConfig(trials=2000, seed=s, hypothesis="H0"))
                for s in (1, 2)]
        assert (runs[0][DetectorKind.NCD].detections
                != runs[1][DetectorKind.NCD].detections)


class TestH0Calibration:
    @pytest.mark.parametrize("det", ALL)
    def test_exceedance_matches_pfa(self, det, ref_setup):
        sc, err, comp = ref_setup
        vs = float(np.sum(np.abs(comp.templates) ** 2))
        pf = 1e-2
        gamma = threshold(det, pf, 12, 2, 1, 1.0, vs)
        cfg = TrialConfig(trials=100000, seed=77, hypothesis="H0")
        res = run_trials(sc, err, comp, [det], {det: gamma}, cfg)[det]
        sigma = np.sqrt(pf * (1 - pf) / cfg.trials)
        assert abs(res.p_hat - pf) <= 3 * sigma

    def test_result_bookkeeping(self):
        r = EmpiricalResult.from_counts(DetectorKind.CD, 250, 1000)
        assert r.p_hat == 0.25
        assert r.ci_halfwidth == pytest.approx(3 * np.sqrt(0.25 * 0.75 / 1000))


class TestH1Match:
    @pytest.mark.parametrize("det", ALL)
    def test_swerling_average_within_ci(self, det, ref_setup):
        sc, err, comp = ref_setup
        pt = analyze_detector(det, sc, err, comp, 1e-4)
        cfg = TrialConfig(trials=50000, seed=101, hypothesis="H1",
                          target_draw=Swerling1(1.0))
        res = run_trials(sc, err, comp, [det], {det: pt.gamma}, cfg)[det]
        sigma = np.sqrt(pt.pd * (1 - pt.pd) / cfg.trials)
        assert abs(res.p_hat - pt.pd) <= 3 * sigma

    def test_fixed_alpha_noise_free_limit(self, ref_scenario, zero_err):
        from dataclasses import replace
        sc = replace(ref_scenario, sigma2=1e-12)
        comp = CompensationSet.from_scenario(sc, zero_err)
        gamma = threshold(DetectorKind.NCD, 1e-4, 12, 2, 1, sc.sigma2)
        cfg = TrialConfig(trials=500, seed=3, hypothesis="H1",
                          target_draw=NonFluctuating(1.0 + 0.0j))
        res = run_trials(sc, zero_err, comp, [DetectorKind.NCD],
                         {DetectorKind.NCD: gamma}, cfg)[DetectorKind.NCD]
        assert res.p_hat == 1.0

    def test_ncd_phase_screen_invariance(self, ref_setup):
        # NCD counts are unchanged by any fixed per-sample phase screen
        # applied to the measurements
        sc, err, comp = ref_setup
        gamma = threshold(DetectorKind.NCD, 1e-3, 12, 2, 1, 1.0)
        cfg = TrialConfig(trials=20000, seed=55, hypothesis="H1",
                          target_draw=Swerling1(1.0))
        base = run_trials(sc, err, comp, [DetectorKind.NCD],
                          {DetectorKind.NCD: gamma}, cfg)[DetectorKind.NCD]
        rng = np.random.default_rng(2)
        screen = np.exp(1j * rng.uniform(-np.pi, np.pi, (2, 1, 12)))
        screened = sum(
            int(np.count_nonzero(ncd_statistic(y * screen) > gamma))
            for y in _iter_measurement_blocks(sc, err, cfg))
        assert screened == base.detections


class TestDistributionChecks:
    @pytest.mark.parametrize("det", ALL)
    def test_ks_within_gate(self, det, ref_setup):
        sc, _, comp = ref_setup
        rep = h0_statistic_distribution_check(det, sc, comp, 100000, seed=8)
        assert isinstance(rep, DistributionCheck)
        assert rep.ks_distance < 0.005

    def test_report_orders(self, ref_setup):
        sc, _, comp = ref_setup
        rep = h0_statistic_distribution_check(DetectorKind.NCD, sc, comp,
                                              5000, seed=1)
        assert rep.order == 24
        assert rep.scale == 1.0


class TestErrors:
    def test_missing_threshold(self, ref_setup):
        sc, err, comp = ref_setup
        cfg = TrialConfig(trials=10, seed=0, hypothesis="H0")
        with pytest.raises(ValueError, match="threshold"):
            run_trials(sc, err, comp, [DetectorKind.NCD], {}, cfg)
