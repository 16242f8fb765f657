"""Distributed MIMO radar detection: signal model, detectors, closed-form
performance, and seeded Monte Carlo validation."""

from .analysis import (
    DetectorKind,
    PerfPoint,
    analyze_detector,
    noncentrality,
    pd_nonfluctuating,
    pd_swerling1,
    pfa,
    threshold,
)
from .detectors import (
    CompensationSet,
    acd_statistic,
    alpha_mle,
    beta_mle,
    cd_statistic,
    hd_statistic,
    ncd_statistic,
)
from .experiments import ExperimentSpec, load_experiment, parse_experiment
from .montecarlo import (
    EmpiricalResult,
    TrialConfig,
    h0_statistic_distribution_check,
    run_trials,
)
from .presets import reference_scenario
from .scene import (
    NonFluctuating,
    Scenario,
    Swerling1,
    SyncErrors,
    colocated_scenario,
    noise_free_mf_output,
)
from .waveforms import PulseSpec, caf, down_chirp, multi_band_chirp, up_chirp

__all__ = [
    "DetectorKind",
    "PerfPoint",
    "analyze_detector",
    "noncentrality",
    "pd_nonfluctuating",
    "pd_swerling1",
    "pfa",
    "threshold",
    "CompensationSet",
    "acd_statistic",
    "alpha_mle",
    "beta_mle",
    "cd_statistic",
    "hd_statistic",
    "ncd_statistic",
    "ExperimentSpec",
    "load_experiment",
    "parse_experiment",
    "EmpiricalResult",
    "TrialConfig",
    "h0_statistic_distribution_check",
    "run_trials",
    "reference_scenario",
    "NonFluctuating",
    "Scenario",
    "Swerling1",
    "SyncErrors",
    "colocated_scenario",
    "noise_free_mf_output",
    "PulseSpec",
    "caf",
    "down_chirp",
    "multi_band_chirp",
    "up_chirp",
]
