"""Closed-form detection performance for the four detectors.

Every statistic T is (a scaled) chi-square: under H0, 2T/c is central
chi-square with 2p degrees of freedom, and under H1 noncentral with
parameter lambda, where the order p and scale c are

    NCD  p = KMN    c = sigma^2
    ACD  p = 1      c = KMN sigma^2
    CD   p = 1      c = varsigma sigma^2
    HD   p = N M^2  c = sigma^2

so one kernel serves false-alarm probability, threshold inversion,
fixed-amplitude detection probability (Marcum-Q tail), and the Swerling I
average in terms of the regularized gamma and 1F1(1, b, x).

The false-alarm expressions use the right tail Pf = Q(p, gamma / c)
throughout, consistent with the underlying chi-square tail integral.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .detectors import CompensationSet, doppler_projectors
from .scene import Scenario, SyncErrors, noise_free_mf_output
from .specfun import (
    Probability,
    inv_reg_upper_gamma,
    kummer_1f1_first_unit,
    marcum_q,
    reg_upper_gamma,
)

__all__ = [
    "DetectorKind",
    "PerfPoint",
    "noncentrality",
    "pfa",
    "threshold",
    "pd_nonfluctuating",
    "pd_swerling1",
    "analyze_detector",
]


class DetectorKind(enum.Enum):
    NCD = "NCD"
    ACD = "ACD"
    CD = "CD"
    HD = "HD"


@dataclass(frozen=True)
class PerfPoint:
    """Analytic operating point of one detector."""

    detector: DetectorKind
    gamma: float
    pfa: Probability
    pd: Probability
    lam: float
    varsigma: float | None = None

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("noncentrality must be nonnegative")
        if self.detector is DetectorKind.CD and not (self.varsigma or 0) > 0:
            raise ValueError("CD operating point requires varsigma > 0")


def _order(det: DetectorKind, K: int, M: int, N: int) -> int:
    if det is DetectorKind.NCD:
        return K * M * N
    if det is DetectorKind.HD:
        return N * M * M
    return 1


def _scale(det: DetectorKind, K: int, M: int, N: int, sigma2: float,
           varsigma=None) -> float:
    if det is DetectorKind.NCD or det is DetectorKind.HD:
        return sigma2
    if det is DetectorKind.ACD:
        return K * M * N * sigma2
    if varsigma is None:
        raise ValueError("CD requires the varsigma scaling factor")
    return varsigma * sigma2


def noncentrality(det: DetectorKind, sc: Scenario, err: SyncErrors,
                  comp: CompensationSet, rho: float):
    """Noncentrality lambda at target RCS rho = |alpha|^2, plus the CD
    scaling factor varsigma (None for the other detectors).

    Linear in rho: lambda = rho * lambda'.
    """
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    K, M, N = sc.k_pulses, sc.m_tx, sc.n_rx
    s2 = sc.sigma2
    x = noise_free_mf_output(sc, err, 1.0)

    if det is DetectorKind.NCD:
        return 2.0 * rho * float(np.sum(np.abs(x) ** 2)) / s2, None
    if det is DetectorKind.ACD:
        coh = np.sum(np.exp(-1j * comp.theta_hat) * x)
        return 2.0 * rho * abs(coh) ** 2 / (K * M * N * s2), None
    if det is DetectorKind.CD:
        v = comp.templates
        varsigma = float(np.sum(np.abs(v) ** 2))
        num = abs(np.sum(np.conj(v) * x)) ** 2
        return 2.0 * rho * num / (s2 * varsigma), varsigma
    # HD: energy of the true signal after projection onto the estimated
    # Doppler subspaces
    q = doppler_projectors(comp.S_hat)
    coeffs = np.einsum("nkj,mnk->mnj", np.conj(q), x)
    return 2.0 * rho * float(np.sum(np.abs(coeffs) ** 2)) / s2, None


def pfa(det: DetectorKind, gamma: float, K: int, M: int, N: int,
        sigma2: float, varsigma=None) -> Probability:
    """Probability of false alarm at threshold gamma."""
    if gamma < 0:
        raise ValueError("threshold must be nonnegative")
    p = _order(det, K, M, N)
    c = _scale(det, K, M, N, sigma2, varsigma)
    return Probability(reg_upper_gamma(p, gamma / c))


def threshold(det: DetectorKind, pfa_target: float, K: int, M: int, N: int,
              sigma2: float, varsigma=None) -> float:
    """Threshold gamma with pfa(gamma) = pfa_target."""
    if not 0.0 < pfa_target < 1.0:
        raise ValueError("target false-alarm rate must lie strictly in (0, 1)")
    p = _order(det, K, M, N)
    c = _scale(det, K, M, N, sigma2, varsigma)
    if p == 1:
        return c * math.log(1.0 / pfa_target)
    return c * inv_reg_upper_gamma(p, pfa_target)


def pd_nonfluctuating(det: DetectorKind, gamma: float, lam: float, K: int,
                      M: int, N: int, sigma2: float, varsigma=None) -> Probability:
    """Detection probability for a fixed-amplitude target."""
    if lam < 0 or gamma < 0:
        raise ValueError("lambda and gamma must be nonnegative")
    p = _order(det, K, M, N)
    c = _scale(det, K, M, N, sigma2, varsigma)
    return marcum_q(p, math.sqrt(lam), math.sqrt(2.0 * gamma / c))


def _swerling1_average(p: int, g: float, lam_prime: float, rho_bar: float) -> float:
    # Exponential-RCS average of the Marcum tail:
    #   Q(p, g) + lam' g^p 1F1(1, p+1, g lam'/(lam'+2/rb))
    #            / (p! (lam'+2/rb) e^g)
    # with g the threshold normalized by the statistic scale.
    if g == 0.0:
        return 1.0
    if lam_prime == 0.0:
        return reg_upper_gamma(p, g)
    denom = lam_prime + 2.0 / rho_bar
    arg = g * lam_prime / denom
    log_factor = p * math.log(g) - math.lgamma(p + 1) - g
    return (reg_upper_gamma(p, g)
            + (lam_prime / denom) * math.exp(log_factor)
            * kummer_1f1_first_unit(p + 1.0, arg))


def pd_swerling1(det: DetectorKind, gamma: float, lambda_prime: float,
                 rho_bar: float, K: int, M: int, N: int, sigma2: float,
                 varsigma=None) -> Probability:
    """Average detection probability for a Swerling I target with mean RCS
    rho_bar, given the per-unit-RCS noncentrality lambda_prime."""
    if lambda_prime < 0:
        raise ValueError("lambda_prime must be nonnegative")
    if not rho_bar > 0:
        raise ValueError("mean RCS must be positive")
    p = _order(det, K, M, N)
    c = _scale(det, K, M, N, sigma2, varsigma)
    val = _swerling1_average(p, gamma / c, lambda_prime, rho_bar)
    return Probability(min(1.0, max(0.0, val)))


def analyze_detector(det: DetectorKind, sc: Scenario, err: SyncErrors,
                     comp: CompensationSet, pfa_target: float) -> PerfPoint:
    """Operating point at a target false-alarm rate: threshold, per-target
    noncentrality, and detection probability under the scenario's target
    model (Swerling I average or fixed amplitude)."""
    from .scene import Swerling1

    K, M, N = sc.k_pulses, sc.m_tx, sc.n_rx
    lam_prime, varsigma = noncentrality(det, sc, err, comp, 1.0)
    gamma = threshold(det, pfa_target, K, M, N, sc.sigma2, varsigma)
    if isinstance(sc.target, Swerling1):
        pd = pd_swerling1(det, gamma, lam_prime, sc.target.rho_bar,
                          K, M, N, sc.sigma2, varsigma)
        lam = lam_prime * sc.target.rho_bar
    else:
        rho = abs(sc.target.alpha) ** 2
        lam = lam_prime * rho
        pd = pd_nonfluctuating(det, gamma, lam, K, M, N, sc.sigma2, varsigma)
    return PerfPoint(detector=det, gamma=gamma,
                     pfa=Probability(pfa_target), pd=pd,
                     lam=lam, varsigma=varsigma)
