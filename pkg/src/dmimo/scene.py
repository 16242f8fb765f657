"""Noise-free matched-filter output model for distributed and co-located
MIMO radar.

For each TX-RX path (m, n) the K slow-time samples factor as

    x_mn = alpha * S_n @ X_mn @ h_mn

with S_n the K x M Doppler steering matrix, X_mn a diagonal matrix of
cross-ambiguity samples, and h_mn the channel vector carrying amplitudes
and carrier/propagation phases.  A direct scalar evaluation of the same
samples (auto term plus M-1 cross terms) is provided as an independent
oracle for the factorized form.

Timing/frequency/phase sync errors enter through `SyncErrors`; the
all-zeros instance reproduces the error-free model exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .waveforms import PulseSpec, caf

__all__ = [
    "NonFluctuating",
    "Swerling1",
    "Scenario",
    "SyncErrors",
    "PathModel",
    "doppler_steering",
    "af_matrix",
    "channel_vector",
    "path_model",
    "noise_free_mf_output",
    "slow_time_sample",
    "colocated_scenario",
    "link_budget_xi",
    "xi_from_snr",
]


@dataclass(frozen=True)
class NonFluctuating:
    """Fixed complex target amplitude."""
    alpha: complex


@dataclass(frozen=True)
class Swerling1:
    """Exponential RCS with mean rho_bar; amplitude is complex Gaussian and
    constant within a CPI."""
    rho_bar: float

    def __post_init__(self):
        if not self.rho_bar > 0:
            raise ValueError("mean RCS must be positive")


def _frozen_array(value, shape, name):
    arr = np.array(value, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Scenario:
    """Full radar geometry and parameter set.

    pulses      M transmit pulse envelopes (one per TX)
    tau_s       (M, N) propagation delays, each < PRI
    doppler_hz  (M, N) effective Doppler f_mn (target Doppler with any
                TX/RX carrier offsets already folded in)
    psi_rad     (M, N) initial phase offsets
    b           (M,) transmit amplitudes
    xi          (M, N) channel gains
    """

    pulses: tuple[PulseSpec, ...]
    n_rx: int
    k_pulses: int
    pri_s: float
    carrier_hz: float
    tau_s: np.ndarray
    doppler_hz: np.ndarray
    psi_rad: np.ndarray
    b: np.ndarray
    xi: np.ndarray
    sigma2: float
    target: NonFluctuating | Swerling1
    # Co-located selector: force the ambiguity matrices to identity-like
    # form (cross entries exactly zero, auto entries chi_mm(0, 0)).
    force_orthogonal: bool = False

    def __post_init__(self):
        M, N = len(self.pulses), self.n_rx
        if M < 1 or N < 1 or self.k_pulses < 1:
            raise ValueError("M, N, K must all be >= 1")
        if not self.pri_s > 0:
            raise ValueError("PRI must be positive")
        if not self.sigma2 > 0:
            raise ValueError("noise power must be positive")
        object.__setattr__(self, "tau_s", _frozen_array(self.tau_s, (M, N), "tau_s"))
        object.__setattr__(self, "doppler_hz",
                           _frozen_array(self.doppler_hz, (M, N), "doppler_hz"))
        object.__setattr__(self, "psi_rad",
                           _frozen_array(self.psi_rad, (M, N), "psi_rad"))
        object.__setattr__(self, "b", _frozen_array(self.b, (M,), "b"))
        object.__setattr__(self, "xi", _frozen_array(self.xi, (M, N), "xi"))
        if np.any(self.tau_s < 0):
            raise ValueError("propagation delays must be nonnegative")
        if np.any(self.tau_s >= self.pri_s):
            raise ValueError("delays must be below one PRI (unambiguous range)")
        if np.any(self.b < 0) or np.any(self.xi < 0):
            raise ValueError("amplitudes and channel gains must be nonnegative")

    @property
    def m_tx(self) -> int:
        return len(self.pulses)


@dataclass(frozen=True)
class SyncErrors:
    """Per-path timing (s), frequency (Hz), and phase (rad) errors, plus the
    per-RX carrier error (Hz)."""

    dt: np.ndarray
    df: np.ndarray
    dp: np.ndarray
    dc_rx: np.ndarray

    def __post_init__(self):
        M, N = np.shape(self.dt)
        object.__setattr__(self, "dt", _frozen_array(self.dt, (M, N), "dt"))
        object.__setattr__(self, "df", _frozen_array(self.df, (M, N), "df"))
        object.__setattr__(self, "dp", _frozen_array(self.dp, (M, N), "dp"))
        object.__setattr__(self, "dc_rx", _frozen_array(self.dc_rx, (N,), "dc_rx"))

    @classmethod
    def zeros(cls, m_tx: int, n_rx: int) -> "SyncErrors":
        z = np.zeros((m_tx, n_rx))
        return cls(z, z.copy(), z.copy(), np.zeros(n_rx))

    @property
    def is_zero(self) -> bool:
        return not (self.dt.any() or self.df.any() or self.dp.any()
                    or self.dc_rx.any())


@dataclass(frozen=True)
class PathModel:
    """(S_n, X_mn, h_mn) factorization of one path's noise-free output."""

    S: np.ndarray   # (K, M)
    X: np.ndarray   # (M, M) diagonal
    h: np.ndarray   # (M,)

    def output(self, alpha: complex) -> np.ndarray:
        return alpha * (self.S @ (self.X @ self.h))


def doppler_steering(f_col, k_pulses: int, pri_s: float) -> np.ndarray:
    """K x M Doppler steering matrix; column m is the unit-modulus geometric
    sequence exp(j 2 pi k T_s f_m), k = 0..K-1."""
    if k_pulses < 1:
        raise ValueError("K must be >= 1")
    f_col = np.atleast_1d(np.asarray(f_col, dtype=float))
    k = np.arange(k_pulses)[:, None]
    return np.exp(2j * math.pi * pri_s * k * f_col[None, :])


def af_matrix(sc: Scenario, err: SyncErrors, m: int, n: int,
              caf_engine=caf) -> np.ndarray:
    """M x M diagonal ambiguity-function matrix for MF m at RX n."""
    M = sc.m_tx
    diag = np.zeros(M, dtype=complex)
    if sc.force_orthogonal:
        diag[m] = caf_engine(sc.pulses[m], sc.pulses[m], 0.0, 0.0)
        return np.diag(diag)
    for mb in range(M):
        nu = sc.tau_s[m, n] + err.dt[m, n] - sc.tau_s[mb, n]
        f = sc.doppler_hz[mb, n] - sc.doppler_hz[m, n] - err.df[m, n]
        diag[mb] = caf_engine(sc.pulses[m], sc.pulses[mb], nu, f)
    return np.diag(diag)


def channel_vector(sc: Scenario, err: SyncErrors, m: int, n: int) -> np.ndarray:
    """M-vector of per-waveform complex channel gains for MF m at RX n."""
    M = sc.m_tx
    h = np.zeros(M, dtype=complex)
    fc_eff = sc.carrier_hz + err.dc_rx[n]
    f_samp = sc.doppler_hz[m, n] + err.df[m, n]
    t_samp = sc.tau_s[m, n] + err.dt[m, n]
    for mb in range(M):
        phase = (sc.psi_rad[mb, n]
                 - 2.0 * math.pi * fc_eff * sc.tau_s[mb, n]
                 + 2.0 * math.pi * f_samp * (t_samp - sc.tau_s[mb, n]))
        h[mb] = sc.b[mb] * sc.xi[mb, n] * cmath.exp(1j * phase)
    return h


def path_model(sc: Scenario, err: SyncErrors, m: int, n: int,
               caf_engine=caf) -> PathModel:
    S = doppler_steering(sc.doppler_hz[:, n], sc.k_pulses, sc.pri_s)
    return PathModel(S=S, X=af_matrix(sc, err, m, n, caf_engine),
                     h=channel_vector(sc, err, m, n))


def noise_free_mf_output(sc: Scenario, err: SyncErrors,
                         alpha: complex) -> np.ndarray:
    """(M, N, K) array of noise-free slow-time samples, factorized form."""
    M, N, K = sc.m_tx, sc.n_rx, sc.k_pulses
    out = np.zeros((M, N, K), dtype=complex)
    for n in range(N):
        S = doppler_steering(sc.doppler_hz[:, n], K, sc.pri_s)
        for m in range(M):
            X = af_matrix(sc, err, m, n)
            h = channel_vector(sc, err, m, n)
            out[m, n] = alpha * (S @ (X @ h))
    return out


def slow_time_sample(sc: Scenario, err: SyncErrors, alpha: complex,
                     m: int, n: int, k: int) -> complex:
    """Scalar evaluation of sample k of MF m at RX n: auto term plus M-1
    cross terms.  Independent oracle for the matrix factorization."""
    if not 0 <= k < sc.k_pulses:
        raise ValueError("pulse index out of range")
    fc_eff = sc.carrier_hz + err.dc_rx[n]
    f_mn = sc.doppler_hz[m, n]
    tau_mn = sc.tau_s[m, n]
    dt, df = err.dt[m, n], err.df[m, n]

    if sc.force_orthogonal:
        chi00 = caf(sc.pulses[m], sc.pulses[m], 0.0, 0.0)
        return (alpha * sc.b[m] * sc.xi[m, n] * chi00
                * cmath.exp(1j * (2 * math.pi * k * sc.pri_s * f_mn
                                  - 2 * math.pi * sc.carrier_hz * tau_mn
                                  + sc.psi_rad[m, n])))

    auto = (alpha * sc.b[m] * sc.xi[m, n]
            * cmath.exp(2j * math.pi * k * sc.pri_s * f_mn)
            * caf(sc.pulses[m], sc.pulses[m], dt, -df)
            * cmath.exp(-2j * math.pi * fc_eff * tau_mn)
            * cmath.exp(2j * math.pi * (f_mn + df) * dt)
            * cmath.exp(1j * sc.psi_rad[m, n]))
    cross = 0.0 + 0.0j
    for mb in range(sc.m_tx):
        if mb == m:
            continue
        tau_mb = sc.tau_s[mb, n]
        f_mb = sc.doppler_hz[mb, n]
        cross += (alpha * sc.b[mb] * sc.xi[mb, n]
                  * cmath.exp(1j * sc.psi_rad[mb, n])
                  * cmath.exp(-2j * math.pi * fc_eff * tau_mb)
                  * cmath.exp(2j * math.pi * k * sc.pri_s * f_mb)
                  * caf(sc.pulses[m], sc.pulses[mb],
                        tau_mn + dt - tau_mb, f_mb - f_mn - df)
                  * cmath.exp(2j * math.pi * (f_mn + df) * (tau_mn + dt - tau_mb)))
    return auto + cross


def colocated_scenario(template: Scenario) -> Scenario:
    """Synchronous co-located benchmark: delays, Dopplers, and phases made
    constant across paths, cross-ambiguity terms suppressed exactly."""
    M, N = template.m_tx, template.n_rx
    const = lambda v: np.full((M, N), v)
    return replace(
        template,
        tau_s=const(template.tau_s[0, 0]),
        doppler_hz=const(template.doppler_hz[0, 0]),
        psi_rad=const(template.psi_rad[0, 0]),
        force_orthogonal=True,
    )


def link_budget_xi(r_t_m: float, r_r_m: float, g_t: float, g_r: float,
                   wavelength_m: float) -> float:
    """Channel gain from the bistatic radar range equation."""
    vals = (r_t_m, r_r_m, g_t, g_r, wavelength_m)
    if any(not v > 0 for v in vals):
        raise ValueError("link budget parameters must all be positive")
    return math.sqrt(g_r * g_t * wavelength_m ** 2
                     / ((4 * math.pi) ** 3 * r_t_m ** 2 * r_r_m ** 2))


def xi_from_snr(snr_db: float, b: float, sigma2: float, rho_bar: float) -> float:
    """Back-solve the channel gain so the per-path SNR
    |b xi|^2 E{|alpha|^2} / sigma^2 hits the requested value."""
    if b <= 0:
        raise ValueError("transmit amplitude must be positive")
    return math.sqrt(10.0 ** (snr_db / 10.0) * sigma2 / rho_bar) / b
