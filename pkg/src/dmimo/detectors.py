"""Test statistics for the four detectors and the GLRT amplitude MLEs.

Measurements are (M, N, K) complex arrays: one K-vector of slow-time
samples per matched filter per receiver.  Statistics accept either a
single measurement cube or a batch with a leading trial axis, which is
what the Monte Carlo engine uses.

  NCD  energy sum of all MF outputs (no phase knowledge)
  ACD  global sum after per-sample phase compensation, equal weights
  CD   matched correlation against the full steering/ambiguity/channel
       template, coherent across antennas
  HD   per-path projection onto the Doppler steering subspace, then
       non-coherent summation
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scene import (
    Scenario,
    SyncErrors,
    af_matrix,
    channel_vector,
    doppler_steering,
)

__all__ = [
    "CompensationSet",
    "ncd_statistic",
    "acd_statistic",
    "cd_statistic",
    "hd_statistic",
    "alpha_mle",
    "beta_mle",
    "doppler_projectors",
]

_RCOND_LIMIT = 1e-12


@dataclass(frozen=True)
class CompensationSet:
    """Receiver-side compensation quantities built from parameter estimates.

    S_hat      (N, K, M) Doppler steering matrices
    X_hat      (M, N, M, M) diagonal ambiguity matrices
    h_hat      (M, N, M) channel vectors
    theta_hat  (M, N, K) per-sample compensation phases
    """

    S_hat: np.ndarray
    X_hat: np.ndarray
    h_hat: np.ndarray
    theta_hat: np.ndarray

    @classmethod
    def from_scenario(cls, sc: Scenario, err: SyncErrors) -> "CompensationSet":
        """Form the hatted quantities from estimates tau + dt, f + df,
        psi + dp.  With zero errors this equals the true path model.

        The hatted steering/ambiguity/channel expressions coincide with
        the error-free model evaluated at the estimated parameters, so the
        same scene builders are reused on a shifted scenario.
        """
        from dataclasses import replace

        est = replace(sc,
                      tau_s=sc.tau_s + err.dt,
                      doppler_hz=sc.doppler_hz + err.df,
                      psi_rad=sc.psi_rad + err.dp)
        M, N, K = sc.m_tx, sc.n_rx, sc.k_pulses
        zero = SyncErrors.zeros(M, N)
        S_hat = np.stack([doppler_steering(est.doppler_hz[:, n], K, sc.pri_s)
                          for n in range(N)])
        X_hat = np.stack([[af_matrix(est, zero, m, n) for n in range(N)]
                          for m in range(M)])
        h_hat = np.stack([[channel_vector(est, zero, m, n) for n in range(N)]
                          for m in range(M)])
        k = np.arange(K)
        theta_hat = (est.psi_rad[:, :, None]
                     - 2.0 * math.pi * sc.carrier_hz * est.tau_s[:, :, None]
                     + 2.0 * math.pi * sc.pri_s * est.doppler_hz[:, :, None]
                     * k[None, None, :])
        return cls(S_hat=S_hat, X_hat=X_hat, h_hat=h_hat, theta_hat=theta_hat)

    @property
    def templates(self) -> np.ndarray:
        """(M, N, K) stack of S_hat X_hat h_hat template vectors."""
        M, N = self.X_hat.shape[:2]
        K = self.S_hat.shape[1]
        v = np.empty((M, N, K), dtype=complex)
        for m in range(M):
            for n in range(N):
                v[m, n] = self.S_hat[n] @ (self.X_hat[m, n] @ self.h_hat[m, n])
        return v


def _check_cube(y):
    y = np.asarray(y)
    if y.ndim not in (3, 4):
        raise ValueError("measurement must be (M, N, K) or (trials, M, N, K)")
    return y


def ncd_statistic(y) -> np.ndarray | float:
    """Energy sum over all MF outputs; invariant to any per-sample phase."""
    y = _check_cube(y)
    out = np.sum(np.abs(y) ** 2, axis=(-3, -2, -1))
    return out[()] if out.ndim == 0 else out


def acd_statistic(y, theta_hat) -> np.ndarray | float:
    """Squared magnitude of the phase-compensated global sum."""
    y = _check_cube(y)
    rot = np.exp(-1j * np.asarray(theta_hat))
    if rot.shape != y.shape[-3:]:
        raise ValueError("theta_hat dimensions must match the measurement")
    out = np.abs(np.sum(rot * y, axis=(-3, -2, -1))) ** 2
    return out[()] if out.ndim == 0 else out


def cd_statistic(y, comp: CompensationSet) -> np.ndarray | float:
    """Matched correlation against the compensation templates, coherently
    summed over every path."""
    y = _check_cube(y)
    v = comp.templates
    if v.shape != y.shape[-3:]:
        raise ValueError("compensation set dimensions must match the measurement")
    out = np.abs(np.einsum("mnk,...mnk->...", np.conj(v), y)) ** 2
    return out[()] if out.ndim == 0 else out


def doppler_projectors(S_hat) -> np.ndarray:
    """Orthonormal bases Q_n (N, K, M) for the Doppler steering subspaces,
    via QR factorization rather than explicit Gram inversion.

    Raises on K < M and on numerically rank-deficient steering matrices
    (near-duplicate Doppler columns), naming the offending receiver.
    """
    S_hat = np.asarray(S_hat)
    N, K, M = S_hat.shape
    if K < M:
        raise ValueError(f"HD needs K >= M, got K={K}, M={M}")
    qs = np.empty((N, K, M), dtype=complex)
    for n in range(N):
        sv = np.linalg.svd(S_hat[n], compute_uv=False)
        if sv[-1] < _RCOND_LIMIT * sv[0]:
            raise ValueError(
                f"Doppler steering matrix for RX {n} is numerically rank "
                f"deficient (reciprocal condition {sv[-1] / sv[0]:.2e})")
        qs[n], _ = np.linalg.qr(S_hat[n])
    return qs


def hd_statistic(y, S_hat) -> np.ndarray | float:
    """Energy of each path's projection onto its Doppler steering subspace,
    summed non-coherently over paths."""
    y = _check_cube(y)
    q = doppler_projectors(S_hat)
    # coeffs: (..., M, N, M') inner products with the orthonormal basis
    coeffs = np.einsum("nkj,...mnk->...mnj", np.conj(q), y)
    out = np.sum(np.abs(coeffs) ** 2, axis=(-3, -2, -1))
    return out[()] if out.ndim == 0 else out


def alpha_mle(y, templates) -> complex:
    """Least-squares target amplitude given the true (M, N, K) template
    stack S X h."""
    y = np.asarray(y)
    v = np.asarray(templates)
    energy = np.sum(np.abs(v) ** 2)
    if energy <= 0.0:
        raise ValueError("template stack has zero energy")
    return complex(np.sum(np.conj(v) * y) / energy)


def beta_mle(y_mn, S_n) -> np.ndarray:
    """Least-squares coefficients of one path's measurement in the Doppler
    steering columns; ||S beta||^2 is that path's HD contribution."""
    S_n = np.asarray(S_n)
    K, M = S_n.shape
    if K < M:
        raise ValueError(f"beta MLE needs K >= M, got K={K}, M={M}")
    sv = np.linalg.svd(S_n, compute_uv=False)
    if sv[-1] < _RCOND_LIMIT * sv[0]:
        raise ValueError("steering matrix is numerically rank deficient")
    beta, *_ = np.linalg.lstsq(S_n, np.asarray(y_mn), rcond=None)
    return beta
