"""Sample autocovariance/autocorrelation and theoretical AR autocorrelations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, NonStationaryModelError, ZeroVarianceError

WHITE_NOISE_BAND_Z = 1.96


@dataclass(frozen=True)
class AcfEstimate:
    """Biased-estimator ACF up to ``max_lag`` with the white-noise plot band."""

    lags: np.ndarray
    autocovariance: np.ndarray
    autocorrelation: np.ndarray
    n: int
    band: float


def autocovariance(x: Sequence[float], max_lag: int) -> np.ndarray:
    """gamma_hat_h for h = 0..max_lag with the positive semi-definite divisor N."""
    arr = np.asarray(x, dtype=float)
    n = arr.size
    if max_lag < 0:
        raise InvalidArgumentError(f"max_lag must be >= 0, got {max_lag}")
    if max_lag >= n:
        raise InvalidArgumentError(
            f"max_lag={max_lag} must be smaller than the sample size N={n}")
    centered = arr - arr.mean()
    out = np.empty(max_lag + 1)
    for h in range(max_lag + 1):
        out[h] = float((centered[: n - h] * centered[h:]).sum()) / n
    return out


def sample_acf(x: Sequence[float], max_lag: int) -> AcfEstimate:
    """Sample ACF; requires a non-constant input and max_lag < N."""
    if max_lag < 1:
        raise InvalidArgumentError(f"max_lag must be >= 1, got {max_lag}")
    gamma = autocovariance(x, max_lag)
    if gamma[0] <= 0.0:
        raise ZeroVarianceError("sample ACF is undefined for a constant series")
    n = int(np.asarray(x).size)
    return AcfEstimate(
        lags=np.arange(max_lag + 1),
        autocovariance=gamma,
        autocorrelation=gamma / gamma[0],
        n=n,
        band=WHITE_NOISE_BAND_Z / np.sqrt(n),
    )


def theoretical_ar_acf(model, max_lag: int) -> np.ndarray:
    """Autocorrelations rho_0..rho_max_lag implied by a stationary AR model.

    Solves the order-p Yule-Walker system for the first p autocorrelations and
    extends by the recursion rho_h = sum_j phi_j rho_{h-j}.
    """
    from .armodel import is_stationary  # local import to avoid a cycle

    if max_lag < 1:
        raise InvalidArgumentError(f"max_lag must be >= 1, got {max_lag}")
    if not is_stationary(model):
        raise NonStationaryModelError(
            "theoretical ACF requires a stationary model (all roots outside the unit circle)")
    phi = np.asarray(model.phi, dtype=float)
    p = phi.size
    rho = np.zeros(max_lag + 1)
    rho[0] = 1.0
    if p == 0:
        return rho

    # Yule-Walker: rho_k = sum_j phi_j rho_{|k-j|}, k = 1..p, as a linear system.
    from ._linalg import solve_linear_system

    a = np.zeros((p, p))
    b = np.zeros(p)
    for k in range(1, p + 1):
        b[k - 1] = phi[k - 1]
        for j in range(1, p + 1):
            lag = abs(k - j)
            if lag == 0:
                continue
            a[k - 1, lag - 1] += phi[j - 1]
    head = solve_linear_system(np.eye(p) - a, b)
    upto = min(p, max_lag)
    rho[1: upto + 1] = head[:upto]
    for h in range(p + 1, max_lag + 1):
        rho[h] = float(phi @ rho[h - p: h][::-1])
    return rho
