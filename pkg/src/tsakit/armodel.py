"""AR(p) estimation, AIC order identification, root checks, and simulators.

Yule-Walker fits run Levinson-Durbin on the biased autocovariances, which keeps
every fitted model stationary; conditional least squares is the alternative
estimator whose stationarity is checked but not enforced. Order selection
minimizes AIC(k) = ln(sigma2_k) + 2k/N with ties broken toward the smaller
order. Simulators draw Gaussian innovations from the counter-based generator so
that output is a pure function of (model, n, seed).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import rng
from ._linalg import least_squares, polynomial_roots
from .correlation import autocovariance
from .errors import (DegenerateFitError, InvalidArgumentError,
                     NonStationaryModelError, ZeroVarianceError)
from .series import TimeSeries

UNIT_ROOT_TOL = 1e-8


@dataclass(frozen=True)
class ArModel:
    """AR(p) model x_t - mean = sum_j phi_j (x_{t-j} - mean) + w_t."""

    phi: tuple[float, ...]
    sigma2: float
    mean: float = 0.0
    estimation_method: str = "specified"
    n_used: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(float(v) for v in self.phi))
        if not all(math.isfinite(v) for v in self.phi):
            raise InvalidArgumentError("AR coefficients must be finite")
        if not (math.isfinite(self.sigma2) and self.sigma2 >= 0.0):
            raise InvalidArgumentError(
                f"innovation variance must be >= 0, got {self.sigma2}")

    @property
    def order(self) -> int:
        return len(self.phi)


@dataclass(frozen=True)
class AicRow:
    order: int
    sigma2: Optional[float]
    aic: Optional[float]
    error: Optional[str] = None


@dataclass(frozen=True)
class AicTable:
    rows: tuple[AicRow, ...]
    selected_order: int
    method: str
    n: int

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "n": self.n,
            "selected_order": self.selected_order,
            "rows": [{"order": r.order, "sigma2": r.sigma2, "aic": r.aic,
                      "error": r.error} for r in self.rows],
        }


@dataclass(frozen=True)
class RandomWalkSpec:
    """Random walk with drift: y_t = drift + y_{t-1} + innovation_t."""

    drift: float = 0.0
    innovation_sigma2: float = 1.0
    y0: float = 0.0

    def __post_init__(self):
        if self.innovation_sigma2 <= 0.0:
            raise InvalidArgumentError(
                f"innovation variance must be > 0, got {self.innovation_sigma2}")


@dataclass(frozen=True)
class RandomWalkMoments:
    mean: float
    variance: float
    autocovariance: float
    acf: float


def levinson_durbin(gamma: Sequence[float], order: int) -> tuple[list[np.ndarray], list[float]]:
    """Levinson-Durbin recursion on autocovariances gamma_0..gamma_order.

    Returns (phis, variances): ``phis[k]`` holds the order-k coefficient vector
    and ``variances[k]`` the innovation variance, for k = 0..order.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.size < order + 1:
        raise InvalidArgumentError("need autocovariances up to the requested order")
    if gamma[0] <= 0.0:
        raise ZeroVarianceError("lag-zero autocovariance must be positive")
    phis: list[np.ndarray] = [np.empty(0)]
    variances = [float(gamma[0])]
    phi = np.empty(0)
    v = float(gamma[0])
    for k in range(1, order + 1):
        num = gamma[k] - float(phi @ gamma[k - 1:0:-1]) if k > 1 else gamma[1]
        kappa = num / v
        if not math.isfinite(kappa) or abs(kappa) >= 1.0:
            raise DegenerateFitError(
                f"reflection coefficient magnitude >= 1 at order {k} (got {kappa})")
        phi = np.concatenate((phi - kappa * phi[::-1], [kappa]))
        v *= 1.0 - kappa * kappa
        phis.append(phi.copy())
        variances.append(v)
    return phis, variances


def fit_ar_yule_walker(x: Sequence[float], p: int) -> ArModel:
    """Order-p Yule-Walker fit; the result is always stationary."""
    arr = np.asarray(x, dtype=float)
    n = arr.size
    if p < 0:
        raise InvalidArgumentError(f"order must be >= 0, got {p}")
    if p >= n / 2:
        raise InvalidArgumentError(f"order p={p} must be below N/2 with N={n}")
    gamma = autocovariance(arr, p)
    if gamma[0] <= 0.0:
        raise ZeroVarianceError("Yule-Walker requires a non-constant series")
    phis, variances = levinson_durbin(gamma, p)
    return ArModel(phi=tuple(phis[p]), sigma2=variances[p], mean=float(arr.mean()),
                   estimation_method="yule_walker", n_used=n)


def fit_ar_least_squares(x: Sequence[float], p: int) -> ArModel:
    """Conditional least squares with intercept, regressing x_t on its p lags."""
    arr = np.asarray(x, dtype=float)
    n = arr.size
    if p < 1:
        raise InvalidArgumentError(f"order must be >= 1, got {p}")
    if p >= n - 1:
        raise InvalidArgumentError(f"order p={p} must be below N-1 with N={n}")
    rows = n - p
    design = np.ones((rows, p + 1))
    for j in range(1, p + 1):
        design[:, j] = arr[p - j: n - j]
    target = arr[p:]
    beta, sse = least_squares(design, target)
    intercept = float(beta[0])
    phi = tuple(float(v) for v in beta[1:])
    sigma2 = sse / (n - p)
    phi_sum = sum(phi)
    mean = intercept / (1.0 - phi_sum) if abs(1.0 - phi_sum) > 1e-10 else float(arr.mean())
    return ArModel(phi=phi, sigma2=max(sigma2, 0.0), mean=mean,
                   estimation_method="least_squares", n_used=n)


def select_order_aic(x: Sequence[float], max_order: int,
                     method: str = "yule_walker") -> AicTable:
    """Evaluate AIC(k) = ln(sigma2_k) + 2k/N for k = 0..max_order."""
    arr = np.asarray(x, dtype=float)
    n = arr.size
    if max_order < 1:
        raise InvalidArgumentError(f"max_order must be >= 1, got {max_order}")
    if max_order >= n / 2:
        raise InvalidArgumentError(
            f"max_order K={max_order} must be below N/2 with N={n}")
    if method not in ("yule_walker", "least_squares"):
        raise InvalidArgumentError(f"unknown estimator {method!r}")

    rows: list[AicRow] = []
    if method == "yule_walker":
        gamma = autocovariance(arr, max_order)
        if gamma[0] <= 0.0:
            raise ZeroVarianceError("AIC scan requires a non-constant series")
        # A degenerate reflection at order j breaks orders j and above only;
        # earlier orders keep their valid rows.
        failure: Optional[Exception] = None
        variances: list[float] = []
        for k in range(max_order + 1):
            if failure is None:
                try:
                    _, variances = levinson_durbin(gamma, k)
                except DegenerateFitError as exc:
                    failure = exc
            if failure is None:
                rows.append(_aic_row(k, variances[k], n))
            else:
                rows.append(AicRow(order=k, sigma2=None, aic=None,
                                   error=str(failure)))
    else:
        centered = arr - arr.mean()
        sigma2_0 = float((centered ** 2).mean())
        rows.append(_aic_row(0, sigma2_0, n) if sigma2_0 > 0.0 else
                    AicRow(order=0, sigma2=None, aic=None, error="zero variance"))
        for k in range(1, max_order + 1):
            try:
                model = fit_ar_least_squares(arr, k)
                rows.append(_aic_row(k, model.sigma2, n))
            except (DegenerateFitError, InvalidArgumentError) as exc:
                rows.append(AicRow(order=k, sigma2=None, aic=None, error=str(exc)))

    valid = [r for r in rows if r.error is None and r.aic is not None]
    if not valid:
        raise DegenerateFitError("AIC evaluation failed at every candidate order")
    best = min(valid, key=lambda r: (r.aic, r.order))
    return AicTable(rows=tuple(rows), selected_order=best.order, method=method, n=n)


def _aic_row(k: int, sigma2: float, n: int) -> AicRow:
    if sigma2 <= 0.0:
        return AicRow(order=k, sigma2=sigma2, aic=None,
                      error="non-positive innovation variance")
    return AicRow(order=k, sigma2=float(sigma2),
                  aic=math.log(sigma2) + 2.0 * k / n)


def characteristic_roots(model: ArModel) -> np.ndarray:
    """Roots of phi(z) = 1 - phi_1 z - ... - phi_p z^p (empty for p = 0)."""
    if model.order == 0:
        return np.empty(0, dtype=complex)
    coeffs = np.concatenate(([1.0], -np.asarray(model.phi)))
    return polynomial_roots(coeffs)


def is_stationary(model: ArModel) -> bool:
    """True when every characteristic root lies strictly outside the unit circle."""
    if model.order == 0:
        return True
    moduli = np.abs(characteristic_roots(model))
    return bool(moduli.min() > 1.0 + UNIT_ROOT_TOL)


def unit_root_flags(model: ArModel) -> np.ndarray:
    """Boolean flag per root: modulus within UNIT_ROOT_TOL of the unit circle."""
    moduli = np.abs(characteristic_roots(model))
    return np.abs(moduli - 1.0) <= UNIT_ROOT_TOL


def psi_weights(model: ArModel, count: int) -> np.ndarray:
    """First ``count`` coefficients of the MA(infinity) representation."""
    if count < 1:
        raise InvalidArgumentError(f"count must be >= 1, got {count}")
    phi = np.asarray(model.phi)
    p = phi.size
    h = np.zeros(count)
    h[0] = 1.0
    for k in range(1, count):
        j_max = min(k, p)
        h[k] = float(phi[:j_max] @ h[k - j_max: k][::-1])
    return h


def default_burn_in(order: int) -> int:
    return 10 * order + 50


def simulate_ar(model: ArModel, n: int, seed: int,
                burn_in: Optional[int] = None) -> TimeSeries:
    """Simulate a stationary AR model with Gaussian innovations.

    Deterministic in (model, n, seed, burn_in); the recursion warm-starts at
    zero and discards ``burn_in`` samples (default 10p + 50).
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    if burn_in is None:
        burn_in = default_burn_in(model.order)
    if burn_in < 0:
        raise InvalidArgumentError(f"burn_in must be >= 0, got {burn_in}")
    if not is_stationary(model):
        raise NonStationaryModelError(
            "simulate_ar requires a stationary model; integrate a stationary "
            "simulation instead for unit-root processes")
    total = n + burn_in
    innovations = math.sqrt(model.sigma2) * rng.normals(seed, total)
    p = model.order
    if p == 0:
        values = innovations[burn_in:]
    else:
        phi = model.phi
        buf = np.zeros(total + p)
        for t in range(total):
            acc = innovations[t]
            for j in range(p):
                acc += phi[j] * buf[p + t - 1 - j]
            buf[p + t] = acc
        values = buf[p + burn_in:]
    return TimeSeries(values + model.mean)


def simulate_random_walk(spec: RandomWalkSpec, n: int, seed: int) -> TimeSeries:
    """Random walk with drift observed at t = 1..n (the y0 seed is not emitted)."""
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    steps = math.sqrt(spec.innovation_sigma2) * rng.normals(seed, n)
    t = np.arange(1, n + 1, dtype=float)
    return TimeSeries(spec.y0 + spec.drift * t + np.cumsum(steps))


def random_walk_moments(spec: RandomWalkSpec, t: int, k: int) -> RandomWalkMoments:
    """Closed-form mean, variance, lag-k autocovariance and ACF at time t."""
    if t < 1:
        raise InvalidArgumentError(f"t must be >= 1, got {t}")
    if k < 0 or k > t:
        raise InvalidArgumentError(f"lag k must satisfy 0 <= k <= t, got {k}")
    s2 = spec.innovation_sigma2
    return RandomWalkMoments(
        mean=spec.y0 + t * spec.drift,
        variance=t * s2,
        autocovariance=(t - k) * s2,
        acf=(t - k) / t,
    )
