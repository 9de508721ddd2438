"""Ordinary least squares fit of a linear time trend with full inference.

The regressor is the 1-based time index t = 1..N. p-values come from the
in-repo t and F survival functions and are censored below 2.2e-16 to match the
usual statistical-package reporting convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import InsufficientDataError, InvalidArgumentError
from .series import TimeSeries
from .special import betainc_reg

P_VALUE_CENSOR_THRESHOLD = 2.2e-16


class Censoring(Enum):
    EXACT = "exact"
    BELOW_THRESHOLD = "below_threshold"
    ABOVE_THRESHOLD = "above_threshold"


@dataclass(frozen=True)
class PValue:
    """A p-value that may be interval-censored at a reporting threshold."""

    value: float
    censored: Censoring = Censoring.EXACT
    threshold: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise InvalidArgumentError(f"p-value must lie in [0, 1], got {self.value}")
        if self.censored is not Censoring.EXACT and self.threshold is None:
            raise InvalidArgumentError("censored p-values must carry a threshold")

    @classmethod
    def exact_or_censored(cls, p: float) -> "PValue":
        """Censor below the 2.2e-16 reporting threshold, else report exactly."""
        p = min(max(p, 0.0), 1.0)
        if p < P_VALUE_CENSOR_THRESHOLD:
            return cls(p, Censoring.BELOW_THRESHOLD, P_VALUE_CENSOR_THRESHOLD)
        return cls(p)

    def formatted(self) -> str:
        if self.censored is Censoring.BELOW_THRESHOLD:
            return f"< {self.threshold:g}"
        if self.censored is Censoring.ABOVE_THRESHOLD:
            return f">= {self.threshold:g}"
        return f"{self.value:.6g}"

    def to_dict(self) -> dict:
        out = {"value": self.value, "censored": self.censored.value,
               "display": self.formatted()}
        if self.threshold is not None:
            out["threshold"] = self.threshold
        return out


@dataclass(frozen=True)
class LinearTrendFit:
    """OLS fit of x_t = beta0 + beta1 * t + e_t over t = 1..N."""

    beta0: float
    beta1: float
    se_beta0: float
    se_beta1: float
    t_beta0: float
    t_beta1: float
    p_beta0: PValue
    p_beta1: PValue
    r_squared: float
    f_statistic: float
    model_p_value: PValue
    residuals: TimeSeries
    fitted: TimeSeries
    n: int
    dof: int


def t_distribution_sf(t: float, dof: int) -> float:
    """Two-sided tail probability P(|T| >= |t|) for Student's t."""
    if dof < 1:
        raise InvalidArgumentError(f"dof must be >= 1, got {dof}")
    if not math.isfinite(t):
        raise InvalidArgumentError(f"t statistic must be finite, got {t}")
    if t == 0.0:
        return 1.0
    return betainc_reg(dof / 2.0, 0.5, dof / (dof + t * t))


def f_distribution_sf(f: float, dof1: int, dof2: int) -> float:
    """Right-tail probability P(F >= f) for the F distribution."""
    if dof1 < 1 or dof2 < 1:
        raise InvalidArgumentError("both degrees of freedom must be >= 1")
    if f < 0.0:
        raise InvalidArgumentError(f"F statistic must be >= 0, got {f}")
    if f == 0.0:
        return 1.0
    return betainc_reg(dof2 / 2.0, dof1 / 2.0, dof2 / (dof2 + dof1 * f))


def fit_linear_trend(x: TimeSeries) -> LinearTrendFit:
    """Fit the deterministic linear trend and populate all inference fields."""
    n = len(x)
    if n < 3:
        raise InsufficientDataError(
            f"linear trend fit needs at least 3 observations, got {n}")
    y = x.values
    t = np.arange(1, n + 1, dtype=float)
    t_bar = t.mean()
    y_bar = y.mean()
    stt = float(((t - t_bar) ** 2).sum())
    sty = float(((t - t_bar) * (y - y_bar)).sum())

    beta1 = sty / stt
    beta0 = y_bar - beta1 * t_bar
    fitted = beta0 + beta1 * t
    residuals = y - fitted

    dof = n - 2
    sse = float((residuals ** 2).sum())
    sst = float(((y - y_bar) ** 2).sum())
    ssr = beta1 * sty  # = beta1^2 * stt, non-negative by construction
    sigma2 = sse / dof
    r_squared = 1.0 - sse / sst if sst > 0.0 else 0.0

    if sigma2 > 0.0:
        se_beta1 = math.sqrt(sigma2 / stt)
        se_beta0 = math.sqrt(sigma2 * (1.0 / n + t_bar ** 2 / stt))
        t1 = beta1 / se_beta1
        t0 = beta0 / se_beta0
        f_stat = ssr / sigma2
        p0 = PValue.exact_or_censored(t_distribution_sf(t0, dof))
        p1 = PValue.exact_or_censored(t_distribution_sf(t1, dof))
        p_model = PValue.exact_or_censored(f_distribution_sf(f_stat, 1, dof))
    else:
        # Noiseless input: an exact line gives infinite statistics and zero
        # tails; a constant gives null statistics and unit tails.
        se_beta0 = se_beta1 = 0.0
        t0 = math.copysign(math.inf, beta0) if beta0 != 0.0 else 0.0
        t1 = math.copysign(math.inf, beta1) if beta1 != 0.0 else 0.0
        f_stat = math.inf if beta1 != 0.0 else 0.0
        p0 = PValue.exact_or_censored(0.0 if beta0 != 0.0 else 1.0)
        p1 = PValue.exact_or_censored(0.0 if beta1 != 0.0 else 1.0)
        p_model = p1

    return LinearTrendFit(
        beta0=beta0, beta1=beta1,
        se_beta0=se_beta0, se_beta1=se_beta1,
        t_beta0=t0, t_beta1=t1,
        p_beta0=p0, p_beta1=p1,
        r_squared=max(0.0, min(1.0, r_squared)),
        f_statistic=f_stat,
        model_p_value=p_model,
        residuals=x.with_values(residuals),
        fitted=x.with_values(fitted),
        n=n, dof=dof,
    )
