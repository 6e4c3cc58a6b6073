"""Forecast accuracy measures and comparison tests.

Level accuracy is measured by mean absolute percentage error, directional
accuracy by directional symmetry (the share of correctly called up/down
moves). Two models are compared by the Diebold-Mariano test under squared
error loss; directional forecasting power of a single model is assessed by
the Pesaran-Timmermann test. Descriptive statistics use the Pearson kurtosis
convention (Gaussian = 3).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import DegenerateInputError, InvalidInputError

__all__ = [
    "AccuracyReport",
    "TestResult",
    "DescriptiveStats",
    "mape",
    "directional_symmetry",
    "dm_test",
    "pt_test",
    "descriptive_stats",
]


@dataclass(frozen=True)
class AccuracyReport:
    """Level and directional accuracy over one evaluation window."""

    mape: float
    ds: float
    n_points: int


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    alternative: str  # "two_sided" | "less" | "greater"


@dataclass(frozen=True)
class DescriptiveStats:
    minimum: float
    maximum: float
    mean: float
    std: float
    skewness: float
    kurtosis: float


def _aligned(actual, forecast, min_len: int, what: str) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=float)
    f = np.asarray(forecast, dtype=float)
    if a.ndim != 1 or f.ndim != 1 or a.shape != f.shape:
        raise InvalidInputError(f"{what}: actual and forecast must be 1-D of equal length")
    if a.size < min_len:
        raise InvalidInputError(f"{what}: need at least {min_len} aligned points, got {a.size}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(f))):
        raise InvalidInputError(f"{what}: non-finite values present")
    return a, f


def mape(actual, forecast) -> float:
    """Mean absolute percentage error, in percent.

    Every actual value must be nonzero; a zero actual makes the percentage
    error undefined and raises with the offending index.
    """
    a, f = _aligned(actual, forecast, 1, "mape")
    zero = np.nonzero(a == 0.0)[0]
    if zero.size:
        raise InvalidInputError(f"mape: actual value at index {int(zero[0])} is zero")
    return float(np.mean(np.abs((a - f) / a)) * 100.0)


def directional_symmetry(actual, forecast) -> float:
    """Share of transitions whose direction the forecast called correctly, %.

    A transition t counts as correct when
    ``(y[t+1] - y[t]) * (yhat[t+1] - y[t]) >= 0``; with T aligned points
    there are T - 1 transitions.
    """
    a, f = _aligned(actual, forecast, 2, "directional_symmetry")
    hits = (a[1:] - a[:-1]) * (f[1:] - a[:-1]) >= 0.0
    return float(np.mean(hits) * 100.0)


def _normal_p_value(statistic: float, alternative: str) -> float:
    if alternative == "two_sided":
        return float(2.0 * norm.sf(abs(statistic)))
    if alternative == "less":
        return float(norm.cdf(statistic))
    if alternative == "greater":
        return float(norm.sf(statistic))
    raise InvalidInputError(f"unknown alternative {alternative!r}")


def dm_test(errors_a, errors_b, horizon: int = 1, alternative: str = "two_sided") -> TestResult:
    """Diebold-Mariano test of equal expected squared-error loss.

    The loss differential is ``d_t = e_a[t]**2 - e_b[t]**2``; its long-run
    variance is estimated from sample autocovariances up to lag
    ``horizon - 1`` with rectangular truncation, and the statistic is
    referred to the standard normal. A negative statistic means model ``a``
    has the smaller loss. When the truncated long-run variance estimate is
    not positive (possible for horizon > 1) it falls back to the lag-0
    autocovariance.
    """
    a, b = _aligned(errors_a, errors_b, 10, "dm_test")
    if horizon < 1:
        raise InvalidInputError("dm_test: horizon must be >= 1")
    d = a**2 - b**2
    t = d.size
    dbar = float(np.mean(d))
    centered = d - dbar
    gamma0 = float(np.dot(centered, centered)) / t
    if gamma0 == 0.0:
        raise DegenerateInputError("dm_test: forecasts identical under loss")
    lrv = gamma0
    for lag in range(1, min(horizon, t)):
        lrv += 2.0 * float(np.dot(centered[lag:], centered[:-lag])) / t
    if lrv <= 0.0:
        lrv = gamma0
    statistic = dbar / np.sqrt(lrv / t)
    return TestResult(float(statistic), _normal_p_value(statistic, alternative), alternative)


def pt_test(actual, forecast, alternative: str = "greater") -> TestResult:
    """Pesaran-Timmermann test of directional forecasting power.

    Directions are ``sign(y[t+1] - y[t])`` versus ``sign(yhat[t+1] - y[t])``,
    consistent with :func:`directional_symmetry`. The observed agreement rate
    is compared with the rate expected were the two direction sequences
    independent, studentized by the Pesaran-Timmermann variance expression.
    """
    a, f = _aligned(actual, forecast, 11, "pt_test")
    up_actual = (a[1:] - a[:-1]) > 0.0
    up_forecast = (f[1:] - a[:-1]) > 0.0
    t = up_actual.size
    if t < 10:
        raise InvalidInputError("pt_test: need at least 10 transitions")
    py = float(np.mean(up_actual))
    pz = float(np.mean(up_forecast))
    if py in (0.0, 1.0):
        raise DegenerateInputError("pt_test: all actual directions identical")
    p_hat = float(np.mean(up_actual == up_forecast))
    p_star = py * pz + (1.0 - py) * (1.0 - pz)
    var_p = p_star * (1.0 - p_star) / t
    var_star = (
        (2.0 * py - 1.0) ** 2 * pz * (1.0 - pz)
        + (2.0 * pz - 1.0) ** 2 * py * (1.0 - py)
        + 4.0 * py * pz * (1.0 - py) * (1.0 - pz) / t
    ) / t
    denom = var_p - var_star
    if denom <= 0.0:
        raise DegenerateInputError("pt_test: variance expression collapsed")
    statistic = (p_hat - p_star) / np.sqrt(denom)
    return TestResult(float(statistic), _normal_p_value(statistic, alternative), alternative)


def descriptive_stats(series) -> DescriptiveStats:
    """Min, max, mean, sample std, skewness m3/m2^1.5 and Pearson kurtosis m4/m2^2."""
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 4:
        raise InvalidInputError("descriptive_stats needs at least 4 values")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("series contains non-finite values")
    mean = float(np.mean(x))
    centered = x - mean
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        warnings.warn("descriptive_stats: constant series, skewness/kurtosis set to 0")
        skew = kurt = 0.0
    else:
        skew = float(np.mean(centered**3) / m2**1.5)
        kurt = float(np.mean(centered**4) / m2**2)
    return DescriptiveStats(
        minimum=float(np.min(x)),
        maximum=float(np.max(x)),
        mean=mean,
        std=float(np.std(x, ddof=1)),
        skewness=skew,
        kurtosis=kurt,
    )
