"""Seasonal ARIMA estimation and forecasting.

Models follow the multiplicative form ``phi(B) PHI(B^s) w_t = theta(B)
THETA(B^s) eps_t`` on the differenced series ``w = (1-B)^d (1-B^s)^D x``,
with the negative-sign convention for every polynomial
(``theta(B) = 1 - theta_1 B - ...``). Estimation maximizes the conditional
sum-of-squares Gaussian likelihood with Nelder-Mead over a partial
autocorrelation reparameterization, which keeps all AR roots (stationarity)
and MA roots (invertibility) outside the unit circle by construction.

Automatic order selection chooses ``d`` by repeated KPSS level tests, ``D``
by a seasonal autocorrelation threshold, and ``(p, q, P, Q)`` by a stepwise
AIC neighborhood search.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize
import scipy.signal

from .errors import InvalidInputError, NumericalFailureError

__all__ = [
    "ArimaOrder",
    "OrderBounds",
    "ArimaModel",
    "fit",
    "auto_fit",
    "forecast",
    "apply_coefficients",
    "difference",
    "integrate_future",
    "kpss_level_statistic",
]

KPSS_CRITICAL_5PCT = 0.463
SEASONAL_ACF_THRESHOLD = 0.4


@dataclass(frozen=True)
class ArimaOrder:
    """(p, d, q)(P, D, Q)_s orders; s = 0 means a plain ARIMA model."""

    p: int
    d: int
    q: int
    P: int = 0
    D: int = 0
    Q: int = 0
    s: int = 0

    def __post_init__(self) -> None:
        vals = (self.p, self.d, self.q, self.P, self.D, self.Q, self.s)
        if any(v < 0 for v in vals):
            raise InvalidInputError(f"orders must be nonnegative: {self}")
        if self.s == 0 and (self.P or self.D or self.Q):
            raise InvalidInputError("seasonal terms require a seasonal period s > 0")
        if self.s == 1:
            raise InvalidInputError("seasonal period s must be 0 or >= 2")
        if self.d + self.D > 3:
            raise InvalidInputError(f"total differencing d + D must be <= 3: {self}")

    @property
    def n_coeffs(self) -> int:
        return self.p + self.q + self.P + self.Q

    def label(self) -> str:
        if self.s:
            return f"({self.p},{self.d},{self.q})({self.P},{self.D},{self.Q})_{self.s}"
        return f"({self.p},{self.d},{self.q})"


@dataclass(frozen=True)
class OrderBounds:
    max_p: int = 5
    max_q: int = 5
    max_P: int = 2
    max_Q: int = 2
    max_d: int = 2
    max_D: int = 1


@dataclass(frozen=True)
class TrainingTail:
    """State retained for the forecast recursion and inverse differencing."""

    w_tail: np.ndarray  # last AR-span values of the differenced series
    resid_tail: np.ndarray  # last MA-span residuals
    stages: tuple[tuple[str, int, np.ndarray], ...]  # differencing stage tails


@dataclass(frozen=True)
class ArimaModel:
    order: ArimaOrder
    ar: np.ndarray
    ma: np.ndarray
    sar: np.ndarray
    sma: np.ndarray
    intercept: float
    sigma2: float
    loglik: float
    aic: float
    n_params: int
    training_tail: TrainingTail
    resid: np.ndarray = field(repr=False)  # aligned to the input series, NaN head

    @property
    def fitted_values(self) -> np.ndarray:
        """One-step in-sample fitted values (actual minus residual)."""
        return self._series - self.resid

    @property
    def has_intercept(self) -> bool:
        return self.n_params == self.order.n_coeffs + 2

    # original series retained only to derive fitted values
    _series: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]


# ---------------------------------------------------------------------------
# differencing

def difference(x: np.ndarray, d: int, D: int, s: int):
    """Apply (1-B^s)^D then (1-B)^d; return the result and stage tails.

    The recorded stages let :func:`integrate_future` undo the differencing
    for forecasts appended after the end of the series.
    """
    cur = np.asarray(x, dtype=float)
    stages: list[tuple[str, int, np.ndarray]] = []
    for _ in range(D):
        if cur.size <= s:
            raise InvalidInputError("series too short for seasonal differencing")
        stages.append(("seasonal", s, cur[-s:].copy()))
        cur = cur[s:] - cur[:-s]
    for _ in range(d):
        if cur.size <= 1:
            raise InvalidInputError("series too short for differencing")
        stages.append(("ordinary", 1, cur[-1:].copy()))
        cur = np.diff(cur)
    return cur, tuple(stages)


def integrate_future(stages, w_future: np.ndarray) -> np.ndarray:
    """Invert :func:`difference` for values that extend past the sample."""
    vals = np.asarray(w_future, dtype=float)
    for kind, s, tail in reversed(stages):
        out = np.empty_like(vals)
        if kind == "ordinary":
            out = tail[-1] + np.cumsum(vals)
        else:
            for j in range(vals.size):
                prev = tail[j] if j < s else out[j - s]
                out[j] = vals[j] + prev
        vals = out
    return vals


# ---------------------------------------------------------------------------
# parameterization

def _pacf_to_coeffs(pacf: np.ndarray) -> np.ndarray:
    """Durbin-Levinson map from partial autocorrelations in (-1, 1) to
    coefficients of a polynomial 1 - c1 z - ... with roots outside the unit
    circle."""
    coeffs = np.zeros(0)
    for r in pacf:
        coeffs = np.append(coeffs - r * coeffs[::-1], r)
    return coeffs


def _unconstrained_to_coeffs(u: np.ndarray) -> np.ndarray:
    return _pacf_to_coeffs(u / np.sqrt(1.0 + u**2))


def _expand_seasonal(coeffs: np.ndarray, s: int) -> np.ndarray:
    """Polynomial coefficients of 1 - c1 B^s - c2 B^2s - ... (length P*s+1)."""
    poly = np.zeros(coeffs.size * s + 1)
    poly[0] = 1.0
    poly[s::s] = -coeffs
    return poly


def _full_polys(ar, sar, ma, sma, s):
    ar_poly = np.concatenate(([1.0], -np.asarray(ar, dtype=float)))
    ma_poly = np.concatenate(([1.0], -np.asarray(ma, dtype=float)))
    if s:
        ar_poly = np.convolve(ar_poly, _expand_seasonal(np.asarray(sar, float), s))
        ma_poly = np.convolve(ma_poly, _expand_seasonal(np.asarray(sma, float), s))
    return ar_poly, ma_poly


def _css_residuals(w: np.ndarray, mu: float, ar_poly: np.ndarray, ma_poly: np.ndarray):
    """Residuals of the conditional sum-of-squares recursion.

    Conditions on the first ``len(ar_poly) - 1`` observations and zero
    pre-sample residuals; returns residuals aligned from that offset on.
    """
    wc = w - mu
    span = ar_poly.size - 1
    if wc.size <= span:
        raise InvalidInputError("differenced series shorter than the AR span")
    z = np.convolve(wc, ar_poly, mode="valid")
    eps = scipy.signal.lfilter([1.0], ma_poly, z)
    return eps


# ---------------------------------------------------------------------------
# fitting

def fit(series, order: ArimaOrder, include_intercept: bool | None = None) -> ArimaModel:
    """Estimate a (seasonal) ARIMA model by conditional sum of squares.

    The intercept (mean of the differenced series) is included when
    ``d + D == 0`` unless overridden. Coefficients returned always satisfy
    the stationarity and invertibility root conditions.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise InvalidInputError("series must be 1-D")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("series contains non-finite values")
    o = order
    min_len = 3 * o.n_coeffs + o.d + o.D * o.s + 10
    if x.size < min_len:
        raise InvalidInputError(
            f"series of length {x.size} too short for order {o.label()} "
            f"(need >= {min_len})"
        )
    if include_intercept is None:
        include_intercept = (o.d + o.D) == 0

    w, stages = difference(x, o.d, o.D, o.s)
    w_mean = float(np.mean(w)) if include_intercept else 0.0
    w_sd = float(np.std(w))
    if w_sd == 0.0:
        w_sd = 1.0
    ws = (w - w_mean) / w_sd

    sizes = (o.p, o.q, o.P, o.Q)
    offsets = np.cumsum((0,) + sizes)
    n_free = offsets[-1] + (1 if include_intercept else 0)

    def unpack(theta: np.ndarray):
        ar = _unconstrained_to_coeffs(theta[offsets[0]:offsets[1]])
        ma = _unconstrained_to_coeffs(theta[offsets[1]:offsets[2]])
        sar = _unconstrained_to_coeffs(theta[offsets[2]:offsets[3]])
        sma = _unconstrained_to_coeffs(theta[offsets[3]:offsets[4]])
        mu = theta[offsets[4]] if include_intercept else 0.0
        return ar, ma, sar, sma, mu

    def objective(theta: np.ndarray) -> float:
        ar, ma, sar, sma, mu = unpack(theta)
        ar_poly, ma_poly = _full_polys(ar, sar, ma, sma, o.s)
        eps = _css_residuals(ws, mu, ar_poly, ma_poly)
        ssr = float(np.dot(eps, eps))
        return ssr if np.isfinite(ssr) else 1e300

    if n_free:
        theta0 = np.zeros(n_free)
        result = scipy.optimize.minimize(
            objective,
            theta0,
            method="Nelder-Mead",
            options={
                "xatol": 1e-6,
                "fatol": 1e-10,
                "maxiter": 400 * max(n_free, 1) + 400,
                "maxfev": 400 * max(n_free, 1) + 400,
            },
        )
        if not np.isfinite(result.fun):
            raise NumericalFailureError(
                f"CSS optimization failed for order {o.label()}",
                message=str(result.message),
            )
        theta_hat = result.x
    else:
        theta_hat = np.zeros(0)

    ar, ma, sar, sma, mu_s = unpack(theta_hat) if n_free else (
        np.zeros(0), np.zeros(0), np.zeros(0), np.zeros(0), 0.0
    )
    mu = w_mean + mu_s * w_sd if include_intercept else 0.0

    ar_poly, ma_poly = _full_polys(ar, sar, ma, sma, o.s)
    eps = _css_residuals(w, mu, ar_poly, ma_poly)
    n_eff = eps.size
    sigma2 = float(np.dot(eps, eps)) / n_eff
    loglik = -0.5 * n_eff * (np.log(2.0 * np.pi) + np.log(max(sigma2, 1e-300)) + 1.0)
    n_params = o.n_coeffs + (1 if include_intercept else 0) + 1  # + sigma2
    aic = -2.0 * loglik + 2.0 * n_params

    span = ar_poly.size - 1
    w_tail = (w - mu)[w.size - span:] if span else np.zeros(0)
    ma_span = ma_poly.size - 1
    resid_tail = eps[eps.size - ma_span:] if ma_span else np.zeros(0)

    resid_full = np.full(x.size, np.nan)
    resid_full[x.size - n_eff:] = eps

    return ArimaModel(
        order=o,
        ar=ar,
        ma=ma,
        sar=sar,
        sma=sma,
        intercept=mu,
        sigma2=sigma2,
        loglik=float(loglik),
        aic=float(aic),
        n_params=n_params,
        training_tail=TrainingTail(w_tail=w_tail, resid_tail=resid_tail, stages=stages),
        resid=resid_full,
        _series=x,
    )


def forecast(model: ArimaModel, h: int) -> np.ndarray:
    """Minimum-MSE recursion on the differenced scale, then inverse
    differencing back to the level of the input series."""
    if h < 1:
        raise InvalidInputError("forecast horizon must be >= 1")
    o = model.order
    ar_poly, ma_poly = _full_polys(model.ar, model.sar, model.ma, model.sma, o.s)
    span = ar_poly.size - 1
    ma_span = ma_poly.size - 1
    w_hist = list(model.training_tail.w_tail)
    eps_hist = list(model.training_tail.resid_tail)
    future = np.empty(h)
    for j in range(h):
        val = 0.0
        for i in range(1, span + 1):
            val -= ar_poly[i] * w_hist[-i]
        # Future innovations are zero; only in-sample residuals contribute.
        for m in range(j + 1, ma_span + 1):
            val += ma_poly[m] * eps_hist[ma_span + j - m]
        future[j] = val
        w_hist.append(val)
    future += model.intercept
    return integrate_future(model.training_tail.stages, future)


def apply_coefficients(model: ArimaModel, series) -> ArimaModel:
    """Rebuild residuals and forecast state on new data, keeping the fitted
    coefficients. Used between refits in rolling-origin evaluation."""
    x = np.asarray(series, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("series contains non-finite values")
    o = model.order
    w, stages = difference(x, o.d, o.D, o.s)
    ar_poly, ma_poly = _full_polys(model.ar, model.sar, model.ma, model.sma, o.s)
    eps = _css_residuals(w, model.intercept, ar_poly, ma_poly)
    n_eff = eps.size
    sigma2 = float(np.dot(eps, eps)) / n_eff
    loglik = -0.5 * n_eff * (np.log(2.0 * np.pi) + np.log(max(sigma2, 1e-300)) + 1.0)
    span = ar_poly.size - 1
    ma_span = ma_poly.size - 1
    resid_full = np.full(x.size, np.nan)
    resid_full[x.size - n_eff:] = eps
    return ArimaModel(
        order=o,
        ar=model.ar,
        ma=model.ma,
        sar=model.sar,
        sma=model.sma,
        intercept=model.intercept,
        sigma2=sigma2,
        loglik=float(loglik),
        aic=float(-2.0 * loglik + 2.0 * model.n_params),
        n_params=model.n_params,
        training_tail=TrainingTail(
            w_tail=(w - model.intercept)[w.size - span:] if span else np.zeros(0),
            resid_tail=eps[eps.size - ma_span:] if ma_span else np.zeros(0),
            stages=stages,
        ),
        resid=resid_full,
        _series=x,
    )


# ---------------------------------------------------------------------------
# automatic order selection

def kpss_level_statistic(x: np.ndarray) -> float:
    """KPSS statistic for level stationarity with a Bartlett long-run
    variance estimate (legacy lag rule)."""
    v = np.asarray(x, dtype=float)
    n = v.size
    if n < 12:
        raise InvalidInputError("kpss needs at least 12 observations")
    e = v - np.mean(v)
    s = np.cumsum(e)
    lags = int(np.ceil(12.0 * (n / 100.0) ** 0.25))
    lags = min(lags, n - 1)
    lrv = float(np.dot(e, e)) / n
    for lag in range(1, lags + 1):
        weight = 1.0 - lag / (lags + 1.0)
        lrv += 2.0 * weight * float(np.dot(e[lag:], e[:-lag])) / n
    if lrv <= 0.0:
        lrv = float(np.dot(e, e)) / n
    return float(np.dot(s, s) / (n**2 * lrv))


def _seasonal_acf(x: np.ndarray, lag: int) -> float:
    v = np.asarray(x, dtype=float)
    if v.size <= lag + 2:
        return 0.0
    e = v - np.mean(v)
    denom = float(np.dot(e, e))
    if denom == 0.0:
        return 0.0
    return float(np.dot(e[lag:], e[:-lag]) / denom)


def _choose_d(x: np.ndarray, max_d: int) -> int:
    cur = np.asarray(x, dtype=float)
    d = 0
    while d < max_d and kpss_level_statistic(cur) > KPSS_CRITICAL_5PCT:
        cur = np.diff(cur)
        d += 1
    return d


def auto_fit(series, s: int = 0, bounds: OrderBounds | None = None) -> ArimaModel:
    """AIC-based stepwise order selection, then the best fitted model.

    ``d`` comes from successive KPSS level tests (5 percent), ``D`` is 1
    when the seasonal autocorrelation at lag ``s`` of the d-differenced
    series exceeds 0.4, and (p, q, P, Q) are found by a stepwise neighborhood
    search seeded at the usual starting orders. Under single differencing a
    drift term competes by AIC as well. Ties in AIC break toward fewer
    parameters, then lexicographically smaller orders. Deterministic.
    """
    x = np.asarray(series, dtype=float)
    if bounds is None:
        bounds = OrderBounds()
    d = _choose_d(x, bounds.max_d)
    if s:
        dd = x.copy()
        for _ in range(d):
            dd = np.diff(dd)
        D = 1 if (bounds.max_D >= 1 and _seasonal_acf(dd, s) > SEASONAL_ACF_THRESHOLD) else 0
    else:
        D = 0

    cache: dict[tuple[int, int, int, int], ArimaModel | None] = {}
    failures: list[str] = []
    # R's forecast package (the reference auto-selection tool) also entertains
    # a drift term under single differencing; AIC arbitrates per order.
    drift_options = (False, True) if d + D == 1 else (None,)

    def evaluate(p: int, q: int, P: int, Q: int) -> ArimaModel | None:
        key = (p, q, P, Q)
        if key in cache:
            return cache[key]
        best: ArimaModel | None = None
        for drift in drift_options:
            try:
                m = fit(x, ArimaOrder(p, d, q, P, D, Q, s), include_intercept=drift)
            except (InvalidInputError, NumericalFailureError) as exc:
                failures.append(f"{ArimaOrder(p, d, q, P, D, Q, s).label()}: {exc}")
                continue
            if best is None or (m.aic, m.n_params) < (best.aic, best.n_params):
                best = m
        cache[key] = best
        return best

    def sort_key(item: tuple[tuple[int, int, int, int], ArimaModel]):
        key, model = item
        return (model.aic, model.n_params, key)

    if s:
        seeds = [(2, 2, 1, 1), (0, 0, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1)]
    else:
        seeds = [(2, 2, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)]
    seeds = [
        (min(p, bounds.max_p), min(q, bounds.max_q), min(P, bounds.max_P), min(Q, bounds.max_Q))
        for (p, q, P, Q) in seeds
    ]

    evaluated = {key: m for key in dict.fromkeys(seeds) if (m := evaluate(*key)) is not None}
    if not evaluated:
        raise NumericalFailureError(
            "auto_fit: every seed model failed to fit", attempts=failures
        )
    best_key, best_model = min(evaluated.items(), key=sort_key)

    for _ in range(60):  # stepwise moves; search space is tiny so this is ample
        p, q, P, Q = best_key
        neighbors = [(p + dp, q, P, Q) for dp in (-1, 1)] + [(p, q + dq, P, Q) for dq in (-1, 1)]
        if s:
            neighbors += [(p, q, P + dP, Q) for dP in (-1, 1)] + [(p, q, P, Q + dQ) for dQ in (-1, 1)]
        candidates = dict(evaluated)
        for cand in neighbors:
            cp, cq, cP, cQ = cand
            if not (0 <= cp <= bounds.max_p and 0 <= cq <= bounds.max_q):
                continue
            if not (0 <= cP <= bounds.max_P and 0 <= cQ <= bounds.max_Q):
                continue
            m = evaluate(cp, cq, cP, cQ)
            if m is not None:
                candidates[cand] = m
        new_key, new_model = min(candidates.items(), key=sort_key)
        evaluated = candidates
        if new_key == best_key:
            break
        best_key, best_model = new_key, new_model

    return best_model
