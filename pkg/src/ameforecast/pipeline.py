"""Forecasting pipelines: the adaptive multiscale ensemble and benchmarks.

The ensemble (model id ``AME``) works in four steps on the in-sample window:
pick the mode count from center-frequency separation, decompose with VMD,
route each mode to a specialized forecaster (trend -> ARIMA, seasonal ->
seasonal ARIMA, volatility -> direct LSSVR), and fuse the component
forecasts with an LSSVR combiner trained on in-sample one-step fitted
values.

Multi-step forecasting uses the direct strategy throughout: a separate
model maps lagged values straight to the target ``h`` steps ahead, never
feeding forecasts back recursively. Machine-learning lag sets come from
greedy partial-mutual-information selection against a permutation null.

Out-of-sample evaluation is rolling-origin with an expanding window: every
forecast of ``y[t]`` at horizon ``h`` uses only values up to ``t - h``.
Raw-series statistical benchmarks re-estimate coefficients at every origin
(order selection happens once, on the in-sample window); machine-learning
benchmarks are trained once and applied to origin-time lags.
Decomposition-based models decompose the in-sample window once by default
(out-of-sample mode values do not exist without peeking), so their
component forecasts are leads from the in-sample end; set
``redecompose=True`` to re-run the decomposition at every origin instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import arima, mlp, svr, vmd
from .errors import InvalidInputError
from .evaluation import AccuracyReport  # noqa: F401  (re-exported for callers)

__all__ = [
    "MODEL_IDS",
    "TimeSeries",
    "SplitSpec",
    "LagSet",
    "ForecastResult",
    "PipelineConfig",
    "select_lags_pmi",
    "build_direct_dataset",
    "ensemble_combine",
    "run_ame",
    "run_benchmark",
]

MODEL_IDS = (
    "AME",
    "VMD-LSSVR",
    "VMD-SVR",
    "VMD-MLP",
    "LSSVR",
    "SVR",
    "MLP",
    "SARIMA",
    "ARIMA",
)


@dataclass(frozen=True)
class TimeSeries:
    """Ordered observations with a calendar start label and seasonal period."""

    values: np.ndarray
    start_label: str = "2000-01"
    period: int = 12

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 2:
            raise InvalidInputError("TimeSeries needs a 1-D sequence of length >= 2")
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("TimeSeries values must be finite")
        if self.period < 1:
            raise InvalidInputError("period must be >= 1")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class SplitSpec:
    """In-sample size (index of the first out-of-sample point) and horizons."""

    in_sample_end: int
    horizons: tuple[int, ...] = (1, 3, 6)

    def __post_init__(self) -> None:
        if not self.horizons or any(h < 1 for h in self.horizons):
            raise InvalidInputError("horizons must be a nonempty list of integers >= 1")
        if self.in_sample_end < 1:
            raise InvalidInputError("in_sample_end must be positive")
        object.__setattr__(self, "horizons", tuple(int(h) for h in self.horizons))


@dataclass(frozen=True)
class LagSet:
    lags: tuple[int, ...]

    def __post_init__(self) -> None:
        lags = tuple(int(v) for v in self.lags)
        if not lags or list(lags) != sorted(set(lags)):
            raise InvalidInputError("lags must be nonempty and strictly increasing")
        if lags[0] < 1 or lags[-1] > 24:
            raise InvalidInputError("lags must be positive integers <= 24")
        object.__setattr__(self, "lags", lags)

    @property
    def max_lag(self) -> int:
        return self.lags[-1]


@dataclass(frozen=True)
class ForecastResult:
    model_id: str
    horizon: int
    forecasts: np.ndarray
    component_forecasts: dict[str, np.ndarray] | None = None


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs shared by every pipeline run; defaults match the experiments."""

    seed: int = 42
    vmd: vmd.VmdConfig = field(default_factory=vmd.VmdConfig)
    k_max: int = 6
    max_lag_order: int = 24
    mlp_config: mlp.MlpConfig = field(default_factory=mlp.MlpConfig)
    arima_bounds: arima.OrderBounds = field(default_factory=arima.OrderBounds)
    stat_refit_every: int = 1  # refit cadence (origins) for ARIMA/SARIMA benchmarks
    ml_refit: bool = False  # refit ML benchmarks at every origin
    redecompose: bool = True  # re-run VMD at every out-of-sample origin
    seasonal_extension: bool = True  # phase-matched VMD boundary extension


# ---------------------------------------------------------------------------
# lag selection and dataset construction

def build_direct_dataset(series, lags: LagSet, h: int):
    """Direct-strategy design matrix: row anchored at time t holds
    ``y[t - lag + 1]`` per lag and targets ``y[t + h]``."""
    x = np.asarray(series, dtype=float)
    if h < 1:
        raise InvalidInputError("horizon must be >= 1")
    max_lag = lags.max_lag
    n_rows = x.size - max_lag - h + 1
    if n_rows < 1:
        raise InvalidInputError(
            f"series of length {x.size} too short for max lag {max_lag} and horizon {h}"
        )
    anchors = np.arange(max_lag - 1, x.size - h)
    cols = [x[anchors - lag + 1] for lag in lags.lags]
    return np.column_stack(cols), x[anchors + h]


def _lag_features_at(series: np.ndarray, anchor: int, lags: LagSet) -> np.ndarray:
    if anchor - lags.max_lag + 1 < 0:
        raise InvalidInputError("anchor does not cover the deepest lag")
    return np.array([series[anchor - lag + 1] for lag in lags.lags])


def _equal_frequency_mi(u: np.ndarray, v: np.ndarray, bins: int = 16) -> float:
    """Mutual information of two samples via equal-frequency binning."""
    n = u.size
    edges_u = np.quantile(u, np.linspace(0, 1, bins + 1)[1:-1])
    edges_v = np.quantile(v, np.linspace(0, 1, bins + 1)[1:-1])
    iu = np.searchsorted(edges_u, u, side="right")
    iv = np.searchsorted(edges_v, v, side="right")
    joint = np.zeros((bins, bins))
    np.add.at(joint, (iu, iv), 1.0)
    joint /= n
    pu = joint.sum(axis=1)
    pv = joint.sum(axis=0)
    nz = joint > 0
    denom = np.outer(pu, pv)
    return float(np.sum(joint[nz] * np.log(joint[nz] / denom[nz])))


def _lssvr_residuals(features: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Residual of an LSSVR regression with the default hyperparameter rule.

    Features are min-max normalized for the unit kernel scale; the target
    stays on its own scale and sets C through the iqr rule.
    """
    lo = features.min(axis=0)
    span = features.max(axis=0) - lo
    span = np.where(span <= 0, 1.0, span)
    fn = (features - lo) / span
    params = svr.default_hyperparams(target)
    model = svr.fit_lssvr(fn, target, params)
    fitted = svr.predict_batch(model, fn)
    return target - fitted


def select_lags_pmi(
    series,
    max_order: int = 24,
    h: int = 1,
    seed: int = 0,
    max_lags: int = 8,
    n_permutations: int = 100,
    bins: int = 16,
) -> LagSet:
    """Greedy forward lag selection by partial mutual information.

    Each step adds the candidate lag with the highest mutual information
    against the h-step target after both are residualized on the already
    selected lags (LSSVR regressions with default hyperparameters). The step
    is accepted only if the score beats the 95th percentile of ``n_permutations``
    seeded shuffles of the candidate residuals; lag 1 is always part of the
    result.
    """
    x = np.asarray(series, dtype=float)
    if x.size < max_order + h + 30:
        raise InvalidInputError(
            f"series of length {x.size} too short for PMI selection "
            f"(need >= {max_order + h + 30})"
        )
    if not 1 <= max_order <= 24:
        raise InvalidInputError("max_order must be in [1, 24]")
    all_lags = LagSet(tuple(range(1, max_order + 1)))
    features, target = build_direct_dataset(x, all_lags, h)
    rng = np.random.default_rng(seed)

    selected: list[int] = []
    remaining = list(range(max_order))
    while remaining and len(selected) < max_lags:
        if selected:
            sel_f = features[:, selected]
            target_resid = _lssvr_residuals(sel_f, target)
            cand_resid = {
                c: _lssvr_residuals(sel_f, features[:, c]) for c in remaining
            }
        else:
            target_resid = target
            cand_resid = {c: features[:, c] for c in remaining}
        scores = {c: _equal_frequency_mi(cand_resid[c], target_resid, bins) for c in remaining}
        best = max(remaining, key=lambda c: (scores[c], -c))
        null = np.empty(n_permutations)
        cand = cand_resid[best]
        for i in range(n_permutations):
            null[i] = _equal_frequency_mi(rng.permutation(cand), target_resid, bins)
        if scores[best] <= float(np.percentile(null, 95)):
            break
        selected.append(best)
        remaining.remove(best)

    lags = sorted({c + 1 for c in selected} | {1})
    return LagSet(tuple(lags))


# ---------------------------------------------------------------------------
# normalized kernel / network wrappers used by every ML pipeline

@dataclass(frozen=True)
class _Scaler:
    lo: np.ndarray
    span: np.ndarray


def _fit_scaler(X: np.ndarray) -> _Scaler:
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    span = np.where(span <= 0, 1.0, span)
    return _Scaler(lo, span)


class _DirectModel:
    """Direct h-step regressor on lag features, one of lssvr/svr/mlp.

    Kernel models see min-max normalized features (so the unit kernel scale
    is meaningful) and the raw target, whose interquartile range sets C; the
    network handles its own normalization.
    """

    def __init__(self, kind: str, lags: LagSet, h: int, mlp_config: mlp.MlpConfig):
        if kind not in ("lssvr", "svr", "mlp"):
            raise InvalidInputError(f"unknown direct model kind {kind!r}")
        self.kind = kind
        self.lags = lags
        self.h = h
        self._mlp_config = mlp_config

    def fit(self, series: np.ndarray) -> "_DirectModel":
        X, y = build_direct_dataset(series, self.lags, self.h)
        if self.kind == "mlp":
            self._model = mlp.train(X, y, self._mlp_config)
        else:
            self._scaler = _fit_scaler(X)
            xn = (X - self._scaler.lo) / self._scaler.span
            params = svr.default_hyperparams(y)
            if self.kind == "lssvr":
                self._model = svr.fit_lssvr(xn, y, params)
            else:
                self._model = svr.fit_svr(xn, y, params)
        return self

    def predict_at(self, series: np.ndarray, anchor: int) -> float:
        feats = _lag_features_at(series, anchor, self.lags)
        if self.kind == "mlp":
            return float(mlp.predict(self._model, feats))
        fn = (feats - self._scaler.lo) / self._scaler.span
        return float(svr.predict(self._model, fn))

    def fitted_in_sample(self, series: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(target indices, fitted values) over the training rows."""
        X, _ = build_direct_dataset(series, self.lags, self.h)
        idx = np.arange(self.lags.max_lag - 1, series.size - self.h) + self.h
        if self.kind == "mlp":
            fitted = mlp.predict_batch(self._model, X)
        else:
            xn = (X - self._scaler.lo) / self._scaler.span
            fitted = svr.predict_batch(self._model, xn)
        return idx, fitted


def ensemble_combine(component_forecasts, target):
    """Fit the LSSVR combiner mapping component forecasts to actuals.

    Returns ``(predict, in_sample_predictions)`` where ``predict`` maps an
    (m, 3) array of component forecasts to combined forecasts. Features are
    min-max normalized internally; hyperparameters follow the fixed default
    rule applied to the target series.
    """
    feats = np.asarray(component_forecasts, dtype=float)
    t = np.asarray(target, dtype=float).ravel()
    if feats.ndim != 2 or feats.shape[0] != t.size:
        raise InvalidInputError("component_forecasts must be n x m aligned with target")
    if t.size < 10:
        raise InvalidInputError("ensemble_combine needs at least 10 training rows")
    scaler = _fit_scaler(feats)
    xn = (feats - scaler.lo) / scaler.span
    model = svr.fit_lssvr(xn, t, svr.default_hyperparams(t))

    def predict(new_feats) -> np.ndarray:
        nf = np.asarray(new_feats, dtype=float)
        single = nf.ndim == 1
        if single:
            nf = nf[None, :]
        nn = (nf - scaler.lo) / scaler.span
        out = svr.predict_batch(model, nn)
        return out[0] if single else out

    return predict, predict(feats)


# ---------------------------------------------------------------------------
# shared run helpers

def _validate_run(series: TimeSeries, split: SplitSpec) -> None:
    if split.in_sample_end >= len(series):
        raise InvalidInputError("split leaves no out-of-sample points")
    if split.in_sample_end < 48:
        raise InvalidInputError("need at least 48 in-sample points")


def _origin(t_target: int, h: int) -> int:
    """Index of the last observation available when forecasting y[t_target]."""
    return t_target - h


def _stat_rolling_forecasts(
    values: np.ndarray,
    t0: int,
    h: int,
    order: arima.ArimaOrder,
    refit_every: int,
    include_intercept: bool,
) -> np.ndarray:
    """Rolling-origin forecasts of values[t0:] from a fixed-order model."""
    n = values.size
    out = np.empty(n - t0)
    model = None
    last_fit_end = -1
    for j, target in enumerate(range(t0, n)):
        end = _origin(target, h) + 1  # slice end: data[:end] is available
        if model is None or (refit_every > 0 and end - last_fit_end >= refit_every):
            model = arima.fit(values[:end], order, include_intercept=include_intercept)
            last_fit_end = end
        elif end > last_fit_end:
            # between refits, re-apply the last coefficients to fresh data
            model = arima.apply_coefficients(model, values[:end])
            last_fit_end = end
        steps = target - last_fit_end + 1
        out[j] = arima.forecast(model, steps)[steps - 1]
    return out


# ---------------------------------------------------------------------------
# decomposition state shared by AME and the VMD-X benchmarks

@dataclass
class _Decomposition:
    modeset: vmd.ModeSet
    k: int
    labels: list[vmd.ComponentLabel] | None


def _decompose_window(values: np.ndarray, period: int, config: PipelineConfig,
                      k: int | None = None, classify: bool = False) -> _Decomposition:
    base = config.vmd
    if config.seasonal_extension:
        base = replace(base, extension_mode="seasonal", extension_period=period)
    if k is None:
        k = vmd.select_mode_count(values, base, k_max=config.k_max)
    modeset = vmd.decompose(values, replace(base, K=k))
    labels = None
    if classify:
        if k != 3:
            raise InvalidInputError(
                f"component routing expects 3 modes, mode selection returned {k}"
            )
        labels = vmd.classify_modes(modeset, period)
    return _Decomposition(modeset=modeset, k=k, labels=labels)


def _mode_lead_models(
    mode: np.ndarray,
    kind: str,
    leads,
    config: PipelineConfig,
    seed: int,
    lags: LagSet | None = None,
) -> dict[int, _DirectModel]:
    """One direct model per required lead, sharing the lag set chosen at lead 1."""
    if lags is None:
        lags = select_lags_pmi(mode, max_order=config.max_lag_order, h=1, seed=seed)
    models: dict[int, _DirectModel] = {}
    for lead in sorted(set(leads)):
        cfg = replace(config.mlp_config, seed=seed + lead) if kind == "mlp" else config.mlp_config
        models[lead] = _DirectModel(kind, lags, lead, cfg).fit(mode)
    return models


def _component_paths_from_t0(
    values: np.ndarray,
    t0: int,
    period: int,
    config: PipelineConfig,
) -> tuple[dict[str, np.ndarray], _Decomposition, dict[str, object]]:
    """AME component forecasts for leads 1..n_oos from the in-sample end,
    plus the fitted component models (for combiner training)."""
    n_oos = values.size - t0
    dec = _decompose_window(values[:t0], period, config, classify=True)
    modes = dec.modeset.modes
    labels = dec.labels
    assert labels is not None
    by_label = {lab: modes[i] for i, lab in enumerate(labels)}

    trend_model = arima.auto_fit(by_label[vmd.ComponentLabel.TREND], s=0, bounds=config.arima_bounds)
    seasonal_model = arima.auto_fit(
        by_label[vmd.ComponentLabel.SEASONAL], s=period, bounds=config.arima_bounds
    )
    vol_models = _mode_lead_models(
        by_label[vmd.ComponentLabel.VOLATILITY],
        "lssvr",
        range(1, n_oos + 1),
        config,
        seed=config.seed * 7919 + 1,
    )

    trend_path = arima.forecast(trend_model, n_oos)
    seasonal_path = arima.forecast(seasonal_model, n_oos)
    vol_mode = by_label[vmd.ComponentLabel.VOLATILITY]
    vol_path = np.array(
        [vol_models[lead].predict_at(vol_mode, t0 - 1) for lead in range(1, n_oos + 1)]
    )
    paths = {
        "trend": trend_path,
        "seasonal": seasonal_path,
        "volatility": vol_path,
    }
    models = {
        "trend": trend_model,
        "seasonal": seasonal_model,
        "volatility": vol_models[1],
        "volatility_mode": vol_mode,
    }
    return paths, dec, models


def _combiner_training_rows(
    values_in: np.ndarray,
    models: dict[str, object],
) -> tuple[np.ndarray, np.ndarray]:
    """In-sample one-step fitted values of the three component models,
    aligned on indices where all are defined; target is the actual series."""
    trend_model: arima.ArimaModel = models["trend"]  # type: ignore[assignment]
    seasonal_model: arima.ArimaModel = models["seasonal"]  # type: ignore[assignment]
    vol_model: _DirectModel = models["volatility"]  # type: ignore[assignment]
    vol_mode: np.ndarray = models["volatility_mode"]  # type: ignore[assignment]

    trend_fit = trend_model.fitted_values
    seasonal_fit = seasonal_model.fitted_values
    vol_idx, vol_fit = vol_model.fitted_in_sample(vol_mode)
    vol_full = np.full(values_in.size, np.nan)
    vol_full[vol_idx] = vol_fit

    stacked = np.column_stack((trend_fit, seasonal_fit, vol_full))
    valid = np.all(np.isfinite(stacked), axis=1)
    if int(valid.sum()) < 10:
        raise InvalidInputError("too few aligned component fitted values for the combiner")
    return stacked[valid], values_in[valid]


def run_ame(series: TimeSeries, split: SplitSpec, config: PipelineConfig | None = None):
    """Adaptive multiscale ensemble forecasts for every configured horizon.

    Returns a list of :class:`ForecastResult`, one per horizon, each with the
    per-component forecast paths attached.
    """
    config = config or PipelineConfig()
    _validate_run(series, split)
    values = series.values
    t0 = split.in_sample_end
    n_oos = len(series) - t0

    if not config.redecompose:
        paths, _, models = _component_paths_from_t0(values, t0, series.period, config)
        feats, target = _combiner_training_rows(values[:t0], models)
        combine, _ = ensemble_combine(feats, target)
        oos_feats = np.column_stack(
            (paths["trend"], paths["seasonal"], paths["volatility"])
        )
        forecasts = combine(oos_feats)
        return [
            ForecastResult(
                model_id="AME",
                horizon=h,
                forecasts=forecasts.copy(),
                component_forecasts={k: v.copy() for k, v in paths.items()},
            )
            for h in split.horizons
        ]

    # Re-decompose at every origin: proper rolling origin for the ensemble.
    # Orders and lag sets are selected once, on the in-sample window, and
    # only coefficients / dual weights are re-estimated per origin.
    initial = _decompose_window(values[:t0], series.period, config, classify=True)
    by_label0 = {lab: initial.modeset.modes[i] for i, lab in enumerate(initial.labels)}
    trend_base = arima.auto_fit(
        by_label0[vmd.ComponentLabel.TREND], s=0, bounds=config.arima_bounds
    )
    seasonal_base = arima.auto_fit(
        by_label0[vmd.ComponentLabel.SEASONAL], s=series.period, bounds=config.arima_bounds
    )
    vol_seed = config.seed * 7919 + 1
    vol_lags = select_lags_pmi(
        by_label0[vmd.ComponentLabel.VOLATILITY],
        max_order=config.max_lag_order, h=1, seed=vol_seed,
    )
    results = []
    for h in split.horizons:
        fc = np.empty(n_oos)
        comp = {k: np.empty(n_oos) for k in ("trend", "seasonal", "volatility")}
        for j, target_idx in enumerate(range(t0, len(series))):
            end = _origin(target_idx, h) + 1
            window = values[:end]
            dec = _decompose_window(window, series.period, config, k=initial.k, classify=True)
            by_label = {lab: dec.modeset.modes[i] for i, lab in enumerate(dec.labels)}
            trend_model = arima.fit(
                by_label[vmd.ComponentLabel.TREND], trend_base.order,
                include_intercept=trend_base.has_intercept,
            )
            seasonal_model = arima.fit(
                by_label[vmd.ComponentLabel.SEASONAL], seasonal_base.order,
                include_intercept=seasonal_base.has_intercept,
            )
            vol_mode = by_label[vmd.ComponentLabel.VOLATILITY]
            vol_models = _mode_lead_models(
                vol_mode, "lssvr", {1, h}, config, seed=vol_seed, lags=vol_lags
            )
            tr = arima.forecast(trend_model, h)[h - 1]
            se = arima.forecast(seasonal_model, h)[h - 1]
            vo = vol_models[h].predict_at(vol_mode, end - 1)
            feats, target = _combiner_training_rows(
                window,
                {
                    "trend": trend_model,
                    "seasonal": seasonal_model,
                    "volatility": vol_models[1],
                    "volatility_mode": vol_mode,
                },
            )
            combine, _ = ensemble_combine(feats, target)
            comp["trend"][j], comp["seasonal"][j], comp["volatility"][j] = tr, se, vo
            fc[j] = float(combine(np.array([tr, se, vo])))
        results.append(
            ForecastResult(model_id="AME", horizon=h, forecasts=fc, component_forecasts=comp)
        )
    return results


def _run_single_stat(series: TimeSeries, split: SplitSpec, config: PipelineConfig, seasonal: bool):
    values = series.values
    t0 = split.in_sample_end
    s = series.period if seasonal else 0
    base = arima.auto_fit(values[:t0], s=s, bounds=config.arima_bounds)
    results = []
    for h in split.horizons:
        fc = _stat_rolling_forecasts(
            values, t0, h, base.order, config.stat_refit_every, base.has_intercept
        )
        results.append(
            ForecastResult(model_id="SARIMA" if seasonal else "ARIMA", horizon=h, forecasts=fc)
        )
    return results


def _run_single_ml(series: TimeSeries, split: SplitSpec, config: PipelineConfig, kind: str):
    values = series.values
    t0 = split.in_sample_end
    model_id = {"lssvr": "LSSVR", "svr": "SVR", "mlp": "MLP"}[kind]
    results = []
    for h in split.horizons:
        lags = select_lags_pmi(
            values[:t0], max_order=config.max_lag_order, h=h,
            seed=config.seed * 104729 + h,
        )
        mlp_cfg = replace(config.mlp_config, seed=config.seed * 31 + h)
        model = _DirectModel(kind, lags, h, mlp_cfg).fit(values[:t0])
        fc = np.empty(len(series) - t0)
        for j, target_idx in enumerate(range(t0, len(series))):
            anchor = _origin(target_idx, h)
            if config.ml_refit and anchor + 1 > t0:
                model = _DirectModel(kind, lags, h, mlp_cfg).fit(values[:anchor + 1])
            fc[j] = model.predict_at(values, anchor)
        results.append(ForecastResult(model_id=model_id, horizon=h, forecasts=fc))
    return results


def _run_vmd_ml(series: TimeSeries, split: SplitSpec, config: PipelineConfig, kind: str):
    """VMD-X benchmark: decompose, forecast every mode with X, sum."""
    values = series.values
    t0 = split.in_sample_end
    n_oos = len(series) - t0
    model_id = {"lssvr": "VMD-LSSVR", "svr": "VMD-SVR", "mlp": "VMD-MLP"}[kind]
    initial = _decompose_window(values[:t0], series.period, config)

    if not config.redecompose:
        total = np.zeros(n_oos)
        comp: dict[str, np.ndarray] = {}
        for i in range(initial.k):
            mode = initial.modeset.modes[i]
            models = _mode_lead_models(
                mode, kind, range(1, n_oos + 1), config,
                seed=config.seed * 6007 + 13 * i,
            )
            path = np.array(
                [models[lead].predict_at(mode, t0 - 1) for lead in range(1, n_oos + 1)]
            )
            comp[f"mode_{i}"] = path
            total += path
        return [
            ForecastResult(
                model_id=model_id,
                horizon=h,
                forecasts=total.copy(),
                component_forecasts={k: v.copy() for k, v in comp.items()},
            )
            for h in split.horizons
        ]

    mode_lags = [
        select_lags_pmi(
            initial.modeset.modes[i], max_order=config.max_lag_order, h=1,
            seed=config.seed * 6007 + 13 * i,
        )
        for i in range(initial.k)
    ]
    results = []
    for h in split.horizons:
        fc = np.zeros(n_oos)
        for j, target_idx in enumerate(range(t0, len(series))):
            end = _origin(target_idx, h) + 1
            dec = _decompose_window(values[:end], series.period, config, k=initial.k)
            for i in range(dec.k):
                mode = dec.modeset.modes[i]
                model = _mode_lead_models(
                    mode, kind, [h], config,
                    seed=config.seed * 6007 + 13 * i, lags=mode_lags[i],
                )[h]
                fc[j] += model.predict_at(mode, end - 1)
        results.append(ForecastResult(model_id=model_id, horizon=h, forecasts=fc))
    return results


def run_benchmark(
    series: TimeSeries,
    split: SplitSpec,
    model_id: str,
    config: PipelineConfig | None = None,
):
    """Run one of the nine models over every configured horizon."""
    config = config or PipelineConfig()
    _validate_run(series, split)
    if model_id == "AME":
        return run_ame(series, split, config)
    if model_id == "ARIMA":
        return _run_single_stat(series, split, config, seasonal=False)
    if model_id == "SARIMA":
        return _run_single_stat(series, split, config, seasonal=True)
    if model_id in ("LSSVR", "SVR", "MLP"):
        return _run_single_ml(series, split, config, model_id.lower())
    if model_id in ("VMD-LSSVR", "VMD-SVR", "VMD-MLP"):
        return _run_vmd_ml(series, split, config, model_id.split("-")[1].lower())
    raise InvalidInputError(f"unknown model id {model_id!r}; expected one of {MODEL_IDS}")
