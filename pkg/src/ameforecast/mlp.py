"""Single-hidden-layer perceptron regressor with logistic activation.

The network computes ``a0 + sum_j a_j * f(b0j + sum_i b_ij * x_i)`` with
``f(z) = 1 / (1 + exp(-z))``. Inputs and target are min-max scaled to [0, 1]
internally (the logistic saturates on raw series magnitudes) and training is
deterministic full-batch gradient descent with momentum on mean squared
error. If the loss rises over a 50-epoch window the learning rate is halved.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NumericalFailureError

__all__ = ["MlpConfig", "MlpModel", "train", "predict", "predict_batch", "gradient", "loss"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MlpConfig:
    hidden: int = 20
    epochs: int = 2000
    learning_rate: float = 0.1
    momentum: float = 0.9
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.hidden <= 100:
            raise InvalidInputError("hidden must be in [1, 100]")
        if self.epochs < 1 or self.learning_rate <= 0 or not 0 <= self.momentum < 1:
            raise InvalidInputError(f"invalid training configuration: {self}")


@dataclass(frozen=True)
class MlpModel:
    """Fitted network weights plus the min-max bounds used for scaling.

    ``input_weights`` has shape (p + 1, q) with row 0 holding the hidden
    biases; ``output_weights`` has length q + 1 with element 0 the output
    bias.
    """

    input_weights: np.ndarray
    output_weights: np.ndarray
    input_dim: int
    hidden_dim: int
    x_min: np.ndarray
    x_scale: np.ndarray
    y_min: float
    y_scale: float


def _logistic(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _check_xy(X, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(X, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    t = np.asarray(y, dtype=float).ravel()
    if x.ndim != 2 or x.shape[0] != t.size:
        raise InvalidInputError("X must be n x p with y of length n")
    if x.shape[0] < 2 or x.shape[1] < 1:
        raise InvalidInputError("need at least 2 samples and 1 feature")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(t))):
        raise InvalidInputError("non-finite entries in training data")
    return x, t


def _scale_bounds(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    flat = span <= 0
    if np.any(flat):
        warnings.warn("constant input column(s); scale fixed to 1 for those columns")
        span = np.where(flat, 1.0, span)
    return lo, span


def _forward(model_w_in: np.ndarray, model_w_out: np.ndarray, xn: np.ndarray):
    hidden = _logistic(xn @ model_w_in[1:] + model_w_in[0])
    out = hidden @ model_w_out[1:] + model_w_out[0]
    return hidden, out


def _grads(w_in, w_out, xn, yn):
    """Analytic MSE gradient on the normalized scale."""
    n = xn.shape[0]
    hidden, out = _forward(w_in, w_out, xn)
    err = out - yn
    g_out = np.empty_like(w_out)
    g_out[0] = 2.0 * np.mean(err)
    g_out[1:] = 2.0 / n * (hidden.T @ err)
    d_hidden = (2.0 / n) * err[:, None] * w_out[1:][None, :] * hidden * (1.0 - hidden)
    g_in = np.empty_like(w_in)
    g_in[0] = d_hidden.sum(axis=0)
    g_in[1:] = xn.T @ d_hidden
    mse = float(np.mean(err**2))
    return g_in, g_out, mse


def train(X, y, config: MlpConfig) -> MlpModel:
    """Train by full-batch gradient descent with momentum.

    Weights start from a seeded uniform(-0.5, 0.5) draw, so identical data,
    config and seed reproduce the model bit for bit.
    """
    x, t = _check_xy(X, y)
    n, p = x.shape
    x_min, x_scale = _scale_bounds(x)
    t_min, t_span = float(t.min()), float(t.max() - t.min())
    t_scale = t_span if t_span > 0 else 1.0
    xn = (x - x_min) / x_scale
    yn = (t - t_min) / t_scale

    rng = np.random.default_rng(config.seed)
    w_in = rng.uniform(-0.5, 0.5, size=(p + 1, config.hidden))
    w_out = rng.uniform(-0.5, 0.5, size=config.hidden + 1)
    v_in = np.zeros_like(w_in)
    v_out = np.zeros_like(w_out)

    lr = config.learning_rate
    losses: list[float] = []
    cooldown = 0
    for epoch in range(config.epochs):
        g_in, g_out, mse = _grads(w_in, w_out, xn, yn)
        if not np.isfinite(mse):
            raise NumericalFailureError(f"training loss became non-finite at epoch {epoch}")
        losses.append(mse)
        if cooldown > 0:
            cooldown -= 1
        elif epoch >= 50 and losses[-1] > losses[-51]:
            lr *= 0.5
            cooldown = 50
            logger.info("mlp: loss rose over a 50-epoch window, learning rate halved to %g", lr)
        v_in = config.momentum * v_in - lr * g_in
        v_out = config.momentum * v_out - lr * g_out
        w_in = w_in + v_in
        w_out = w_out + v_out

    return MlpModel(
        input_weights=w_in,
        output_weights=w_out,
        input_dim=p,
        hidden_dim=config.hidden,
        x_min=x_min,
        x_scale=x_scale,
        y_min=t_min,
        y_scale=t_scale,
    )


def predict(model: MlpModel, x) -> float:
    xv = np.asarray(x, dtype=float).ravel()
    if xv.size != model.input_dim:
        raise InvalidInputError(f"expected {model.input_dim} inputs, got {xv.size}")
    return float(predict_batch(model, xv[None, :])[0])


def predict_batch(model: MlpModel, X) -> np.ndarray:
    x = np.asarray(X, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[1] != model.input_dim:
        raise InvalidInputError(f"expected {model.input_dim} inputs, got {x.shape[1]}")
    xn = (x - model.x_min) / model.x_scale
    _, out = _forward(model.input_weights, model.output_weights, xn)
    return out * model.y_scale + model.y_min


def gradient(model: MlpModel, X, y) -> tuple[np.ndarray, np.ndarray]:
    """Gradient of :func:`loss` with respect to every weight.

    Returns arrays shaped like ``input_weights`` and ``output_weights``.
    """
    x, t = _check_xy(X, y)
    xn = (x - model.x_min) / model.x_scale
    yn = (t - model.y_min) / model.y_scale
    g_in, g_out, _ = _grads(model.input_weights, model.output_weights, xn, yn)
    return g_in, g_out


def loss(model: MlpModel, X, y) -> float:
    """Mean squared error on the normalized scale (the training objective)."""
    x, t = _check_xy(X, y)
    xn = (x - model.x_min) / model.x_scale
    yn = (t - model.y_min) / model.y_scale
    _, out = _forward(model.input_weights, model.output_weights, xn)
    return float(np.mean((out - yn) ** 2))
