"""Gaussian-kernel support vector regression.

Two trainers are provided. Least-squares SVR replaces the epsilon-insensitive
loss with squared-error equality constraints, so fitting reduces to one
bordered symmetric linear solve (exact KKT solution, no iterations).
Epsilon-SVR solves the usual box-constrained dual by SMO-style pairwise
coordinate ascent on maximal violating pairs.

Default hyperparameters follow the fixed heuristic used for the reported
experiments: penalty C = iqr(target)/1.349 and kernel scale 1. Optional
5-fold cross-validation over a parameter grid is available behind
:func:`cross_validate` for callers that prefer data-driven selection.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidInputError, NumericalFailureError
from .numerics import SymmetricSystem, interquartile_range, solve_symmetric

__all__ = [
    "KernelParams",
    "LssvrModel",
    "SvrModel",
    "gaussian_kernel",
    "kernel_matrix",
    "fit_lssvr",
    "fit_svr",
    "predict",
    "predict_batch",
    "default_hyperparams",
    "cross_validate",
]


@dataclass(frozen=True)
class KernelParams:
    """Gaussian kernel length scale, penalty C and epsilon tube width."""

    scale: float = 1.0
    C: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if self.scale <= 0 or self.C <= 0 or self.epsilon < 0:
            raise InvalidInputError(
                f"require scale > 0, C > 0, epsilon >= 0; got {self}"
            )


@dataclass(frozen=True)
class LssvrModel:
    train_inputs: np.ndarray
    alphas: np.ndarray
    bias: float
    params: KernelParams


@dataclass(frozen=True)
class SvrModel:
    train_inputs: np.ndarray
    dual_coef: np.ndarray  # alpha - alpha*, each in [-C, C]
    bias: float
    params: KernelParams


def _as_matrix(X) -> np.ndarray:
    x = np.asarray(X, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.size == 0:
        raise InvalidInputError("X must be a nonempty 2-D matrix (rows = samples)")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("X contains non-finite values")
    return x


def gaussian_kernel(a, b, scale: float) -> float:
    """exp(-||a - b||^2 / (2 scale^2)); always in (0, 1]."""
    av = np.asarray(a, dtype=float).ravel()
    bv = np.asarray(b, dtype=float).ravel()
    if av.shape != bv.shape:
        raise InvalidInputError(f"dimension mismatch: {av.shape} vs {bv.shape}")
    if scale <= 0:
        raise InvalidInputError("scale must be positive")
    d2 = float(np.sum((av - bv) ** 2))
    return float(np.exp(-d2 / (2.0 * scale**2)))


def kernel_matrix(A: np.ndarray, B: np.ndarray, scale: float) -> np.ndarray:
    """Pairwise Gaussian kernel matrix between the rows of A and B."""
    a = _as_matrix(A)
    b = _as_matrix(B)
    if a.shape[1] != b.shape[1]:
        raise InvalidInputError("A and B must have the same number of columns")
    d2 = (
        np.sum(a**2, axis=1)[:, None]
        + np.sum(b**2, axis=1)[None, :]
        - 2.0 * (a @ b.T)
    )
    np.maximum(d2, 0.0, out=d2)
    return np.exp(-d2 / (2.0 * scale**2))


def fit_lssvr(X, y, params: KernelParams) -> LssvrModel:
    """Fit least-squares SVR by solving the bordered dual system.

    The system is ``[[0, 1^T], [1, K + I/C]] @ [b; alpha] = [0; y]`` with
    ``K`` the Gaussian Gram matrix; its solution satisfies the KKT
    conditions of the squared-error formulation exactly.
    """
    x = _as_matrix(X)
    t = np.asarray(y, dtype=float).ravel()
    if t.size != x.shape[0]:
        raise InvalidInputError("y length does not match number of rows in X")
    n = x.shape[0]
    omega = kernel_matrix(x, x, params.scale)
    a = np.zeros((n + 1, n + 1))
    a[0, 1:] = 1.0
    a[1:, 0] = 1.0
    a[1:, 1:] = omega + np.eye(n) / params.C
    rhs = np.concatenate(([0.0], t))
    try:
        sol = solve_symmetric(SymmetricSystem(a, rhs))
    except NumericalFailureError as exc:
        raise NumericalFailureError(
            f"LSSVR dual system is numerically singular ({exc}); "
            "consider jittering duplicate rows or lowering C",
            **exc.diagnostics,
        ) from exc
    return LssvrModel(train_inputs=x, alphas=sol[1:], bias=float(sol[0]), params=params)


def _coefficients(model) -> np.ndarray:
    if isinstance(model, LssvrModel):
        return model.alphas
    if isinstance(model, SvrModel):
        return model.dual_coef
    raise InvalidInputError(f"unsupported model type {type(model).__name__}")


def predict(model, x) -> float:
    """bias + sum_i coef_i * k(x_i, x) for a fitted (LS)SVR model."""
    xv = np.asarray(x, dtype=float).ravel()
    if xv.size != model.train_inputs.shape[1]:
        raise InvalidInputError(
            f"input dimension {xv.size} != training dimension {model.train_inputs.shape[1]}"
        )
    k = kernel_matrix(model.train_inputs, xv[None, :], model.params.scale)[:, 0]
    return float(model.bias + np.dot(_coefficients(model), k))


def predict_batch(model, X) -> np.ndarray:
    """Vectorized :func:`predict` over the rows of X."""
    x = _as_matrix(X)
    if x.shape[1] != model.train_inputs.shape[1]:
        raise InvalidInputError(
            f"input dimension {x.shape[1]} != training dimension {model.train_inputs.shape[1]}"
        )
    k = kernel_matrix(x, model.train_inputs, model.params.scale)
    return model.bias + k @ _coefficients(model)


def default_hyperparams(target) -> KernelParams:
    """Fixed hyperparameter rule: C = iqr(target)/1.349, scale = 1.

    The epsilon tube width for epsilon-SVR defaults to 0.1 * std(target).
    A zero interquartile range (constant-ish target) falls back to C = 1.
    """
    t = np.asarray(target, dtype=float).ravel()
    iqr = interquartile_range(t)
    if iqr == 0.0:
        warnings.warn("default_hyperparams: zero interquartile range, falling back to C = 1")
        c = 1.0
    else:
        c = iqr / 1.349
    return KernelParams(scale=1.0, C=c, epsilon=0.1 * float(np.std(t)))


def fit_svr(
    X,
    y,
    params: KernelParams,
    tol: float = 1e-4,
    max_iter: int | None = None,
) -> SvrModel:
    """Fit epsilon-SVR by SMO-style pairwise coordinate ascent.

    Works on the 2n-variable dual (alphas stacked over alpha-stars) with the
    single equality constraint; each step picks the maximal violating pair
    and solves the two-variable subproblem in closed form with box clipping.
    Convergence is declared when the maximum KKT violation drops below
    ``tol``.
    """
    x = _as_matrix(X)
    t = np.asarray(y, dtype=float).ravel()
    n = x.shape[0]
    if t.size != n:
        raise InvalidInputError("y length does not match number of rows in X")
    if n < 2:
        raise InvalidInputError("fit_svr needs at least 2 samples")
    c, eps = params.C, params.epsilon

    k = kernel_matrix(x, x, params.scale)
    # 2n-variable dual: beta = [alpha; alpha*], sign vector v = [+1; -1],
    # Q = [[K, -K], [-K, K]], p = [eps - y; eps + y], constraint v.beta = 0.
    v = np.concatenate((np.ones(n), -np.ones(n)))
    p = np.concatenate((eps - t, eps + t))
    beta = np.zeros(2 * n)
    grad = p.copy()

    def q_column(i: int) -> np.ndarray:
        col = np.concatenate((k[:, i % n], -k[:, i % n]))
        return col if i < n else -col

    if max_iter is None:
        max_iter = max(20_000, 400 * n)

    violation = np.inf
    for _ in range(max_iter):
        minus_vg = -v * grad
        up = np.where(((v > 0) & (beta < c)) | ((v < 0) & (beta > 0)))[0]
        low = np.where(((v > 0) & (beta > 0)) | ((v < 0) & (beta < c)))[0]
        i = up[np.argmax(minus_vg[up])]
        j = low[np.argmin(minus_vg[low])]
        violation = minus_vg[i] - minus_vg[j]
        if violation < tol:
            break
        qi, qj = q_column(i), q_column(j)
        quad = qi[i] + qj[j] - 2.0 * v[i] * v[j] * qi[j]
        quad = max(quad, 1e-12)
        step = (minus_vg[i] - minus_vg[j]) / quad
        # Direction d_i = v[i], d_j = -v[j] keeps the equality constraint.
        max_i = (c - beta[i]) if v[i] > 0 else beta[i]
        max_j = beta[j] if v[j] > 0 else (c - beta[j])
        step = min(step, max_i, max_j)
        beta[i] += v[i] * step
        beta[j] -= v[j] * step
        grad += step * (v[i] * qi - v[j] * qj)
    else:
        raise NumericalFailureError(
            f"SMO did not reach KKT tolerance {tol:g} in {max_iter} iterations "
            f"(max violation {violation:.3e})",
            max_violation=float(violation),
        )

    coef = beta[:n] - beta[n:]
    # Bias from free variables' KKT stationarity; fall back to the midpoint
    # of the violation interval when no variable is strictly inside the box.
    minus_vg = -v * grad
    free = np.where((beta > 1e-10) & (beta < c - 1e-10))[0]
    if free.size:
        bias = float(np.mean(minus_vg[free]))
    else:
        up = np.where(((v > 0) & (beta < c)) | ((v < 0) & (beta > 0)))[0]
        low = np.where(((v > 0) & (beta > 0)) | ((v < 0) & (beta < c)))[0]
        bias = float((np.max(minus_vg[up]) + np.min(minus_vg[low])) / 2.0)
    return SvrModel(train_inputs=x, dual_coef=coef, bias=bias, params=params)


def svr_dual_objective(model: SvrModel, X, y) -> float:
    """Dual objective value of a fitted epsilon-SVR model (for diagnostics)."""
    x = _as_matrix(X)
    t = np.asarray(y, dtype=float).ravel()
    k = kernel_matrix(x, x, model.params.scale)
    coef = model.dual_coef
    # |coef| is the objective of the complementary feasible point obtained by
    # shrinking any overlapping (alpha, alpha*) pair; it never overstates fit.
    abs_sum = np.sum(np.abs(coef))
    return float(
        0.5 * coef @ k @ coef + model.params.epsilon * abs_sum - np.dot(t, coef)
    )


def cross_validate(X, y, grid, folds: int = 5, model: str = "lssvr") -> KernelParams:
    """Pick the grid point with the lowest mean validation MSE.

    Folds are contiguous time-ordered blocks (no shuffling); ties break
    toward smaller C, then smaller scale.
    """
    x = _as_matrix(X)
    t = np.asarray(y, dtype=float).ravel()
    grid = list(grid)
    if not grid:
        raise InvalidInputError("cross_validate: empty parameter grid")
    if x.shape[0] < folds:
        raise InvalidInputError(f"need at least {folds} samples for {folds}-fold CV")
    if model not in ("lssvr", "svr"):
        raise InvalidInputError(f"unknown model kind {model!r}")
    blocks = np.array_split(np.arange(x.shape[0]), folds)
    best: tuple[float, float, float] | None = None
    best_params: KernelParams | None = None
    for params in grid:
        losses = []
        for block in blocks:
            train = np.setdiff1d(np.arange(x.shape[0]), block)
            if model == "lssvr":
                fitted = fit_lssvr(x[train], t[train], params)
            else:
                fitted = fit_svr(x[train], t[train], params)
            pred = predict_batch(fitted, x[block])
            losses.append(float(np.mean((pred - t[block]) ** 2)))
        key = (float(np.mean(losses)), params.C, params.scale)
        if best is None or key < best:
            best = key
            best_params = params
    assert best_params is not None
    return best_params
