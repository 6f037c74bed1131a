"""Micro-models for the tuning harness: ridge and L2 logistic regression."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LinearModel:
    """A fitted affine predictor x @ weights + intercept."""

    weights: np.ndarray
    intercept: float

    def __post_init__(self) -> None:
        weights = np.asarray(self.weights, dtype=float)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "intercept", float(self.intercept))
        if not (np.all(np.isfinite(weights)) and math.isfinite(self.intercept)):
            raise ValueError("model coefficients must be finite")

    def decision(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.weights + self.intercept

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(self.decision(X))


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def ridge_fit(X: np.ndarray, y: np.ndarray, alpha: float, fit_intercept: bool = True) -> LinearModel:
    """Solve (X'X + alpha*I) w = X'y on centered data; the intercept is unpenalized.

    With ``fit_intercept`` the features and target are centered first and the
    intercept is recovered from the means, so alpha never shrinks it.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise ValueError(f"X must be n x d and y length n, got {X.shape} and {y.shape}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if fit_intercept:
        x_mean = X.mean(axis=0)
        y_mean = float(y.mean())
        Xc = X - x_mean
        yc = y - y_mean
    else:
        Xc, yc = X, y
    d = X.shape[1]
    if alpha == 0 and np.linalg.matrix_rank(Xc) < d:
        raise np.linalg.LinAlgError(
            "singular system: alpha = 0 with rank-deficient features"
        )
    weights = np.linalg.solve(Xc.T @ Xc + alpha * np.eye(d), Xc.T @ yc)
    intercept = y_mean - float(x_mean @ weights) if fit_intercept else 0.0
    return LinearModel(weights=weights, intercept=intercept)


def logistic_loss(
    X: np.ndarray,
    y: np.ndarray,
    weights: np.ndarray,
    intercept: float,
    C: float,
) -> tuple[float, np.ndarray, float]:
    """Mean log-loss plus the penalty ||w||^2 / (2*C*n), with its gradient.

    Returns (loss, grad_weights, grad_intercept).  Scaling the penalty by 1/n
    keeps the effect of C stable across dataset sizes; the intercept is never
    penalized.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = X.shape[0]
    z = X @ weights + intercept
    # log(1 + e^z) - y*z, evaluated stably.
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
    loss += float(weights @ weights) / (2.0 * C * n)
    residual = _sigmoid(z) - y
    grad_w = X.T @ residual / n + weights / (C * n)
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


def logistic_fit(
    X: np.ndarray,
    y: np.ndarray,
    C: float,
    max_iters: int = 200,
    tol: float = 1e-6,
    fit_intercept: bool = True,
) -> LinearModel:
    """Fit L2-regularized logistic regression by gradient descent with backtracking.

    Stops when the gradient norm drops below ``tol`` or after ``max_iters``
    accepted steps.  Every accepted step decreases the penalized loss.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise ValueError(f"X must be n x d and y length n, got {X.shape} and {y.shape}")
    if C <= 0:
        raise ValueError(f"C must be > 0, got {C}")
    classes = np.unique(y)
    if not np.array_equal(classes, [0.0, 1.0]):
        if classes.size < 2:
            raise ValueError("both classes must be present in y")
        raise ValueError(f"y must be binary 0/1, got classes {classes.tolist()}")
    d = X.shape[1]
    weights = np.zeros(d)
    intercept = 0.0
    loss, grad_w, grad_b = logistic_loss(X, y, weights, intercept, C)
    for _ in range(max_iters):
        if not fit_intercept:
            grad_b = 0.0
        grad_sq = float(grad_w @ grad_w) + grad_b * grad_b
        if math.sqrt(grad_sq) < tol:
            break
        step = 1.0
        accepted = False
        while step >= 1e-12:
            w_next = weights - step * grad_w
            b_next = intercept - step * grad_b
            loss_next, gw_next, gb_next = logistic_loss(X, y, w_next, b_next, C)
            if loss_next <= loss - 1e-4 * step * grad_sq:
                weights, intercept = w_next, b_next
                loss, grad_w, grad_b = loss_next, gw_next, gb_next
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
    return LinearModel(weights=weights, intercept=intercept)
