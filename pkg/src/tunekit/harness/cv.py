"""K-fold cross-validation and the model-tuning objective built on it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from ..space import ParamPoint
from .data import Dataset
from .metrics import auc, cohen_kappa, rmse
from .models import logistic_fit, ridge_fit

MODEL_KINDS = ("ridge", "logistic")
METRICS = ("rmse", "auc", "kappa")

_MODEL_PARAMS = {"ridge": ("alpha",), "logistic": ("C",)}
_DEFAULT_METRIC = {"ridge": "rmse", "logistic": "kappa"}


@dataclass(frozen=True)
class Folds:
    """Disjoint index lists covering 0..n-1 with sizes differing by at most one."""

    indices: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.indices)


def kfold_split(n: int, k: int, seed: int) -> Folds:
    """Shuffle 0..n-1 with the seed and cut into k near-equal folds."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"k must be <= n, got k={k} with n={n}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    base, remainder = divmod(n, k)
    folds: list[tuple[int, ...]] = []
    start = 0
    for i in range(k):
        size = base + (1 if i < remainder else 0)
        folds.append(tuple(int(j) for j in order[start : start + size]))
        start += size
    return Folds(indices=tuple(folds))


def metric_direction(metric: str) -> str:
    """Whether a metric is better lower ("rmse") or higher ("auc", "kappa")."""
    if metric == "rmse":
        return "minimize"
    if metric in ("auc", "kappa"):
        return "maximize"
    raise ValueError(f"unknown metric {metric!r}; valid metrics: {', '.join(METRICS)}")


def _binary_target(dataset: Dataset) -> np.ndarray:
    """Map a two-level target onto {0, 1}; the sorted-last level becomes 1."""
    target = dataset.target
    if isinstance(target, np.ndarray):
        levels = sorted(set(float(v) for v in target))
        if levels != [0.0, 1.0]:
            if len(levels) != 2:
                raise ValueError(f"classification needs a binary target, got {len(levels)} levels")
            return np.asarray([0.0 if v == levels[0] else 1.0 for v in target])
        return np.asarray(target, dtype=float)
    levels = sorted(set(target))
    if len(levels) != 2:
        raise ValueError(f"classification needs a binary target, got {len(levels)} levels")
    return np.asarray([0.0 if v == levels[0] else 1.0 for v in target])


def _check_params(model: str, params: Mapping[str, object]) -> None:
    expected = _MODEL_PARAMS[model]
    if set(params) != set(expected):
        raise ValueError(
            f"params for {model!r} must be exactly {sorted(expected)}, got {sorted(params)}"
        )
    for name in expected:
        value = params[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"parameter {name!r} must be numeric, got {value!r}")


def cv_objective(
    model: str,
    dataset: Dataset,
    params: ParamPoint,
    k: int = 3,
    seed: int = 0,
    metric: Optional[str] = None,
) -> float:
    """Mean k-fold score of ``model`` fitted with ``params`` on ``dataset``.

    Each fold is scored on held-out rows after training on the rest.  Model
    fitting errors propagate to the caller, where the study loop records the
    trial as failed.
    """
    if model not in MODEL_KINDS:
        raise ValueError(f"unknown model {model!r}; valid models: {', '.join(MODEL_KINDS)}")
    _check_params(model, params)
    metric = metric or _DEFAULT_METRIC[model]
    metric_direction(metric)
    if model == "ridge" and metric != "rmse":
        raise ValueError("ridge is scored with rmse")
    if model == "logistic" and metric == "rmse":
        raise ValueError("logistic is scored with auc or kappa")
    X = dataset.features
    if model == "ridge":
        y = np.asarray(dataset.target, dtype=float)
    else:
        y = _binary_target(dataset)
    folds = kfold_split(X.shape[0], k, seed)
    scores: list[float] = []
    all_rows = np.arange(X.shape[0])
    for held_out in folds.indices:
        test_idx = np.asarray(held_out, dtype=int)
        train_mask = np.ones(X.shape[0], dtype=bool)
        train_mask[test_idx] = False
        train_idx = all_rows[train_mask]
        if model == "ridge":
            fitted = ridge_fit(X[train_idx], y[train_idx], alpha=float(params["alpha"]))
            predictions = fitted.decision(X[test_idx])
            scores.append(rmse(y[test_idx], predictions))
        else:
            fitted = logistic_fit(X[train_idx], y[train_idx], C=float(params["C"]))
            probabilities = fitted.predict_proba(X[test_idx])
            if metric == "auc":
                scores.append(auc(y[test_idx].astype(int), probabilities))
            else:
                predicted = (probabilities >= 0.5).astype(int)
                scores.append(cohen_kappa(y[test_idx].astype(int).tolist(), predicted.tolist()))
    return float(np.mean(scores))
