"""Objective functions for studies: metrics, CV, micro-models, landscapes, CSV loading."""

from __future__ import annotations

from .cv import METRICS, MODEL_KINDS, Folds, cv_objective, kfold_split, metric_direction
from .data import Dataset, load_csv_dataset
from .metrics import BiasVarianceReport, auc, bias_variance_decompose, cohen_kappa, rmse
from .models import LinearModel, logistic_fit, logistic_loss, ridge_fit
from .synthetic import SYNTHETIC_NAMES, branin, rastrigin, sphere, synthetic_objective

__all__ = [
    "BiasVarianceReport",
    "Dataset",
    "Folds",
    "LinearModel",
    "METRICS",
    "MODEL_KINDS",
    "SYNTHETIC_NAMES",
    "auc",
    "bias_variance_decompose",
    "branin",
    "cohen_kappa",
    "cv_objective",
    "kfold_split",
    "load_csv_dataset",
    "logistic_fit",
    "logistic_loss",
    "metric_direction",
    "rastrigin",
    "ridge_fit",
    "rmse",
    "sphere",
    "synthetic_objective",
]
