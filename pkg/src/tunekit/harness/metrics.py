"""Evaluation metrics: RMSE, rank-based AUC, Cohen kappa, and the MSE split."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np


def rmse(y_true: Sequence[float], y_pred: Sequence[float]) -> float:
    """Root mean squared error between two equal-length vectors."""
    a = np.asarray(y_true, dtype=float)
    b = np.asarray(y_pred, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"inputs must be equal-length vectors, got {a.shape} vs {b.shape}")
    if a.size == 0:
        raise ValueError("inputs must be non-empty")
    return float(np.sqrt(np.mean((a - b) ** 2)))


def auc(labels: Sequence[int], scores: Sequence[float]) -> float:
    """Probability that a random positive outscores a random negative, ties count 1/2.

    Computed from midranks (the Mann-Whitney formulation), so it is invariant
    under any strictly increasing transform of the scores.
    """
    y = np.asarray(labels)
    s = np.asarray(scores, dtype=float)
    if y.shape != s.shape or y.ndim != 1:
        raise ValueError(f"inputs must be equal-length vectors, got {y.shape} vs {s.shape}")
    positive = y == 1
    n_pos = int(positive.sum())
    n_neg = int(y.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise ValueError("both classes must be present to compute AUC")
    order = np.argsort(s, kind="stable")
    ranks = np.empty(y.size, dtype=float)
    i = 0
    while i < y.size:
        j = i
        while j + 1 < y.size and s[order[j + 1]] == s[order[i]]:
            j += 1
        # Midrank for the tie group spanning sorted positions i..j (1-based ranks).
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    rank_sum = float(ranks[positive].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def cohen_kappa(y_true: Sequence[Hashable], y_pred: Sequence[Hashable]) -> float:
    """Chance-corrected agreement (p_o - p_e) / (1 - p_e); 0 by convention when p_e = 1."""
    t = list(y_true)
    p = list(y_pred)
    if len(t) != len(p):
        raise ValueError(f"inputs must have equal length, got {len(t)} vs {len(p)}")
    if not t:
        raise ValueError("inputs must be non-empty")
    n = len(t)
    observed = sum(1 for a, b in zip(t, p) if a == b) / n
    labels = set(t) | set(p)
    expected = sum((t.count(lab) / n) * (p.count(lab) / n) for lab in labels)
    if expected == 1.0:
        return 0.0
    return (observed - expected) / (1.0 - expected)


@dataclass(frozen=True)
class BiasVarianceReport:
    """Decomposition of repeated-prediction error at one input."""

    bias_sq: float
    variance: float
    mse: float
    mean_prediction: float


def bias_variance_decompose(predictions: Sequence[float], truth: float) -> BiasVarianceReport:
    """Split mean squared error into squared bias plus prediction variance.

    All three quantities are computed directly from the predictions, so
    mse == bias_sq + variance is an algebraic identity rather than a
    construction.
    """
    preds = np.asarray(predictions, dtype=float)
    if preds.ndim != 1 or preds.size == 0:
        raise ValueError("predictions must be a non-empty vector")
    truth = float(truth)
    mean_prediction = float(np.mean(preds))
    bias_sq = (truth - mean_prediction) ** 2
    variance = float(np.mean((preds - mean_prediction) ** 2))
    mse = float(np.mean((truth - preds) ** 2))
    return BiasVarianceReport(
        bias_sq=bias_sq, variance=variance, mse=mse, mean_prediction=mean_prediction
    )
