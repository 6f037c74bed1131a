"""Tree-structured Parzen estimation.

The history is split at a quantile of the observed scores into a "good" set
and a "bad" set; each side gets a per-dimension kernel mixture density.
Candidates are drawn from the good density and ranked by the expected
improvement ratio 1 / (gamma + (bad/good) * (1 - gamma)), which is a
monotone transform of good/bad, so the best candidate maximizes that ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..space import Categorical, IntegerUniform, ParamPoint, SearchSpace
from .base import Sampler
from .history import History, check_direction, to_minimize
from .random_search import random_suggest

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class TpeConfig:
    """Knobs for the split quantile, warmup length, and density smoothing."""

    gamma: float = 0.25
    n_startup: int = 10
    n_candidates: int = 24
    bandwidth_floor: float = 0.01

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if self.n_startup < 2:
            raise ValueError(f"n_startup must be >= 2, got {self.n_startup}")
        if self.n_candidates < 1:
            raise ValueError(f"n_candidates must be >= 1, got {self.n_candidates}")
        if self.bandwidth_floor <= 0.0:
            raise ValueError(f"bandwidth_floor must be > 0, got {self.bandwidth_floor}")


@dataclass(frozen=True)
class NumericDensity:
    """Equal-weight Gaussian kernels over one numeric dimension plus a uniform component.

    The kernels are untruncated; samples falling outside [low, high] are
    clipped back to the bounds.  Densities from the two split sides are only
    ever compared as a ratio at a common point, so the unnormalized tails
    cancel in the argmax.
    """

    low: float
    high: float
    integer: bool
    centers: tuple[float, ...]
    bandwidths: tuple[float, ...]
    prior_weight: float

    def pdf(self, x: float) -> float:
        span = self.high - self.low
        if span <= 0.0:
            # Single-value dimension: a constant factor that cancels in ratios.
            return 1.0
        centers = np.asarray(self.centers)
        bandwidths = np.asarray(self.bandwidths)
        z = (x - centers) / bandwidths
        kernels = np.exp(-0.5 * z * z) / (bandwidths * _SQRT_2PI)
        kernel_weight = (1.0 - self.prior_weight) / len(self.centers)
        return float(self.prior_weight / span + kernel_weight * kernels.sum())

    def sample(self, rng: np.random.Generator) -> Union[float, int]:
        span = self.high - self.low
        if span <= 0.0:
            x = self.low
        elif self.prior_weight > 0.0 and rng.random() < self.prior_weight:
            if self.integer:
                x = float(rng.integers(int(self.low), int(self.high) + 1))
            else:
                x = self.low + rng.random() * span
        else:
            i = int(rng.integers(len(self.centers)))
            x = self.centers[i] + self.bandwidths[i] * rng.standard_normal()
        x = min(max(x, self.low), self.high)
        if self.integer:
            return int(min(max(math.floor(x + 0.5), self.low), self.high))
        return float(x)


@dataclass(frozen=True)
class CategoricalDensity:
    """Add-one-smoothed choice weights for one categorical dimension."""

    choices: tuple[str, ...]
    weights: tuple[float, ...]

    def pdf(self, value: str) -> float:
        return self.weights[self.choices.index(value)]

    def sample(self, rng: np.random.Generator) -> str:
        u = rng.random()
        cumulative = 0.0
        for choice, weight in zip(self.choices, self.weights):
            cumulative += weight
            if u < cumulative:
                return choice
        return self.choices[-1]


@dataclass(frozen=True)
class ParzenEstimator:
    """Per-dimension density product fitted to one side of the score split."""

    space: SearchSpace
    dims: dict[str, Union[NumericDensity, CategoricalDensity]]


def tpe_split(
    history: History, gamma: float, direction: str
) -> tuple[list[ParamPoint], list[ParamPoint], float]:
    """Partition the completed trials at the gamma quantile of their scores.

    Returns (below, above, threshold): the max(1, ceil(gamma * n)) best points,
    the rest, and the boundary score in the caller's scale.  Ties go to the
    record with the lower ordinal.
    """
    check_direction(direction)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    completed = history.completed()
    n = len(completed)
    if n < 2:
        raise ValueError(f"need at least 2 completed trials to split, got {n}")
    ranked = sorted(completed, key=lambda r: (to_minimize(r.score, direction), r.ordinal))
    n_below = max(1, math.ceil(gamma * n))
    below = ranked[:n_below]
    above = ranked[n_below:]
    threshold = float(below[-1].score)
    return (
        [dict(r.point) for r in below],
        [dict(r.point) for r in above],
        threshold,
    )


def parzen_fit(
    points: Sequence[ParamPoint], space: SearchSpace, config: TpeConfig
) -> ParzenEstimator:
    """Fit one kernel per observation on every dimension of ``space``.

    Numeric dimensions get Gaussian kernels centered on the observed values
    with bandwidth max(nearest-neighbor spacing, bandwidth_floor * range) and
    a uniform component of weight 1/(n+1); the kernels share the remaining
    mass equally.  Categorical dimensions get add-one-smoothed counts.
    """
    if not points:
        raise ValueError("cannot fit a density to zero points")
    for point in points:
        space.require_point(point)
    n = len(points)
    dims: dict[str, Union[NumericDensity, CategoricalDensity]] = {}
    for name, dist in space.items():
        values = [point[name] for point in points]
        if isinstance(dist, Categorical):
            counts = {choice: 0 for choice in dist.choices}
            for value in values:
                counts[value] += 1
            k = len(dist.choices)
            weights = tuple((counts[c] + 1) / (n + k) for c in dist.choices)
            dims[name] = CategoricalDensity(choices=dist.choices, weights=weights)
        else:
            low, high = float(dist.low), float(dist.high)
            xs = np.sort(np.asarray(values, dtype=float))
            if n == 1:
                spacing = np.zeros(1)
            else:
                gaps = np.diff(xs)
                left = np.concatenate(([np.inf], gaps))
                right = np.concatenate((gaps, [np.inf]))
                spacing = np.minimum(left, right)
            floor = config.bandwidth_floor * (high - low)
            bandwidths = np.maximum(np.maximum(spacing, floor), 1e-12)
            dims[name] = NumericDensity(
                low=low,
                high=high,
                integer=isinstance(dist, IntegerUniform),
                centers=tuple(float(x) for x in xs),
                bandwidths=tuple(float(b) for b in bandwidths),
                prior_weight=1.0 / (n + 1),
            )
    return ParzenEstimator(space=space, dims=dims)


def parzen_pdf(estimator: ParzenEstimator, point: ParamPoint) -> float:
    """Evaluate the product density at a point inside the estimator's space."""
    estimator.space.require_point(point)
    density = 1.0
    for name in estimator.space.names:
        density *= estimator.dims[name].pdf(point[name])
    return density


def parzen_sample(estimator: ParzenEstimator, rng: np.random.Generator) -> ParamPoint:
    """Draw one point from the mixture, clipping numeric draws to their bounds."""
    return {name: estimator.dims[name].sample(rng) for name in estimator.space.names}


def ei_ratio_score(good_density: float, bad_density: float, gamma: float) -> float:
    """Expected-improvement surrogate 1 / (gamma + (bad/good) * (1 - gamma)).

    Strictly increasing in good/bad for fixed gamma, so ranking candidates by
    this score and by the raw density ratio select the same argmax.
    """
    if good_density <= 0.0 or bad_density <= 0.0:
        raise ValueError("densities must be strictly positive")
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    return 1.0 / (gamma + (bad_density / good_density) * (1.0 - gamma))


@dataclass(frozen=True)
class TpeDecision:
    """Audit record for one post-warmup suggestion: the candidate pool and the pick."""

    history_length: int
    candidates: tuple[ParamPoint, ...]
    chosen: int


def tpe_suggest(
    space: SearchSpace,
    history: History,
    config: TpeConfig,
    direction: str,
    rng: np.random.Generator,
    decisions: Optional[list[TpeDecision]] = None,
) -> ParamPoint:
    """Suggest the next point: random during warmup, then the best-EI candidate.

    Past warmup the history is split, densities are fitted to each side,
    ``n_candidates`` draws are taken from the good density, and the draw with
    the highest EI ratio wins (ties to the earliest draw).
    """
    check_direction(direction)
    completed = history.completed()
    if len(completed) < config.n_startup:
        return random_suggest(space, rng)
    below, above, _ = tpe_split(history, config.gamma, direction)
    if not above:
        # Degenerate split (gamma close to 1 on a tiny history): no bad side to contrast.
        return random_suggest(space, rng)
    good = parzen_fit(below, space, config)
    bad = parzen_fit(above, space, config)
    candidates = [parzen_sample(good, rng) for _ in range(config.n_candidates)]
    best_index = 0
    best_score = -math.inf
    for i, candidate in enumerate(candidates):
        score = ei_ratio_score(
            parzen_pdf(good, candidate), parzen_pdf(bad, candidate), config.gamma
        )
        if score > best_score:
            best_index = i
            best_score = score
    if decisions is not None:
        decisions.append(
            TpeDecision(
                history_length=len(completed),
                candidates=tuple(dict(c) for c in candidates),
                chosen=best_index,
            )
        )
    return candidates[best_index]


class TpeSampler(Sampler):
    """Stateful wrapper that also keeps an audit log of its suggestions."""

    kind = "tpe"

    def __init__(self, config: TpeConfig | None = None) -> None:
        self.config = config or TpeConfig()
        self.decisions: list[TpeDecision] = []

    def suggest(
        self,
        space: SearchSpace,
        history: History,
        direction: str,
        rng: np.random.Generator,
    ) -> Optional[ParamPoint]:
        return tpe_suggest(space, history, self.config, direction, rng, decisions=self.decisions)
