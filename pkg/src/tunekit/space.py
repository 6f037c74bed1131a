"""Typed hyperparameter search spaces: domains, sampling, grids, and presets."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence, Union

import numpy as np

ParamValue = Union[float, int, str]
ParamPoint = dict[str, ParamValue]


@dataclass(frozen=True)
class ContinuousUniform:
    """Uniform distribution over the closed real interval [low, high]."""

    low: float
    high: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "high", float(self.high))
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValueError("bounds must be finite")
        if not self.low < self.high:
            raise ValueError(f"low must be strictly below high, got [{self.low}, {self.high}]")


@dataclass(frozen=True)
class IntegerUniform:
    """Uniform distribution over the integers {low, ..., high}, both ends inclusive."""

    low: int
    high: int

    def __post_init__(self) -> None:
        for bound in (self.low, self.high):
            if isinstance(bound, bool) or not isinstance(bound, int):
                raise ValueError(f"integer bounds must be ints, got {bound!r}")
        if self.low > self.high:
            raise ValueError(f"low must be <= high, got [{self.low}, {self.high}]")


@dataclass(frozen=True)
class Categorical:
    """Uniform choice over an ordered set of distinct labels."""

    choices: tuple[str, ...]

    def __init__(self, choices: Sequence[str]) -> None:
        object.__setattr__(self, "choices", tuple(choices))
        if not self.choices:
            raise ValueError("at least one choice is required")
        if any(not isinstance(c, str) for c in self.choices):
            raise ValueError("choices must be strings")
        if len(set(self.choices)) != len(self.choices):
            raise ValueError("choices must be distinct")


Distribution = Union[ContinuousUniform, IntegerUniform, Categorical]


def sample_param(dist: Distribution, rng: np.random.Generator) -> ParamValue:
    """Draw one value from a distribution using the caller's generator.

    Continuous draws map a unit uniform u in [0, 1) onto low + u * (high - low);
    integer and categorical draws are uniform over their finite supports.
    """
    if isinstance(dist, ContinuousUniform):
        return float(dist.low + rng.random() * (dist.high - dist.low))
    if isinstance(dist, IntegerUniform):
        return int(rng.integers(dist.low, dist.high + 1))
    if isinstance(dist, Categorical):
        return dist.choices[int(rng.integers(len(dist.choices)))]
    raise TypeError(f"unknown distribution type: {type(dist).__name__}")


def contains(dist: Distribution, value: object) -> bool:
    """Return True iff ``value`` lies in the distribution's support (bounds inclusive)."""
    if isinstance(dist, ContinuousUniform):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return False
        return math.isfinite(float(value)) and dist.low <= float(value) <= dist.high
    if isinstance(dist, IntegerUniform):
        if isinstance(value, bool) or not isinstance(value, int):
            return False
        return dist.low <= value <= dist.high
    if isinstance(dist, Categorical):
        return isinstance(value, str) and value in dist.choices
    raise TypeError(f"unknown distribution type: {type(dist).__name__}")


def grid_points(dist: Distribution, resolution: int) -> list[ParamValue]:
    """Enumerate grid values for one dimension.

    Continuous dimensions yield ``resolution`` equally spaced points including
    both endpoints (the midpoint alone when resolution is 1).  Integer
    dimensions yield min(resolution, support size) distinct equally spaced
    integers including the endpoints.  Categorical dimensions yield every
    choice regardless of resolution.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    if isinstance(dist, ContinuousUniform):
        if resolution == 1:
            return [0.5 * (dist.low + dist.high)]
        return [float(v) for v in np.linspace(dist.low, dist.high, resolution)]
    if isinstance(dist, IntegerUniform):
        support = dist.high - dist.low + 1
        m = min(resolution, support)
        if m == 1:
            return [dist.low]
        step = (dist.high - dist.low) / (m - 1)
        # floor(x + 0.5) keeps consecutive points distinct whenever step >= 1
        return [int(math.floor(dist.low + i * step + 0.5)) for i in range(m)]
    if isinstance(dist, Categorical):
        return list(dist.choices)
    raise TypeError(f"unknown distribution type: {type(dist).__name__}")


class SearchSpace:
    """Ordered mapping of parameter names to distributions.

    Iteration order is the declaration order, which fixes grid enumeration
    and point serialization.  Instances are immutable once built.
    """

    def __init__(self, params: Mapping[str, Distribution]) -> None:
        if not params:
            raise ValueError("a search space needs at least one parameter")
        for name in params:
            if not isinstance(name, str) or not name:
                raise ValueError(f"parameter names must be non-empty strings, got {name!r}")
        self._params: dict[str, Distribution] = dict(params)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._params)

    def items(self) -> Iterator[tuple[str, Distribution]]:
        return iter(self._params.items())

    def __iter__(self) -> Iterator[str]:
        return iter(self._params)

    def __len__(self) -> int:
        return len(self._params)

    def __getitem__(self, name: str) -> Distribution:
        return self._params[name]

    def __contains__(self, name: object) -> bool:
        return name in self._params

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SearchSpace):
            return NotImplemented
        return list(self._params.items()) == list(other._params.items())

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v!r}" for k, v in self._params.items())
        return f"SearchSpace({inner})"

    def contains_point(self, point: Mapping[str, object]) -> bool:
        """True iff the point names exactly this space and every value is in support."""
        if set(point) != set(self._params):
            return False
        return all(contains(dist, point[name]) for name, dist in self._params.items())

    def require_point(self, point: Mapping[str, object]) -> None:
        """Raise ValueError describing the first way ``point`` fails to fit this space."""
        missing = set(self._params) - set(point)
        extra = set(point) - set(self._params)
        if missing or extra:
            raise ValueError(
                f"point keys do not match space (missing={sorted(missing)}, extra={sorted(extra)})"
            )
        for name, dist in self._params.items():
            if not contains(dist, point[name]):
                raise ValueError(f"value {point[name]!r} is outside the support of {name!r}")


def _boosting_triple() -> dict[str, Distribution]:
    return {
        "learning_rate": ContinuousUniform(0.00001, 1.0),
        "max_depth": IntegerUniform(1, 7),
        "n_estimators": IntegerUniform(1, 1000),
    }


_PRESETS: dict[str, Callable[[], dict[str, Distribution]]] = {
    "ridge": lambda: {"alpha": ContinuousUniform(0.1, 1000.0)},
    "logistic": lambda: {"C": ContinuousUniform(0.00001, 1.0)},
    "adaboost": _boosting_triple,
    "random_forest": lambda: {
        "max_features": ContinuousUniform(0.0, 1.0),
        "n_estimators": IntegerUniform(1, 1000),
    },
    "gbm": _boosting_triple,
    "xgboost": _boosting_triple,
    "lightgbm": _boosting_triple,
}


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESETS))


def preset_space(name: str) -> SearchSpace:
    """Return one of the documented model search spaces by preset name."""
    try:
        builder = _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; valid presets: {', '.join(preset_names())}"
        ) from None
    return SearchSpace(builder())


def space_to_dict(space: SearchSpace) -> dict[str, dict]:
    """Serialize a space to the {name: {kind, low, high | choices}} document form."""
    doc: dict[str, dict] = {}
    for name, dist in space.items():
        if isinstance(dist, ContinuousUniform):
            doc[name] = {"kind": "continuous", "low": dist.low, "high": dist.high}
        elif isinstance(dist, IntegerUniform):
            doc[name] = {"kind": "integer", "low": dist.low, "high": dist.high}
        else:
            doc[name] = {"kind": "categorical", "choices": list(dist.choices)}
    return doc


def space_from_dict(doc: Mapping[str, Mapping]) -> SearchSpace:
    """Inverse of :func:`space_to_dict`; preserves the document's declaration order."""
    params: dict[str, Distribution] = {}
    for name, entry in doc.items():
        kind = entry.get("kind")
        if kind == "continuous":
            params[name] = ContinuousUniform(entry["low"], entry["high"])
        elif kind == "integer":
            params[name] = IntegerUniform(entry["low"], entry["high"])
        elif kind == "categorical":
            params[name] = Categorical(entry["choices"])
        else:
            raise ValueError(f"unknown distribution kind {kind!r} for parameter {name!r}")
    return SearchSpace(params)


def space_to_json(space: SearchSpace) -> str:
    return json.dumps(space_to_dict(space))


def space_from_json(text: str) -> SearchSpace:
    return space_from_dict(json.loads(text))
