"""Closed-form benchmark landscapes used as desk-scale study objectives."""

from __future__ import annotations

import math
from typing import Mapping, Sequence, Union

PointLike = Union[Mapping[str, float], Sequence[float]]

SYNTHETIC_NAMES = ("sphere", "branin", "rastrigin")


def _values(point: PointLike) -> list[float]:
    if isinstance(point, Mapping):
        return [float(v) for v in point.values()]
    return [float(v) for v in point]


def sphere(values: Sequence[float]) -> float:
    """Sum of squares; global minimum 0 at the origin."""
    return float(sum(v * v for v in values))


def rastrigin(values: Sequence[float]) -> float:
    """10*d + sum(v^2 - 10*cos(2*pi*v)); highly multimodal, minimum 0 at the origin."""
    return float(
        10.0 * len(values) + sum(v * v - 10.0 * math.cos(2.0 * math.pi * v) for v in values)
    )


def branin(values: Sequence[float]) -> float:
    """Two-dimensional branin function; global minimum ~0.397887 at three points."""
    if len(values) != 2:
        raise ValueError(f"branin is two-dimensional, got {len(values)} values")
    x1, x2 = values
    a = 1.0
    b = 5.1 / (4.0 * math.pi**2)
    c = 5.0 / math.pi
    r = 6.0
    s = 10.0
    t = 1.0 / (8.0 * math.pi)
    return float(a * (x2 - b * x1 * x1 + c * x1 - r) ** 2 + s * (1.0 - t) * math.cos(x1) + s)


def synthetic_objective(name: str, point: PointLike) -> float:
    """Evaluate a named benchmark at a parameter point (mapping or sequence)."""
    values = _values(point)
    if not values:
        raise ValueError("point must have at least one dimension")
    if name == "sphere":
        return sphere(values)
    if name == "rastrigin":
        return rastrigin(values)
    if name == "branin":
        return branin(values)
    raise ValueError(
        f"unknown objective {name!r}; valid names: {', '.join(SYNTHETIC_NAMES)}"
    )
