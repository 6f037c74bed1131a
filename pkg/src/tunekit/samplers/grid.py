"""Grid search: row-major enumeration of the per-dimension grid product."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..space import ParamPoint, ParamValue, SearchSpace, grid_points
from .base import Sampler
from .history import History


def _dimension_grids(space: SearchSpace, resolution: int) -> tuple[tuple[ParamValue, ...], ...]:
    return tuple(tuple(grid_points(dist, resolution)) for _, dist in space.items())


def _decode(
    names: tuple[str, ...],
    grids: tuple[tuple[ParamValue, ...], ...],
    index: int,
) -> ParamPoint:
    # Row-major in declaration order: the first dimension varies slowest.
    point: ParamPoint = {}
    remainder = index
    for name, values in zip(reversed(names), reversed(grids)):
        remainder, offset = divmod(remainder, len(values))
        point[name] = values[offset]
    return {name: point[name] for name in names}


@dataclass
class GridCursor:
    """Enumeration state over one space/resolution pair."""

    names: tuple[str, ...]
    grids: tuple[tuple[ParamValue, ...], ...]
    resolution: int
    index: int = 0

    @property
    def total(self) -> int:
        return math.prod(len(g) for g in self.grids)


def grid_cursor(space: SearchSpace, resolution: int) -> GridCursor:
    return GridCursor(names=space.names, grids=_dimension_grids(space, resolution), resolution=resolution)


def grid_next(space: SearchSpace, resolution: int, cursor: GridCursor) -> Optional[ParamPoint]:
    """Advance the cursor and return the next grid point, or None once exhausted."""
    if cursor.names != space.names or cursor.resolution != resolution:
        raise ValueError("cursor was produced for a different space or resolution")
    if cursor.index >= cursor.total:
        return None
    point = _decode(cursor.names, cursor.grids, cursor.index)
    cursor.index += 1
    return point


class GridSampler(Sampler):
    """Stateless grid enumeration: the next index is the current history length."""

    kind = "grid"

    def __init__(self, resolution: int = 10) -> None:
        if resolution < 1:
            raise ValueError(f"resolution must be >= 1, got {resolution}")
        self.resolution = resolution

    def suggest(
        self,
        space: SearchSpace,
        history: History,
        direction: str,
        rng: np.random.Generator,
    ) -> Optional[ParamPoint]:
        grids = _dimension_grids(space, self.resolution)
        total = math.prod(len(g) for g in grids)
        index = len(history)
        if index >= total:
            return None
        return _decode(space.names, grids, index)
