"""Random search: every parameter drawn independently from its distribution."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..space import ParamPoint, SearchSpace, sample_param
from .base import Sampler
from .history import History


def random_suggest(space: SearchSpace, rng: np.random.Generator) -> ParamPoint:
    """Draw one point by sampling each dimension independently, in space order."""
    return {name: sample_param(dist, rng) for name, dist in space.items()}


class RandomSampler(Sampler):
    kind = "random"

    def suggest(
        self,
        space: SearchSpace,
        history: History,
        direction: str,
        rng: np.random.Generator,
    ) -> Optional[ParamPoint]:
        return random_suggest(space, rng)
