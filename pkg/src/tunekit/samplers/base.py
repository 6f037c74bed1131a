"""Uniform ask-style contract shared by all suggestion strategies."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import ClassVar, Optional

import numpy as np

from ..space import ParamPoint, SearchSpace
from .history import History


class Sampler(ABC):
    """A strategy that proposes the next point to evaluate.

    ``suggest`` must be deterministic given (space, history, configuration,
    generator state); returning None signals that the strategy has exhausted
    its finite enumeration.
    """

    kind: ClassVar[str] = "abstract"

    @abstractmethod
    def suggest(
        self,
        space: SearchSpace,
        history: History,
        direction: str,
        rng: np.random.Generator,
    ) -> Optional[ParamPoint]:
        raise NotImplementedError
