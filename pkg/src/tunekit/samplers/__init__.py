"""Suggestion strategies behind one ask-style contract: random, grid, genetic, TPE."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .base import Sampler
from .genetic import (
    Chromosome,
    GaConfig,
    GaSampler,
    Population,
    ga_crossover,
    ga_init,
    ga_mutate,
    ga_select,
    ga_step,
)
from .grid import GridCursor, GridSampler, grid_cursor, grid_next
from .history import DIRECTIONS, History, TrialRecord, check_direction, to_minimize
from .random_search import RandomSampler, random_suggest
from .tpe import (
    CategoricalDensity,
    NumericDensity,
    ParzenEstimator,
    TpeConfig,
    TpeDecision,
    TpeSampler,
    ei_ratio_score,
    parzen_fit,
    parzen_pdf,
    parzen_sample,
    tpe_split,
    tpe_suggest,
)

SAMPLER_KINDS = ("random", "grid", "tpe", "genetic")


@dataclass(frozen=True)
class SamplerSpec:
    """Serializable sampler identity: a kind tag plus its option mapping."""

    kind: str
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in SAMPLER_KINDS:
            raise ValueError(
                f"unknown sampler kind {self.kind!r}; valid kinds: {', '.join(SAMPLER_KINDS)}"
            )
        object.__setattr__(self, "options", dict(self.options))


def build_sampler(spec: SamplerSpec) -> Sampler:
    """Instantiate the sampler named by ``spec``, validating its options."""
    options: Mapping[str, Any] = spec.options
    try:
        if spec.kind == "random":
            if options:
                raise TypeError(f"random sampler takes no options, got {sorted(options)}")
            return RandomSampler()
        if spec.kind == "grid":
            return GridSampler(**options)
        if spec.kind == "tpe":
            return TpeSampler(TpeConfig(**options))
        if spec.kind == "genetic":
            return GaSampler(GaConfig(**options))
    except TypeError as exc:
        raise ValueError(f"bad options for sampler {spec.kind!r}: {exc}") from exc
    raise ValueError(f"unknown sampler kind {spec.kind!r}")


__all__ = [
    "DIRECTIONS",
    "CategoricalDensity",
    "Chromosome",
    "GaConfig",
    "GaSampler",
    "GridCursor",
    "GridSampler",
    "History",
    "NumericDensity",
    "ParzenEstimator",
    "Population",
    "RandomSampler",
    "SAMPLER_KINDS",
    "Sampler",
    "SamplerSpec",
    "TpeConfig",
    "TpeDecision",
    "TpeSampler",
    "TrialRecord",
    "build_sampler",
    "check_direction",
    "ei_ratio_score",
    "ga_crossover",
    "ga_init",
    "ga_mutate",
    "ga_select",
    "ga_step",
    "grid_cursor",
    "grid_next",
    "parzen_fit",
    "parzen_pdf",
    "parzen_sample",
    "random_suggest",
    "to_minimize",
    "tpe_split",
    "tpe_suggest",
]
