"""Genetic search over hyperparameter points.

Each chromosome is a full parameter assignment.  Generations evolve by
tournament selection, uniform crossover, per-gene mutation, and elitism;
the fittest individuals survive unchanged, so the per-generation best never
degrades.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..space import ParamPoint, SearchSpace, sample_param
from .base import Sampler
from .history import History, check_direction, to_minimize
from .random_search import random_suggest

Chromosome = ParamPoint
Population = list[Chromosome]


@dataclass(frozen=True)
class GaConfig:
    pop_size: int = 20
    tournament_k: int = 3
    p_crossover: float = 0.9
    p_mutation: float = 0.1
    elitism_count: int = 1
    generations: int = 50

    def __post_init__(self) -> None:
        if self.pop_size < 2:
            raise ValueError(f"pop_size must be >= 2, got {self.pop_size}")
        if not 1 <= self.tournament_k <= self.pop_size:
            raise ValueError(
                f"tournament_k must lie in [1, pop_size], got {self.tournament_k}"
            )
        if not 0.0 <= self.p_crossover <= 1.0:
            raise ValueError(f"p_crossover must lie in [0, 1], got {self.p_crossover}")
        if not 0.0 <= self.p_mutation <= 1.0:
            raise ValueError(f"p_mutation must lie in [0, 1], got {self.p_mutation}")
        if not 0 <= self.elitism_count < self.pop_size:
            raise ValueError(
                f"elitism_count must lie in [0, pop_size), got {self.elitism_count}"
            )
        if self.generations < 1:
            raise ValueError(f"generations must be >= 1, got {self.generations}")


def ga_init(space: SearchSpace, config: GaConfig, rng: np.random.Generator) -> Population:
    """Create the initial population: pop_size independent random points."""
    return [random_suggest(space, rng) for _ in range(config.pop_size)]


def ga_select(
    pop: Population,
    fitnesses: Sequence[float],
    k: int,
    direction: str,
    rng: np.random.Generator,
) -> Chromosome:
    """Tournament selection: draw k members with replacement, return the fittest.

    Ties resolve to the lowest population index.
    """
    check_direction(direction)
    if len(pop) != len(fitnesses):
        raise ValueError(
            f"population and fitnesses must align, got {len(pop)} vs {len(fitnesses)}"
        )
    if k < 1:
        raise ValueError(f"tournament size must be >= 1, got {k}")
    drawn = rng.integers(0, len(pop), size=k)
    best = min(drawn, key=lambda i: (to_minimize(fitnesses[i], direction), i))
    return dict(pop[int(best)])


def ga_crossover(a: Chromosome, b: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Uniform crossover: each gene copied from either parent with probability 1/2."""
    if set(a) != set(b):
        raise ValueError("parents come from different spaces")
    return {name: (a[name] if rng.random() < 0.5 else b[name]) for name in a}


def ga_mutate(
    c: Chromosome, space: SearchSpace, p_mutation: float, rng: np.random.Generator
) -> Chromosome:
    """Resample each gene from its distribution independently with probability p_mutation."""
    mutated: Chromosome = {}
    for name, dist in space.items():
        if rng.random() < p_mutation:
            mutated[name] = sample_param(dist, rng)
        else:
            mutated[name] = c[name]
    return mutated


def ga_step(
    pop: Population,
    fitnesses: Sequence[float],
    space: SearchSpace,
    config: GaConfig,
    direction: str,
    rng: np.random.Generator,
) -> Population:
    """Build the next generation: elites survive unchanged, children fill the rest."""
    check_direction(direction)
    if len(pop) != len(fitnesses):
        raise ValueError(
            f"population and fitnesses must align, got {len(pop)} vs {len(fitnesses)}"
        )
    canonical = [to_minimize(f, direction) for f in fitnesses]
    order = sorted(range(len(pop)), key=lambda i: (canonical[i], i))
    next_pop: Population = [dict(pop[i]) for i in order[: config.elitism_count]]
    while len(next_pop) < config.pop_size:
        first = ga_select(pop, fitnesses, config.tournament_k, direction, rng)
        second = ga_select(pop, fitnesses, config.tournament_k, direction, rng)
        if rng.random() < config.p_crossover:
            child = ga_crossover(first, second, rng)
        else:
            child = dict(first)
        next_pop.append(ga_mutate(child, space, config.p_mutation, rng))
    return next_pop


class GaSampler(Sampler):
    """Generation-at-a-time adapter onto the ask/tell loop.

    Trials [g * pop_size, (g + 1) * pop_size) hold generation g.  A new
    generation is built at each boundary from the previous generation's
    recorded scores; failed trials substitute the worst score seen so far.
    Generations are cached, so a sampler instance serves one study run.
    """

    kind = "genetic"

    def __init__(self, config: GaConfig | None = None) -> None:
        self.config = config or GaConfig()
        self._generations: dict[int, Population] = {}

    def _fitnesses(
        self, history: History, start: int, stop: int, direction: str
    ) -> list[float]:
        scores = [r.score for r in history.records[start:stop]]
        finite = [r.score for r in history.completed()]
        if finite:
            worst = max(finite) if direction == "minimize" else min(finite)
        else:
            worst = math.inf if direction == "minimize" else -math.inf
        return [s if s is not None else worst for s in scores]

    def suggest(
        self,
        space: SearchSpace,
        history: History,
        direction: str,
        rng: np.random.Generator,
    ) -> Optional[ParamPoint]:
        pop_size = self.config.pop_size
        generation, member = divmod(len(history), pop_size)
        if generation not in self._generations:
            if generation == 0:
                self._generations[0] = ga_init(space, self.config, rng)
            else:
                previous = self._generations.get(generation - 1)
                if previous is None:
                    raise RuntimeError(
                        "genetic sampler state is missing an earlier generation; "
                        "it cannot resume a study it did not run"
                    )
                fitnesses = self._fitnesses(
                    history, (generation - 1) * pop_size, generation * pop_size, direction
                )
                self._generations[generation] = ga_step(
                    previous, fitnesses, space, self.config, direction, rng
                )
        return dict(self._generations[generation][member])
