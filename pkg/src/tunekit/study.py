"""The ask/tell optimization loop: budgets, seeding, best tracking, persistence.

A study owns one seeded random stream, forked per trial by ordinal so that
concurrent objective evaluation cannot reorder randomness.  Traces are
line-delimited JSON: a header line with the space and configuration, then one
record per trial.  Trial wall times are measured in memory but persisted as 0
so that traces are byte-reproducible from (seed, space, sampler, objective).
"""

from __future__ import annotations

import io
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np

from .samplers import (
    History,
    Sampler,
    SamplerSpec,
    TrialRecord,
    build_sampler,
    check_direction,
    to_minimize,
)
from .space import ParamPoint, SearchSpace, space_from_dict, space_to_dict

TRACE_FORMAT = "tunekit-trace"
TRACE_VERSION = 1

Objective = Callable[[ParamPoint], float]


class StudyError(Exception):
    """Base class for study-loop failures."""


class BudgetExhaustedError(StudyError):
    """ask() was called after the trial budget was spent."""


class SamplerExhaustedError(StudyError):
    """The sampler enumerated its whole finite domain."""


class TraceFormatError(ValueError):
    """A persisted trace line could not be parsed; the message names the line."""

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line


@dataclass(frozen=True)
class StudyConfig:
    direction: str
    budget: int
    seed: int
    sampler: SamplerSpec

    def __post_init__(self) -> None:
        check_direction(self.direction)
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class StudyResult:
    best: Optional[TrialRecord]
    history: History
    wall_ms: tuple[float, ...]
    sampler_kind: str


class Study:
    """Seeded optimization state: a space, a sampler, and the growing history."""

    def __init__(self, space: SearchSpace, config: StudyConfig) -> None:
        self._space = space
        self._config = config
        self._history = History()
        self._best: Optional[TrialRecord] = None
        self._sampler: Sampler = build_sampler(config.sampler)

    @property
    def space(self) -> SearchSpace:
        return self._space

    @property
    def config(self) -> StudyConfig:
        return self._config

    @property
    def history(self) -> History:
        return self._history

    @property
    def best(self) -> Optional[TrialRecord]:
        return self._best

    @property
    def sampler(self) -> Sampler:
        return self._sampler

    def _trial_rng(self, ordinal: int) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self._config.seed, spawn_key=(ordinal,))
        return np.random.default_rng(seq)

    def ask(self) -> ParamPoint:
        """Delegate to the sampler with the current history and the trial's rng fork."""
        ordinal = len(self._history)
        if ordinal >= self._config.budget:
            raise BudgetExhaustedError(
                f"budget of {self._config.budget} trials is exhausted"
            )
        point = self._sampler.suggest(
            self._space, self._history, self._config.direction, self._trial_rng(ordinal)
        )
        if point is None:
            raise SamplerExhaustedError(
                f"sampler {self._sampler.kind!r} has enumerated its whole domain"
            )
        return point

    def tell(self, point: ParamPoint, score: float) -> TrialRecord:
        """Record a completed trial and update the running best (ties keep the earlier)."""
        score = float(score)
        if not math.isfinite(score):
            raise ValueError(f"score must be finite, got {score!r}")
        self._space.require_point(point)
        record = self._history.append(point, score)
        if self._best is None or to_minimize(score, self._config.direction) < to_minimize(
            self._best.score, self._config.direction
        ):
            self._best = record
        return record

    def tell_failure(self, point: ParamPoint) -> TrialRecord:
        """Record a failed trial; it stays in the trace but never becomes best."""
        self._space.require_point(point)
        return self._history.append(point, None)

    def run(self, objective: Objective) -> StudyResult:
        """Drive ask/tell for the full budget (or until the sampler exhausts)."""
        wall_ms: list[float] = []
        while len(self._history) < self._config.budget:
            try:
                point = self.ask()
            except SamplerExhaustedError:
                break
            started = time.perf_counter()
            try:
                score = float(objective(point))
            except Exception:
                score = math.nan
            wall_ms.append((time.perf_counter() - started) * 1000.0)
            if math.isfinite(score):
                self.tell(point, score)
            else:
                self.tell_failure(point)
        return StudyResult(
            best=self._best,
            history=self._history,
            wall_ms=tuple(wall_ms),
            sampler_kind=self._config.sampler.kind,
        )


def run_study(objective: Objective, space: SearchSpace, config: StudyConfig) -> StudyResult:
    """Create a study and run it to completion under its budget."""
    return Study(space, config).run(objective)


Sink = Union[str, Path, io.TextIOBase]


def _header_dict(study: Study) -> dict:
    return {
        "format": TRACE_FORMAT,
        "version": TRACE_VERSION,
        "direction": study.config.direction,
        "budget": study.config.budget,
        "seed": study.config.seed,
        "sampler": {"kind": study.config.sampler.kind, "options": study.config.sampler.options},
        "space": space_to_dict(study.space),
    }


def save_study(study: Study, sink: Sink) -> None:
    """Write the study as line-delimited JSON: one header line, one line per trial."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as handle:
            _write_trace(study, handle)
    else:
        _write_trace(study, sink)


def _write_trace(study: Study, handle) -> None:
    handle.write(json.dumps(_header_dict(study)) + "\n")
    for record in study.history:
        line = {
            "ordinal": record.ordinal,
            "params": record.point,
            "score": record.score,
            "wall_ms": 0,
        }
        handle.write(json.dumps(line) + "\n")


def load_study(source: Sink) -> Study:
    """Rebuild a study from a trace; the running best is recomputed from the records."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            return _read_trace(handle)
    return _read_trace(source)


def _read_trace(handle) -> Study:
    first = handle.readline()
    if not first.strip():
        raise TraceFormatError(1, "missing header line")
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(1, f"invalid header: {exc.msg}") from exc
    try:
        if header.get("format") != TRACE_FORMAT:
            raise TraceFormatError(1, f"not a {TRACE_FORMAT} document")
        config = StudyConfig(
            direction=header["direction"],
            budget=int(header["budget"]),
            seed=int(header["seed"]),
            sampler=SamplerSpec(
                kind=header["sampler"]["kind"], options=header["sampler"]["options"]
            ),
        )
        space = space_from_dict(header["space"])
    except TraceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceFormatError(1, f"invalid header: {exc}") from exc
    study = Study(space, config)
    for lineno, raw in enumerate(handle, start=2):
        if not raw.strip():
            raise TraceFormatError(lineno, "blank line inside trace")
        try:
            entry = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(lineno, f"invalid record: {exc.msg}") from exc
        try:
            ordinal = entry["ordinal"]
            params = entry["params"]
            score = entry["score"]
        except (KeyError, TypeError) as exc:
            raise TraceFormatError(lineno, f"record is missing field {exc}") from exc
        if ordinal != len(study.history):
            raise TraceFormatError(
                lineno, f"ordinal {ordinal} out of order (expected {len(study.history)})"
            )
        if len(study.history) >= config.budget:
            raise TraceFormatError(lineno, "more records than the configured budget")
        try:
            if score is None:
                study.tell_failure(params)
            else:
                study.tell(params, float(score))
        except (TypeError, ValueError) as exc:
            raise TraceFormatError(lineno, str(exc)) from exc
    return study
