"""Trial records and the ordered history that suggestion strategies consume."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from ..space import ParamPoint

DIRECTIONS = ("minimize", "maximize")


def check_direction(direction: str) -> str:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    return direction


def to_minimize(score: float, direction: str) -> float:
    """Map a score onto the internal minimization scale (maximization negates)."""
    check_direction(direction)
    return score if direction == "minimize" else -score


@dataclass(frozen=True)
class TrialRecord:
    """One evaluated (or failed) trial: a parameter point and its score.

    ``score`` is None when the objective evaluation failed; such records stay
    in the trace but are invisible to score-driven samplers.
    """

    ordinal: int
    point: ParamPoint
    score: Optional[float]

    def __post_init__(self) -> None:
        if self.ordinal < 0:
            raise ValueError("ordinal must be >= 0")
        if self.score is not None and not math.isfinite(self.score):
            raise ValueError(f"score must be finite or None, got {self.score!r}")

    @property
    def failed(self) -> bool:
        return self.score is None


class History:
    """Ordered list of trial records with dense ordinals starting at 0."""

    __slots__ = ("_records",)

    def __init__(self, records: Iterable[TrialRecord] = ()) -> None:
        self._records: list[TrialRecord] = []
        for record in records:
            if record.ordinal != len(self._records):
                raise ValueError(
                    f"ordinals must be dense from 0, got {record.ordinal} at position {len(self._records)}"
                )
            self._records.append(record)

    def append(self, point: ParamPoint, score: Optional[float]) -> TrialRecord:
        record = TrialRecord(ordinal=len(self._records), point=dict(point), score=score)
        self._records.append(record)
        return record

    def completed(self) -> list[TrialRecord]:
        """The successfully scored records, in ordinal order."""
        return [r for r in self._records if not r.failed]

    @property
    def records(self) -> tuple[TrialRecord, ...]:
        return tuple(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[TrialRecord]:
        return iter(self._records)

    def __getitem__(self, index: int) -> TrialRecord:
        return self._records[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, History):
            return NotImplemented
        return self._records == other._records

    def __repr__(self) -> str:
        return f"History(n={len(self._records)})"
