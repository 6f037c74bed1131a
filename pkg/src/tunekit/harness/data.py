"""CSV ingestion: one-hot encoding, train/test splitting, hard missing-value errors."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

Source = Union[str, Path, io.TextIOBase]


@dataclass(frozen=True)
class Dataset:
    """A loaded table: numeric feature matrix, target vector, and the encoding map.

    ``target`` is a float array for regression targets and a tuple of string
    labels for categorical targets.  ``encoding`` maps each original
    categorical column to the indicator columns it produced.
    """

    features: np.ndarray
    target: Union[np.ndarray, tuple[str, ...]]
    feature_names: tuple[str, ...]
    encoding: dict[str, tuple[str, ...]]

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]


def _read_rows(source: Source) -> tuple[list[str], list[list[str]]]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))
    else:
        rows = list(csv.reader(source))
    if not rows:
        raise ValueError("empty input: a header row is required")
    header = rows[0]
    data = rows[1:]
    width = len(header)
    for i, row in enumerate(data, start=2):
        if len(row) != width:
            raise ValueError(f"row {i} has {len(row)} cells, expected {width}")
    return header, data


def _parse_number(cell: str, row: int, column: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ValueError(
            f"cannot parse {cell!r} as a number at row {row}, column {column!r}; "
            "declare the column categorical if it holds labels"
        ) from None


def load_csv_dataset(
    source: Source,
    target_column: str,
    categorical_columns: Sequence[str] = (),
    split_ratio: float = 0.7,
    shuffle: bool = False,
    seed: int = 0,
) -> tuple[Dataset, Dataset]:
    """Load a headered CSV and split it into (train, test) datasets.

    Categorical feature columns expand to one indicator column per level;
    levels are collected from the whole file so both splits share the same
    encoding.  The train split takes the first floor(ratio * n) rows in file
    order, or in seeded-permutation order when ``shuffle`` is on.  Any empty
    cell is a hard error naming its row and column.
    """
    if not 0.0 < split_ratio < 1.0:
        raise ValueError(f"split_ratio must lie in (0, 1), got {split_ratio}")
    header, data = _read_rows(source)
    if target_column not in header:
        raise ValueError(f"unknown target column {target_column!r}")
    categorical = set(categorical_columns)
    unknown = categorical - set(header)
    if unknown:
        raise ValueError(f"unknown categorical columns: {sorted(unknown)}")

    for i, row in enumerate(data, start=2):
        for name, cell in zip(header, row):
            if cell.strip() == "":
                raise ValueError(f"missing value at row {i}, column {name!r}")
    if not data:
        raise ValueError("no data rows to load")

    feature_columns = [name for name in header if name != target_column]
    levels: dict[str, list[str]] = {}
    for name in feature_columns:
        if name in categorical:
            column = [row[header.index(name)] for row in data]
            levels[name] = sorted(set(column))

    feature_names: list[str] = []
    encoding: dict[str, tuple[str, ...]] = {}
    for name in feature_columns:
        if name in categorical:
            emitted = tuple(f"{name}={level}" for level in levels[name])
            encoding[name] = emitted
            feature_names.extend(emitted)
        else:
            feature_names.append(name)

    n = len(data)
    features = np.zeros((n, len(feature_names)), dtype=float)
    target_index = header.index(target_column)
    target_is_labels = target_column in categorical
    target_values: list = []
    for r, row in enumerate(data):
        offset = 0
        for name in feature_columns:
            cell = row[header.index(name)]
            if name in categorical:
                hot = levels[name].index(cell)
                features[r, offset + hot] = 1.0
                offset += len(levels[name])
            else:
                features[r, offset] = _parse_number(cell, r + 2, name)
                offset += 1
        cell = row[target_index]
        if target_is_labels:
            target_values.append(cell)
        else:
            target_values.append(_parse_number(cell, r + 2, target_column))

    order = np.arange(n)
    if shuffle:
        order = np.random.default_rng(seed).permutation(n)
    n_train = int(np.floor(split_ratio * n))
    train_rows = order[:n_train]
    test_rows = order[n_train:]

    def _subset(rows: np.ndarray) -> Dataset:
        if target_is_labels:
            target = tuple(target_values[i] for i in rows)
        else:
            target = np.asarray([target_values[i] for i in rows], dtype=float)
        return Dataset(
            features=features[rows],
            target=target,
            feature_names=tuple(feature_names),
            encoding=dict(encoding),
        )

    return _subset(train_rows), _subset(test_rows)
