"""Column-typed tabular datasets and CSV ingestion."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MissingValues, ParseError, UnknownTarget
from .rules import TaskKind


@dataclass(frozen=True)
class Dataset:
    """Feature columns plus a designated target.

    Continuous columns are float arrays; categorical columns are arrays of
    strings.  Missing values are rejected at load time.
    """

    name: str
    feature_names: tuple[str, ...]
    kinds: tuple[str, ...]  # "continuous" | "categorical" per feature
    columns: tuple[np.ndarray, ...]
    target_name: str
    y: np.ndarray
    task: TaskKind

    @property
    def n(self) -> int:
        return len(self.y)

    @property
    def d(self) -> int:
        return len(self.columns)

    def categories(self, f: int) -> tuple[str, ...]:
        return tuple(sorted(set(self.columns[f].tolist())))

    def category_universe(self) -> dict[int, tuple[str, ...]]:
        return {
            f: self.categories(f)
            for f in range(self.d)
            if self.kinds[f] == "categorical"
        }

    def row(self, i: int) -> list:
        return [self.columns[f][i] for f in range(self.d)]

    def subset(self, rows: Sequence[int], name: str | None = None) -> "Dataset":
        idx = np.asarray(rows)
        return Dataset(
            name=name or self.name,
            feature_names=self.feature_names,
            kinds=self.kinds,
            columns=tuple(col[idx] for col in self.columns),
            target_name=self.target_name,
            y=self.y[idx],
            task=self.task,
        )


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def load_csv(
    path,
    target: str,
    categorical: Sequence[str] = (),
    name: str | None = None,
) -> Dataset:
    """Load an RFC-4180 CSV with a header row.

    Numeric columns become continuous unless named in `categorical`.
    A categorical target yields a classification dataset, otherwise
    regression.  Any empty cell raises MissingValues with its location.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: file is empty") from None
        rows = list(reader)

    if target not in header:
        raise UnknownTarget(f"{path}: no column named {target!r}")
    if not rows:
        raise ParseError(f"{path}: no data rows")

    width = len(header)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"{path}: row {i + 2} has {len(row)} cells, expected {width}")
        for j, cell in enumerate(row):
            if cell == "":
                raise MissingValues(f"{path}: empty cell at row {i + 2}, column {header[j]!r}")

    categorical = set(categorical)
    unknown = categorical - set(header)
    if unknown:
        raise ParseError(f"{path}: declared categorical columns not present: {sorted(unknown)}")

    cols_raw = {h: [row[j] for row in rows] for j, h in enumerate(header)}
    feature_names = tuple(h for h in header if h != target)

    kinds = []
    columns = []
    for h in feature_names:
        vals = cols_raw[h]
        if h not in categorical and all(_is_number(v) for v in vals):
            kinds.append("continuous")
            columns.append(np.array([float(v) for v in vals]))
        else:
            kinds.append("categorical")
            columns.append(np.array(vals, dtype=object))

    y_raw = cols_raw[target]
    if target in categorical or not all(_is_number(v) for v in y_raw):
        task = TaskKind.CLASSIFICATION
        y = np.array(y_raw, dtype=object)
    else:
        task = TaskKind.REGRESSION
        y = np.array([float(v) for v in y_raw])

    return Dataset(
        name=name or os.path.splitext(os.path.basename(str(path)))[0],
        feature_names=feature_names,
        kinds=tuple(kinds),
        columns=tuple(columns),
        target_name=target,
        y=y,
        task=task,
    )
